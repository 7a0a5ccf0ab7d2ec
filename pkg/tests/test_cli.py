from importlib import resources

import pytest

from level2net.cli import main

DATA = resources.files("level2net").joinpath("data")


def test_gen_extract_build_eq(tmp_path, capsys):
    net, tnt, out = tmp_path / "n.enwk", tmp_path / "t.tnt", tmp_path / "m.enwk"
    assert main(["gen", "--leaves", "8", "--seed", "3", "-o", str(net)]) == 0
    assert main(["extract", str(net), "-o", str(tnt)]) == 0
    assert main(["build", str(tnt), "-o", str(out), "--report"]) == 0
    assert "depth 0" in capsys.readouterr().err
    assert main(["eq", str(net), str(out)]) == 0


def test_extract_with_binets(tmp_path):
    net, tnt = tmp_path / "n.enwk", tmp_path / "t.tnt"
    net.write_text("((a,b),c);\n")
    assert main(["extract", str(net), "--binets", "-o", str(tnt)]) == 0
    assert len(tnt.read_text().splitlines()) == 4


def test_level3_pair_shares_trinets(capsys):
    a, b = str(DATA / "level3_a.enwk"), str(DATA / "level3_b.enwk")
    assert main(["compare-trinets", a, b]) == 0
    assert "equal trinet sets" in capsys.readouterr().out
    assert main(["eq", a, b]) == 1


def test_build_cherry_fixture(tmp_path):
    out = tmp_path / "m.enwk"
    assert main(["build", str(DATA / "cherry_2c.tnt"), "-o", str(out)]) == 0
    assert main(["eq", str(out), str(DATA / "cherry_2c.enwk")]) == 0


def test_build_is_byte_identical(tmp_path):
    one, two = tmp_path / "1.enwk", tmp_path / "2.enwk"
    main(["build", str(DATA / "cherry_2c.tnt"), "-o", str(one)])
    main(["build", str(DATA / "cherry_2c.tnt"), "-o", str(two)])
    assert one.read_bytes() == two.read_bytes()


def test_validate(tmp_path, capsys):
    good, bad = tmp_path / "g.enwk", tmp_path / "b.enwk"
    good.write_text("((a,b),c);")
    bad.write_text("(((((x,y),z))#H1,(#H1)#H2),#H2);")
    assert main(["validate", str(good)]) == 0
    assert main(["validate", str(bad)]) == 1
    assert "not recoverable" in capsys.readouterr().out


def test_parse_error_exits_2(tmp_path, capsys):
    bad = tmp_path / "b.enwk"
    bad.write_text("((a,b),c")
    assert main(["validate", str(bad)]) == 2
    assert "column" in capsys.readouterr().err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["gen"])
    assert info.value.code == 2


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("LEVEL2NET_SEED", "5")
    a, b = tmp_path / "a.enwk", tmp_path / "b.enwk"
    assert main(["gen", "--leaves", "6", "-o", str(a)]) == 0
    assert main(["gen", "--leaves", "6", "--seed", "5", "-o", str(b)]) == 0
    assert a.read_text() == b.read_text()


def test_missing_seed_exits_2(monkeypatch):
    monkeypatch.delenv("LEVEL2NET_SEED", raising=False)
    assert main(["gen", "--leaves", "6"]) == 2
