import io

import pytest

from level2net.fixtures import cherry_2c_trinets
from level2net.restriction import binets_and_trinets
from level2net.trinet_file import TrinetFileError, format_trinets, read_trinets, write_trinets


def test_round_trip_keeps_multiplicities(networks):
    for net in networks[:20]:
        coll = binets_and_trinets(net)
        for t, _ in list(coll)[:3]:
            coll.add(t, 2)
        buf = io.StringIO()
        write_trinets(coll, buf, header="generated")
        assert read_trinets(buf.getvalue().splitlines()) == coll


def test_comments_and_blank_lines():
    coll = read_trinets(["# header", "", "((a,b),c);", "  ((a,b),c);", "(a,c);"])
    assert coll.total() == 3 and len(coll) == 2


def test_bad_line_reports_line_number():
    with pytest.raises(TrinetFileError, match="line 2"):
        read_trinets(["((a,b),c);", "((a,b),c"])


def test_output_is_stable():
    assert format_trinets(cherry_2c_trinets()) == format_trinets(cherry_2c_trinets())
