import pytest

from level2net.network import isomorphic
from level2net.newick import NewickError, parse_enewick, read_enewick, write_enewick
from level2net.random_nets import random_level2_network


def test_tree():
    net = parse_enewick("((a,b),c);")
    assert net.taxa == {"a", "b", "c"} and net.is_tree() and len(net.arcs) == 4


def test_one_reticulation():
    net = parse_enewick("((a,(b)#H1),(#H1,c));")
    (h,) = net.reticulations
    assert net.children(h) == (net.leaf("b"),)


def test_round_trip_corpus():
    for seed in range(1000):
        net = random_level2_network(3 + seed % 10, seed)
        text = write_enewick(net)
        back = parse_enewick(text)
        assert isomorphic(back, net)
        assert write_enewick(back) == text


def test_writer_ignores_vertex_ids_and_child_order():
    a = parse_enewick("((a,(b)#H1),(#H1,c));")
    b = parse_enewick("((c,#H7),((b)#H7,a));")
    assert write_enewick(a) == write_enewick(b)


def test_branch_lengths_and_comments():
    net = read_enewick("# a comment\n((a:1.5,b:2):0.1,c);\n")
    assert isomorphic(net, parse_enewick("((a,b),c);"))


@pytest.mark.parametrize("text", ["((a,b),c)", "((a,b),a);", "((a,(b)#H1),c);", "((a,b),,c);",
                                  "((a,b)c);x"])
def test_malformed_input_raises(text):
    with pytest.raises(NewickError):
        parse_enewick(text)


def test_error_has_position():
    with pytest.raises(NewickError) as info:
        parse_enewick("((a,b),c")
    assert info.value.line == 1 and info.value.column >= 1
