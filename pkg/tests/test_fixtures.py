from level2net.fixtures import cherry_2c, cherry_2c_trinets, generators, level3_pair
from level2net.network import isomorphic
from level2net.restriction import trinets


def test_level3_pair():
    n1, n2 = level3_pair()
    assert n1.level() == n2.level() == 3
    assert not isomorphic(n1, n2)
    assert set(trinets(n1).keys()) == set(trinets(n2).keys())


def test_cherry_fixture():
    assert cherry_2c().cut_arc_sets().minimal_sets == {frozenset("cd")}
    assert len(cherry_2c_trinets()) == 10


def test_catalog():
    assert sorted(generators()) == ["G1", "G2a", "G2b", "G2c", "G2d"]
