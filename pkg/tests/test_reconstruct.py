import pytest

from level2net.cutset import InsufficientTrinetsError
from level2net.fixtures import cherry_2c, cherry_2c_trinets
from level2net.network import Network, isomorphic
from level2net.newick import parse_enewick
from level2net.reconstruct import (ReconstructionError, ReconstructionReport, collapse_collection,
                                   graft, reconstruct, restrict_collection)
from level2net.restriction import TrinetCollection, binets_and_trinets, restrict, trinets


def collection(*texts):
    return TrinetCollection(parse_enewick(t) for t in texts)


def test_collapse_copies_disjoint_entries():
    coll = collection("((a,b),e);")
    out = collapse_collection(coll, frozenset("cd"), "<collapse:0>")
    assert out == coll


def test_collapse_fixture_trinet_to_binet():
    t = restrict(cherry_2c(), {"a", "c", "d"})
    out = collapse_collection(TrinetCollection([t]), frozenset("cd"), "*")
    (binet, mult), = list(out)
    assert mult == 1 and binet.taxa == {"a", "*"}
    assert isomorphic(binet, restrict(cherry_2c(), {"a", "c"}).relabeled({"c": "*"}))


def test_collapse_gives_trinets_of_collapsed_network(networks, corpus_trinets):
    checked = 0
    for net, coll in zip(networks[:80], corpus_trinets[:80]):
        cut = min(net.cut_arc_sets().minimal_sets, key=lambda s: (len(s), sorted(s)))
        if len(net.taxa - cut) < 2:
            continue
        head = net.lsa(cut)
        below = net.descendants(head) - {head}
        star = Network([(u, v) for u, v in net.arcs if u not in below and u != head],
                       {**{v: t for v, t in net.labels.items() if v not in below}, head: "*"})
        got = collapse_collection(coll, cut, "*", restrict(net, cut))
        # binets appear only for pairs some trinet reaches through the cut
        assert set(trinets(star).keys()) <= set(got.keys()) <= set(binets_and_trinets(star).keys())
        checked += 1
    assert checked > 20


def test_restrict_collection():
    coll = cherry_2c_trinets()
    assert restrict_collection(coll, coll.taxa) == coll
    cd = restrict_collection(coll, frozenset("cd"))
    assert cd.taxa == {"c", "d"} and all(len(t.taxa) == 2 for t, _ in cd)
    # entries meeting {c, e} in one taxon are left out
    assert restrict_collection(collection("((a,b),c);"), frozenset("cz")).total() == 0


def test_graft_cherries():
    got = graft(parse_enewick("(s,z);"), "s", parse_enewick("(x,y);"))
    assert isomorphic(got, parse_enewick("((x,y),z);"))


def test_single_trinet():
    assert isomorphic(reconstruct(collection("((x,y),z);")), parse_enewick("((x,y),z);"))


def test_fixture_round_trip():
    report = ReconstructionReport()
    got = reconstruct(cherry_2c_trinets(), report)
    assert isomorphic(got, cherry_2c())
    assert report.levels[0].cut_arc_set == ("c", "d")
    assert "depth 0" in report.as_text()


def test_round_trip_with_binets(networks):
    for net in networks[:60]:
        assert isomorphic(reconstruct(binets_and_trinets(net)), net)


def test_round_trip_with_multiplicities(networks):
    for net in networks[:40]:
        coll = TrinetCollection()
        for i, (t, _) in enumerate(trinets(net)):
            coll.add(t, 1 + i % 3)
        assert isomorphic(reconstruct(coll), net)


def test_nonrecoverable_entries_are_dropped():
    coll = collection("((x,y),z);", "(((((x,y),z))#H1,(#H1)#H2),#H2);")
    report = ReconstructionReport()
    got = reconstruct(coll, report)
    assert report.dropped_nonrecoverable == 1
    assert isomorphic(got, parse_enewick("((x,y),z);"))


def test_level_three_input_is_rejected():
    from level2net.fixtures import level3_pair
    with pytest.raises(ReconstructionError):
        reconstruct(TrinetCollection([level3_pair()[0]]))


def test_unrelated_trinets_still_give_a_network():
    got = reconstruct(collection("((a,b),c);", "((d,e),f);"))
    assert got.validate() == [] and got.taxa == set("abcdef") and got.level() <= 2


def test_empty_input_is_insufficient():
    with pytest.raises(InsufficientTrinetsError):
        reconstruct(TrinetCollection())


def test_reconstruction_is_deterministic(corpus_trinets):
    from level2net.newick import write_enewick
    for coll in corpus_trinets[:20]:
        assert write_enewick(reconstruct(coll)) == write_enewick(reconstruct(coll))
