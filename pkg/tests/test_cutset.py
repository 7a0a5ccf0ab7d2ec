import itertools

import pytest
from hypothesis import given, settings, strategies as st

from level2net.cutset import (Digraph, InsufficientTrinetsError, closure_digraph, condense,
                              deficient_pairs, find_cut_arc_set, minimal_sink_sets, omega,
                              pair_deficiency, strongly_connected_components)
from level2net.fixtures import cherry_2c, cherry_2c_trinets
from level2net.newick import parse_enewick
from level2net.restriction import TrinetCollection

import oracles


def collection(*texts):
    return TrinetCollection(parse_enewick(t) for t in texts)


def deficiency_by_definition(coll):
    """phi straight from the definition, via the oracle's cut-arc sets."""
    phi = {}
    for net, mult in coll.trinets():
        minimal = oracles.minimal_cut_arc_sets(net)
        for x, y in itertools.permutations(sorted(net.taxa), 2):
            if any(y not in m for m in minimal):
                phi[(x, y)] = phi.get((x, y), 0) + mult
    return phi


def test_no_trinets_no_deficiency():
    assert not pair_deficiency(collection("(a,b);", "((a,(c)#H1),#H1);"))


def test_single_tree_trinet():
    coll = collection("((x,y),z);")
    assert set(deficient_pairs(parse_enewick("((x,y),z);"))) == {("x", "z"), ("y", "z")}
    phi = pair_deficiency(coll)
    assert phi[("x", "z")] == phi[("y", "z")] == 1
    assert phi[("x", "y")] == phi[("z", "x")] == 0
    assert find_cut_arc_set(coll) == {"x", "y"}


def test_fixture_deficiency_matches_definition():
    coll = cherry_2c_trinets()
    phi = pair_deficiency(coll)
    expected = deficiency_by_definition(coll)
    for pair in itertools.permutations(sorted(coll.taxa), 2):
        assert phi[pair] == expected.get(pair, 0)


def test_fixture_omega_has_cd_as_only_minimal_sink_set():
    coll = cherry_2c_trinets()
    d = omega(coll, 0)
    assert d == closure_digraph(coll)
    assert minimal_sink_sets(d) == [frozenset("cd")]
    assert oracles.minimal_sink_sets(d.vertices, d.arcs) == {frozenset("cd")}
    assert find_cut_arc_set(coll) == {"c", "d"}


def test_large_i_gives_complete_digraph():
    coll = cherry_2c_trinets()
    top = max(pair_deficiency(coll).values())
    d = omega(coll, top)
    assert len(d.arcs) == 5 * 4


def test_two_taxa_closure_is_complete():
    d = closure_digraph(collection("(a,b);"))
    assert d.arcs == {("a", "b"), ("b", "a")}


def test_complete_and_acyclic_digraphs():
    vs = ("a", "b", "c")
    full = Digraph(vs, frozenset(itertools.permutations(vs, 2)))
    assert minimal_sink_sets(full) == [frozenset(vs)]
    chain = Digraph(vs, frozenset({("a", "b"), ("b", "c")}))
    assert minimal_sink_sets(chain) == []


def test_omega_is_closure_on_corpus(corpus_trinets):
    for coll in corpus_trinets:
        assert omega(coll, 0) == closure_digraph(coll)


def test_sink_sets_match_cut_arc_sets_on_corpus(networks, corpus_trinets):
    for net, coll in zip(networks, corpus_trinets):
        d = closure_digraph(coll)
        got = set(minimal_sink_sets(d))
        assert got == set(net.cut_arc_sets().minimal_sets)
        if len(coll.taxa) <= 10:
            assert got == oracles.minimal_sink_sets(d.vertices, d.arcs)


def test_found_set_is_a_minimal_cut_arc_set(networks, corpus_trinets):
    for net, coll in zip(networks, corpus_trinets):
        assert find_cut_arc_set(coll) in net.cut_arc_sets().minimal_sets


digraphs = st.integers(2, 7).flatmap(lambda n: st.sets(
    st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda a: a[0] != a[1]),
    max_size=n * (n - 1)).map(lambda arcs: Digraph(
        tuple(str(i) for i in range(n)), frozenset((str(u), str(v)) for u, v in arcs))))


@settings(max_examples=150, deadline=None)
@given(d=digraphs)
def test_scc_matches_mutual_reachability(d):
    assert set(strongly_connected_components(d)) == \
        oracles.mutual_reachability_classes(d.vertices, d.arcs)


@settings(max_examples=150, deadline=None)
@given(d=digraphs)
def test_sink_components_are_sink_sets(d):
    brute = oracles.minimal_sink_sets(d.vertices, d.arcs)
    for s in minimal_sink_sets(d):
        assert d.is_sink_set(s)
        # a sink component is a minimal sink set unless it holds a
        # smaller sink set made of several singleton sinks
        assert s in brute or any(t < s for t in brute)
    cond = condense(d)
    assert sorted(map(sorted, cond.components)) == sorted(map(sorted, strongly_connected_components(d)))


def test_empty_collection_is_insufficient():
    with pytest.raises(InsufficientTrinetsError):
        find_cut_arc_set(TrinetCollection())
