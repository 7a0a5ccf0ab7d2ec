"""Locating a minimal cut-arc set from trinets via sink sets of taxon digraphs."""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property

from .network import Network, NetworkError
from .restriction import TrinetCollection


class InsufficientTrinetsError(NetworkError):
    pass


@dataclass(frozen=True)
class Digraph:
    vertices: tuple[str, ...]
    arcs: frozenset[tuple[str, str]]

    @cached_property
    def successors(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in sorted(self.arcs):
            out[u].append(v)
        return out

    def is_sink_set(self, subset) -> bool:
        subset = set(subset)
        return all(v in subset for u in subset for v in self.successors[u])


@dataclass(frozen=True)
class Condensation:
    components: tuple[frozenset[str], ...]
    component_arcs: frozenset[tuple[int, int]]

    def children(self, i: int) -> list[int]:
        return sorted(j for k, j in self.component_arcs if k == i)


def deficient_pairs(trinet: Network) -> tuple[tuple[str, str], ...]:
    """Ordered pairs ``(x, y)`` of the trinet's taxa such that some minimal
    cut-arc set of the trinet misses ``y``."""
    cache = trinet._cache
    if "deficient" not in cache:
        minimal = trinet.cut_arc_sets().minimal_sets
        taxa = sorted(trinet.taxa)
        cache["deficient"] = tuple(
            (x, y) for x, y in itertools.permutations(taxa, 2)
            if any(y not in m for m in minimal))
    return cache["deficient"]


def pair_deficiency(collection: TrinetCollection) -> Counter:
    """phi(x, y): trinets (with multiplicity) on x and y having a minimal
    cut-arc set without y. Binets never contribute."""
    phi: Counter = Counter()
    for net, mult in collection.trinets():
        for pair in deficient_pairs(net):
            phi[pair] += mult
    return phi


def omega(collection: TrinetCollection, i: int, phi: Counter | None = None) -> Digraph:
    if phi is None:
        phi = pair_deficiency(collection)
    taxa = tuple(sorted(collection.taxa))
    arcs = frozenset((x, y) for x, y in itertools.permutations(taxa, 2) if phi[(x, y)] <= i)
    return Digraph(taxa, arcs)


def closure_digraph(collection: TrinetCollection) -> Digraph:
    """Arc (x, y) iff for every other taxon z some trinet on {x, y, z} has y
    below the lowest stable ancestor of x and z. A missing trinet on a
    3-subset blocks the arc."""
    by_taxa = defaultdict(list)
    for net, _ in collection.trinets():
        by_taxa[net.taxa].append(net)
    taxa = tuple(sorted(collection.taxa))
    arcs = set()
    for x, y in itertools.permutations(taxa, 2):
        ok = True
        for z in taxa:
            if z in (x, y):
                continue
            nets = by_taxa.get(frozenset((x, y, z)), [])
            if not any(net.is_ancestor(net.lsa((x, z)), net.leaf(y)) for net in nets):
                ok = False
                break
        if ok:
            arcs.add((x, y))
    return Digraph(taxa, frozenset(arcs))


def strongly_connected_components(d: Digraph) -> list[frozenset[str]]:
    """Tarjan's algorithm, iterative."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comps = []
    counter = 0
    succ = d.successors
    for start in d.vertices:
        if start in index:
            continue
        work = [(start, iter(succ[start]))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            v, it = work[-1]
            pushed = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    pushed = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if pushed:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
    return comps


def _order(s) -> tuple:
    return (len(s), sorted(s))


def condense(d: Digraph) -> Condensation:
    comps = sorted(strongly_connected_components(d), key=_order)
    where = {v: i for i, c in enumerate(comps) for v in c}
    arcs = frozenset((where[u], where[v]) for u, v in d.arcs if where[u] != where[v])
    return Condensation(tuple(comps), arcs)


def minimal_sink_sets(d: Digraph) -> list[frozenset[str]]:
    """Strongly connected components with no outgoing arcs and at least two
    vertices, smallest first."""
    cond = condense(d)
    sources = {i for i, _ in cond.component_arcs}
    return [c for i, c in enumerate(cond.components) if len(c) > 1 and i not in sources]


def find_cut_arc_set(collection: TrinetCollection, phi: Counter | None = None) -> frozenset[str]:
    """Cut-arc set choice from the sparsest nonempty omega digraph."""
    taxa = sorted(collection.taxa)
    if len(taxa) < 2:
        raise InsufficientTrinetsError("need at least two taxa to find a cut-arc set")
    if phi is None:
        phi = pair_deficiency(collection)
    # omega_i gains its first arc exactly at the smallest pair deficiency
    i = min(phi[p] for p in itertools.permutations(taxa, 2))
    d = omega(collection, i, phi)
    if not d.arcs:
        raise InsufficientTrinetsError("no omega digraph has an arc")
    sinks = minimal_sink_sets(d)
    if sinks:
        return min(sinks, key=_order)
    cond = condense(d)
    candidates = [i for i in range(len(cond.components)) if cond.children(i)]
    p = min(candidates, key=lambda i: (len(cond.children(i)), sorted(cond.components[i])))
    out = set(cond.components[p])
    for j in cond.children(p):
        out |= cond.components[j]
    return frozenset(out)
