"""Restriction of a network to a leaf subset, and trinet/binet collections."""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

from .network import Network, NetworkError


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def simplify(arcs: Iterable[tuple], labels: dict, root) -> Network:
    """Merge parallel arcs and suppress indegree-1 outdegree-1 vertices until
    neither applies; a root left with one child is contracted away."""
    children: dict = {root: []}
    parents: dict = {root: []}
    for u, v in arcs:
        children.setdefault(u, []).append(v)
        children.setdefault(v, [])
        parents.setdefault(v, []).append(u)
        parents.setdefault(u, [])
    for v in labels:
        children.setdefault(v, [])
        parents.setdefault(v, [])

    changed = True
    while changed:
        changed = False
        for u in list(children):
            kids = children[u]
            if len(kids) == 2 and kids[0] == kids[1]:
                v = kids[0]
                kids.pop()
                parents[v].remove(u)
                changed = True
        for v in list(children):
            if v not in children:
                continue
            if len(parents[v]) == 1 and len(children[v]) == 1:
                p, c = parents[v][0], children[v][0]
                children[p][children[p].index(v)] = c
                parents[c][parents[c].index(v)] = p
                del children[v], parents[v]
                changed = True
        while len(children[root]) == 1 and root not in labels:
            c = children[root][0]
            del children[root], parents[root]
            parents[c].remove(root)
            root = c
            changed = True

    out = [(u, v) for u, kids in children.items() for v in kids]
    return Network(out, labels, vertices=children)


def restrict(net: Network, taxa: Iterable[str]) -> Network:
    """The restriction of ``net`` to ``taxa``.

    Keeps the vertices lying on some path from the lowest stable ancestor
    of ``taxa`` to one of them, then simplifies.
    """
    taxa = set(taxa)
    if len(taxa) < 2:
        raise NetworkError("restriction needs at least two taxa")
    leaves = [net.leaf(t) for t in sorted(taxa)]
    top = net.lsa_vertex(leaves)
    anc, desc = net._masks()
    order = net.topological_order()
    mask = 0
    for leaf in leaves:
        mask |= anc[leaf]
    mask &= desc[top]
    keep = {order[i] for i in _bits(mask)}
    arcs = [(u, c) for u in keep for c in net.children(u) if c in keep]
    labels = {v: net.labels[v] for v in leaves}
    return simplify(arcs, labels, top)


class TrinetCollection:
    """Multiset of binets and trinets keyed by labelled canonical form."""

    def __init__(self, networks: Iterable[Network] = ()):
        self._entries: dict[tuple, list] = {}
        for net in networks:
            self.add(net)

    def add(self, net: Network, multiplicity: int = 1) -> tuple:
        if multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        key = net.canonical_form()
        entry = self._entries.get(key)
        if entry is None:
            self._entries[key] = [net, multiplicity]
        else:
            entry[1] += multiplicity
        return key

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[tuple[Network, int]]:
        for key in sorted(self._entries):
            net, mult = self._entries[key]
            yield net, mult

    def __contains__(self, net: Network) -> bool:
        return net.canonical_form() in self._entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrinetCollection):
            return NotImplemented
        return self.counts() == other.counts()

    def __repr__(self) -> str:
        return f"TrinetCollection({len(self)} distinct, {self.total()} total)"

    def counts(self) -> dict[tuple, int]:
        return {k: e[1] for k, e in self._entries.items()}

    def keys(self) -> frozenset:
        """The underlying set, as canonical keys."""
        return frozenset(self._entries)

    def multiplicity(self, net: Network) -> int:
        entry = self._entries.get(net.canonical_form())
        return entry[1] if entry else 0

    def total(self) -> int:
        return sum(e[1] for e in self._entries.values())

    @property
    def taxa(self) -> frozenset[str]:
        out: set[str] = set()
        for net, _ in self._entries.values():
            out |= net.taxa
        return frozenset(out)

    def trinets(self) -> Iterator[tuple[Network, int]]:
        return ((n, m) for n, m in self if len(n.taxa) == 3)

    def binets(self) -> Iterator[tuple[Network, int]]:
        return ((n, m) for n, m in self if len(n.taxa) == 2)


def trinets(net: Network) -> TrinetCollection:
    """All restrictions of ``net`` to 3-subsets of its taxa."""
    taxa = sorted(net.taxa)
    if len(taxa) < 3:
        raise NetworkError("trinets need a network with at least three taxa")
    return TrinetCollection(restrict(net, s) for s in itertools.combinations(taxa, 3))


def binets_and_trinets(net: Network) -> TrinetCollection:
    taxa = sorted(net.taxa)
    if len(taxa) < 2:
        raise NetworkError("binets need a network with at least two taxa")
    subsets = itertools.chain(itertools.combinations(taxa, 2),
                              itertools.combinations(taxa, 3))
    return TrinetCollection(restrict(net, s) for s in subsets)
