"""Generators of simple level-1 and level-2 networks.

A generator is the multigraph left after deleting the leaves of a simple
network and suppressing indegree-1 outdegree-1 vertices. Its arcs and its
indegree-2 outdegree-0 vertices are the *sides* on which leaves sit.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .network import Network, NetworkError


class GeneratorError(NetworkError):
    pass


@dataclass(frozen=True)
class Generator:
    """A generator with named sides.

    ``arc_sides`` maps side name to ``(tail, head)``; reticulation sides are
    named after their vertex.
    """

    name: str
    vertices: tuple[str, ...]
    arc_sides: Mapping[str, tuple[str, str]]
    root: str = "r"

    @cached_property
    def reticulation_sides(self) -> tuple[str, ...]:
        outdeg = Counter(u for u, _ in self.arc_sides.values())
        return tuple(v for v in self.vertices if v != self.root and outdeg[v] == 0)

    @property
    def sides(self) -> tuple[str, ...]:
        return tuple(self.arc_sides) + self.reticulation_sides

    @property
    def level(self) -> int:
        indeg = Counter(v for _, v in self.arc_sides.values())
        return sum(1 for c in indeg.values() if c == 2)

    @cached_property
    def parallel_pairs(self) -> tuple[tuple[str, str], ...]:
        groups = defaultdict(list)
        for s, arc in self.arc_sides.items():
            groups[arc].append(s)
        return tuple(tuple(g) for g in groups.values() if len(g) == 2)

    @cached_property
    def automorphisms(self) -> tuple[dict[str, str], ...]:
        """Every automorphism, as a permutation of side names."""
        return tuple(_side_automorphisms(self, self))

    @cached_property
    def reticulation_classes(self) -> tuple[tuple[str, ...], ...]:
        return _orbits(self.reticulation_sides, self.automorphisms)

    @cached_property
    def arc_classes(self) -> tuple[tuple[str, ...], ...]:
        fixing = [f for f in self.automorphisms
                  if all(f[r] == r for r in self.reticulation_sides)]
        return _orbits(tuple(self.arc_sides), fixing)

    def side_class(self, side: str) -> tuple[str, ...]:
        for c in self.reticulation_classes + self.arc_classes:
            if side in c:
                return c
        raise KeyError(side)

    def __repr__(self) -> str:
        return f"Generator({self.name})"


def _orbits(items, perms) -> tuple[tuple[str, ...], ...]:
    seen: set = set()
    out = []
    for s in items:
        if s in seen:
            continue
        orbit = sorted({f[s] for f in perms} | {s}, key=items.index)
        seen.update(orbit)
        out.append(tuple(orbit))
    return tuple(out)


def _side_automorphisms(src: Generator, dst: Generator):
    """Yield side bijections ``src -> dst`` induced by multigraph isomorphisms,
    identity-like maps first."""
    if len(src.vertices) != len(dst.vertices) or len(src.arc_sides) != len(dst.arc_sides):
        return
    dst_by_arc = defaultdict(list)
    for s, arc in dst.arc_sides.items():
        dst_by_arc[arc].append(s)
    src_by_arc = defaultdict(list)
    for s, arc in src.arc_sides.items():
        src_by_arc[arc].append(s)
    for perm in itertools.permutations(dst.vertices):
        f = dict(zip(src.vertices, perm))
        if f[src.root] != dst.root:
            continue
        image = Counter((f[u], f[v]) for u, v in src.arc_sides.values())
        if image != Counter(dst.arc_sides.values()):
            continue
        groups = list(src_by_arc.items())
        choices = [itertools.permutations(dst_by_arc[(f[u], f[v])]) for (u, v), _ in groups]
        for combo in itertools.product(*choices):
            side_map = {}
            for (_, names), targets in zip(groups, combo):
                side_map.update(zip(names, targets))
            for r in src.reticulation_sides:
                side_map[r] = f[r]
            yield side_map


def _gen(name, arcs):
    vertices = []
    for u, v in arcs.values():
        for x in (u, v):
            if x not in vertices:
                vertices.append(x)
    return Generator(name, tuple(vertices), dict(arcs))


CATALOG: dict[str, Generator] = {
    "G1": _gen("G1", {"L": ("r", "H"), "R": ("r", "H")}),
    "G2a": _gen("G2a", {"A": ("r", "v"), "B": ("r", "h"), "C": ("v", "h"),
                        "D": ("v", "H"), "E": ("h", "H")}),
    "G2b": _gen("G2b", {"A": ("r", "v1"), "B": ("r", "H1"), "C": ("v1", "v2"),
                        "D": ("v1", "H2"), "E": ("v2", "H1"), "F": ("v2", "H2")}),
    "G2c": _gen("G2c", {"L1": ("r", "v1"), "R1": ("r", "v2"),
                        "L2": ("v1", "H1"), "R2": ("v2", "H1"),
                        "L3": ("v1", "H2"), "R3": ("v2", "H2")}),
    "G2d": _gen("G2d", {"A": ("r", "v"), "B": ("r", "H"), "L": ("v", "h"),
                        "R": ("v", "h"), "C": ("h", "H")}),
}


@dataclass(frozen=True)
class SideAssignment:
    """Leaves per side; arc-side tuples run from tail to head."""

    sides: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    @property
    def leaf_to_side(self) -> dict[str, str]:
        return {x: s for s, xs in self.sides.items() for x in xs}

    def leaves_on(self, side: str) -> tuple[str, ...]:
        return self.sides.get(side, ())

    def permuted(self, side_map: Mapping[str, str]) -> "SideAssignment":
        return SideAssignment({side_map[s]: xs for s, xs in self.sides.items()})

    def key(self, g: Generator) -> tuple:
        return tuple(self.sides.get(s, ()) for s in g.sides)


@dataclass(frozen=True)
class _RawGenerator:
    vertices: tuple
    root: object
    arcs: tuple  # (tail, head, leaves along the arc)
    reticulation_leaf: dict


def _raw_generator(net: Network) -> _RawGenerator:
    leafless_out = {v: sum(1 for c in net.children(v) if not net.is_leaf(c))
                    for v in net.vertices if not net.is_leaf(v)}
    is_chain = {v: len(net.parents(v)) == 1 and leafless_out[v] == 1 for v in leafless_out}
    branch = [v for v in net.topological_order() if v in leafless_out and not is_chain[v]]
    arcs = []
    for u in branch:
        for c in net.children(u):
            if net.is_leaf(c):
                continue
            leaves = []
            while is_chain[c]:
                nxt = None
                for k in net.children(c):
                    if net.is_leaf(k):
                        leaves.append(net.labels[k])
                    else:
                        nxt = k
                c = nxt
            arcs.append((u, c, tuple(leaves)))
    ret_leaf = {}
    for v in branch:
        if leafless_out[v] == 0:
            if len(net.parents(v)) != 2:
                raise GeneratorError(f"sink {v!r} of the generator is not a reticulation")
            ret_leaf[v] = net.labels[net.children(v)[0]]
    return _RawGenerator(tuple(branch), net.root, tuple(arcs), ret_leaf)


def underlying_generator(net: Network) -> tuple[Generator, SideAssignment]:
    """Catalog generator of a simple level-1/2 network and its leaf placement.

    Among the equivalent placements (generator automorphisms) the one with
    the smallest side-by-side leaf listing is returned.
    """
    if net.is_tree():
        raise GeneratorError("a tree has no underlying generator")
    if not net.is_simple():
        raise GeneratorError("network is not simple")
    raw = _raw_generator(net)
    names = {v: f"x{i}" for i, v in enumerate(raw.vertices)}
    names[raw.root] = "r"
    shape = Generator("?", tuple(names[v] for v in raw.vertices),
                      {f"s{i}": (names[u], names[v]) for i, (u, v, _) in enumerate(raw.arcs)})
    gen, _ = identify_generator(shape)
    leaves_on = {f"s{i}": xs for i, (_, _, xs) in enumerate(raw.arcs)}
    for v, x in raw.reticulation_leaf.items():
        leaves_on[names[v]] = (x,)
    best = None
    for side_map in _side_automorphisms(shape, gen):
        sa = SideAssignment({side_map[s]: xs for s, xs in leaves_on.items() if xs})
        if best is None or sa.key(gen) < best.key(gen):
            best = sa
    return gen, best


def identify_generator(g: Generator) -> tuple[Generator, dict[str, str]]:
    """Match ``g`` against the catalog; returns the catalog generator and the
    lexicographically smallest side correspondence."""
    for gen in CATALOG.values():
        maps = list(_side_automorphisms(g, gen))
        if maps:
            best = min(maps, key=lambda m: tuple(sorted(m.items())))
            return gen, best
    raise GeneratorError(f"no catalog generator matches {g!r} (level above 2?)")


def attach(g: Generator, assignment: SideAssignment) -> Network:
    """Build the simple network with ``assignment``'s leaves on ``g``'s sides."""
    arcs = []
    labels = {}
    for r in g.reticulation_sides:
        xs = assignment.leaves_on(r)
        if len(xs) != 1:
            raise GeneratorError(f"reticulation side {r} needs exactly one leaf, got {xs}")
        labels[("leaf", xs[0])] = xs[0]
        arcs.append((r, ("leaf", xs[0])))
    for s, (u, v) in g.arc_sides.items():
        prev = u
        for i, x in enumerate(assignment.leaves_on(s)):
            p = (s, i)
            arcs.append((prev, p))
            arcs.append((p, ("leaf", x)))
            labels[("leaf", x)] = x
            prev = p
        arcs.append((prev, v))
    unknown = set(assignment.sides) - set(g.sides)
    if unknown:
        raise GeneratorError(f"unknown sides {sorted(unknown)} for {g.name}")
    return Network(arcs, labels, vertices=g.vertices)


def is_crucial(trinet: Network, network: Network) -> bool:
    """Whether ``trinet`` holds every reticulation-side leaf of the simple
    ``network`` and a leaf from at least one side of each parallel pair."""
    gen, assignment = underlying_generator(network)
    taxa = trinet.taxa
    if not taxa <= network.taxa:
        raise GeneratorError("trinet taxa are not taxa of the network")
    for r in gen.reticulation_sides:
        if not set(assignment.leaves_on(r)) <= taxa:
            return False
    for pair in gen.parallel_pairs:
        if not any(set(assignment.leaves_on(s)) & taxa for s in pair):
            return False
    return True
