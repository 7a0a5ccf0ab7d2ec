"""Construction of a simple level-1 or level-2 network from binets and trinets.

Every fraction below except the level fraction is weighted by multiplicity,
and a fraction with an empty denominator is 0. Ties are broken by taxon name, then by the
catalog's side order, so the result is deterministic.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from math import comb

from .generators import (CATALOG, Generator, GeneratorError, SideAssignment, attach,
                         underlying_generator)
from .network import Network, NetworkError
from .restriction import TrinetCollection, restrict

log = logging.getLogger(__name__)


class SimpleBuildError(NetworkError):
    pass


def trinet_sides(net: Network) -> tuple[Generator, SideAssignment] | None:
    """Generator and side placement of a simple non-tree network, else None."""
    cache = net._cache
    if "sides" not in cache:
        result = None
        if not net.is_tree() and net.level() <= 2 and net.is_simple():
            try:
                result = underlying_generator(net)
            except GeneratorError:
                result = None
        cache["sides"] = result
    return cache["sides"]


def _frac(num: float, den: float) -> float:
    return num / den if den else 0.0


@dataclass
class ScoreTables:
    p2: float = 0.0
    p_xc: dict = field(default_factory=dict)
    q: dict = field(default_factory=dict)
    r: dict = field(default_factory=dict)
    u: dict = field(default_factory=dict)
    a: dict = field(default_factory=dict)


@dataclass
class SimpleTrace:
    """What each stage decided, for reports and tests."""

    n: int = 0
    k: int | None = None
    generator: str | None = None
    reticulation_leaves: dict = field(default_factory=dict)
    arc_class_of: dict = field(default_factory=dict)
    partitions: dict = field(default_factory=dict)
    swaps: tuple = ()
    assignment: SideAssignment | None = None
    scores: ScoreTables = field(default_factory=ScoreTables)
    notes: list = field(default_factory=list)


# -- level and generator ----------------------------------------------------

def choose_level(tprime: TrinetCollection, trace: SimpleTrace | None = None):
    """Return the number of reticulations (1 or 2), or, on two taxa, the binet
    of highest multiplicity."""
    taxa = tprime.taxa
    n = len(taxa)
    if not tprime.total():
        raise SimpleBuildError("choose_level: empty collection")
    if n == 2:
        best = None
        for net, mult in tprime.binets():
            if best is None or mult > best[1]:
                best = (net, mult)
        if best is None:
            raise SimpleBuildError("choose_level: two taxa but no binet")
        return best[0]
    # distinct trinets: multiplicities from collapsing would skew the bound,
    # which holds for the underlying set
    total = strict2 = 0
    for net, _ in tprime.trinets():
        total += 1
        if net.level() == 2:
            strict2 += 1
    p2 = _frac(strict2, total)
    k = 1 if p2 < (n - 2) / (2 * comb(n, 3)) else 2
    if trace is not None:
        trace.n, trace.k, trace.scores.p2 = n, k, p2
    return k


def choose_generator(tprime: TrinetCollection, k: int) -> Generator:
    if k == 1:
        return CATALOG["G1"]
    counts: dict[str, int] = defaultdict(int)
    for net, mult in tprime.trinets():
        sides = trinet_sides(net)
        if sides is not None and sides[0].level == k:
            counts[sides[0].name] += mult
    if not counts:
        raise SimpleBuildError(f"choose_generator: no strictly level-{k} simple trinet")
    order = list(CATALOG)
    name = max(counts, key=lambda g: (counts[g], -order.index(g)))
    return CATALOG[name]


def generator_trinets(tprime: TrinetCollection, g: Generator) -> list:
    """``(net, multiplicity, placement)`` for trinets whose generator is ``g``."""
    out = []
    for net, mult in tprime.trinets():
        sides = trinet_sides(net)
        if sides is not None and sides[0] is g:
            out.append((net, mult, sides[1]))
    return out


# -- leaves on reticulation sides -------------------------------------------

def assign_reticulation_leaves(tg: list, g: Generator, candidates,
                               scores: ScoreTables | None = None):
    """Greedily give each reticulation side a leaf; return the side -> leaf
    map and the trinets that can be relabelled to agree with it."""
    total = sum(m for _, m, _ in tg)
    hits: dict = defaultdict(int)
    for _, mult, sa in tg:
        where = sa.leaf_to_side
        for ci, cls in enumerate(g.reticulation_classes):
            for x, s in where.items():
                if s in cls:
                    hits[(x, ci)] += mult
    p = {key: _frac(v, total) for key, v in hits.items()}
    if scores is not None:
        scores.p_xc = {(x, g.reticulation_classes[ci]): v for (x, ci), v in p.items()}

    assigned: dict[str, str] = {}
    free_leaves = sorted(candidates)
    while len(assigned) < len(g.reticulation_sides):
        best = None
        for ci, cls in enumerate(g.reticulation_classes):
            if all(s in assigned for s in cls):
                continue
            for x in free_leaves:
                key = (-p.get((x, ci), 0.0), x, ci)
                if best is None or key < best:
                    best = key
        if best is None:
            raise SimpleBuildError("assign_reticulation_leaves: ran out of leaves")
        _, x, ci = best
        side = next(s for s in g.reticulation_classes[ci] if s not in assigned)
        assigned[side] = x
        free_leaves.remove(x)

    tgr = []
    for net, mult, sa in tg:
        for f in g.automorphisms:
            moved = sa.permuted(f)
            if all(moved.leaves_on(r) == (x,) for r, x in assigned.items()):
                tgr.append((net, mult, moved))
                break
    return assigned, tgr


def assign_arc_classes(tgr: list, g: Generator, leaves, scores=None) -> dict:
    """Map every leaf to the symmetric arc-side class that holds it most often."""
    total = sum(m for _, m, _ in tgr)
    hits: dict = defaultdict(int)
    for _, mult, sa in tgr:
        where = sa.leaf_to_side
        for ci, cls in enumerate(g.arc_classes):
            for x, s in where.items():
                if s in cls:
                    hits[(x, ci)] += mult
    out = {}
    for x in sorted(leaves):
        fr = [_frac(hits[(x, ci)], total) for ci in range(len(g.arc_classes))]
        ci = max(range(len(fr)), key=lambda i: (fr[i], -i))
        if fr[ci] == 0:
            log.info("leaf %s appears in no relabelled trinet; using class %s",
                     x, g.arc_classes[ci])
        out[x] = g.arc_classes[ci]
    return out


# -- pair scores --------------------------------------------------------------

def same_side_fractions(tprime: TrinetCollection) -> dict:
    """q(x, y): share of simple trinets on x and y placing both on one side."""
    num: dict = defaultdict(int)
    den: dict = defaultdict(int)
    for net, mult in tprime.trinets():
        sides = trinet_sides(net)
        if sides is None:
            continue
        where = sides[1].leaf_to_side
        taxa = sorted(net.taxa)
        for i, x in enumerate(taxa):
            for y in taxa[i + 1:]:
                den[(x, y)] += mult
                if where[x] == where[y]:
                    num[(x, y)] += mult
    q = {}
    for (x, y), d in den.items():
        q[(x, y)] = q[(y, x)] = _frac(num[(x, y)], d)
    return q


def q_value(q: dict, x: str, y: str) -> float:
    return 1.0 if x == y else q.get((x, y), 0.0)


def pair_scores(members, q: dict) -> dict:
    members = sorted(members)
    r = {}
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            both = sum(min(q_value(q, x, z), q_value(q, y, z)) for z in members)
            sx = sum(q_value(q, x, z) for z in members)
            sy = sum(q_value(q, y, z) for z in members)
            r[(x, y)] = r[(y, x)] = 3 * both - sx - sy
    return r


def partition_arc_class(cls: tuple, members, q: dict, scores=None) -> dict[str, tuple]:
    """Split the leaves of one symmetric class into at most ``len(cls)`` parts
    by greedy average-score merging, then hand parts to sides in order."""
    members = sorted(members)
    if not members:
        return {}
    r = pair_scores(members, q)
    if scores is not None:
        scores.r.update(r)
    parts = [[x] for x in members]
    total = {}
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            total[(i, j)] = r[(members[i], members[j])]
    alive = list(range(len(parts)))
    while len(alive) > 1:
        best = None
        for ii, i in enumerate(alive):
            for j in alive[ii + 1:]:
                avg = total[(i, j)] / (len(parts[i]) * len(parts[j]))
                key = (-avg, sorted(parts[i]), sorted(parts[j]))
                if best is None or key < best[0]:
                    best = (key, i, j, avg)
        _, i, j, avg = best
        if len(alive) <= len(cls) and avg <= 0:
            break
        parts[i] = sorted(parts[i] + parts[j])
        alive.remove(j)
        for k in alive:
            if k == i:
                continue
            ik, jk = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            total[ik] += total[jk]
    ordered = sorted((tuple(parts[i]) for i in alive), key=lambda p: p[0])
    return {side: part for side, part in zip(cls, ordered)}


def side_alignment_score(groups: dict, q: dict, pairs) -> float:
    score = 0.0
    for s, t in pairs:
        xs, ys = groups.get(s, ()), groups.get(t, ())
        score += sum(q_value(q, x, y) for x in xs for y in ys) - len(xs) * len(ys)
    return score


_ALIGN_PAIRS = (("L1", "L2"), ("L1", "L3"), ("L2", "L3"),
                ("R1", "R2"), ("R1", "R3"), ("R2", "R3"))


def align_sides_2c(groups: dict, q: dict, scores=None) -> tuple[dict, tuple[bool, bool]]:
    """Try swapping L2/R2 and/or L3/R3; keep the best option, no swap on ties."""
    best = None
    for swap2 in (False, True):
        for swap3 in (False, True):
            g = dict(groups)
            if swap2:
                g["L2"], g["R2"] = groups.get("R2", ()), groups.get("L2", ())
            if swap3:
                g["L3"], g["R3"] = groups.get("R3", ()), groups.get("L3", ())
            value = side_alignment_score(g, q, _ALIGN_PAIRS)
            if scores is not None:
                scores.u[(swap2, swap3)] = value
            if best is None or value > best[0]:
                best = (value, g, (swap2, swap3))
    return best[1], best[2]


def ancestor_fractions(tprime: TrinetCollection) -> dict:
    """a(x, y) over simple trinets with x and y on one side: share in which
    the parent of x is an ancestor of y."""
    num: dict = defaultdict(int)
    den: dict = defaultdict(int)
    for net, mult in tprime.trinets():
        sides = trinet_sides(net)
        if sides is None:
            continue
        where = sides[1].leaf_to_side
        taxa = sorted(net.taxa)
        for x in taxa:
            for y in taxa:
                if x == y or where[x] != where[y]:
                    continue
                den[(x, y)] += mult
                px = net.parents(net.leaf(x))[0]
                if net.is_ancestor(px, net.leaf(y)):
                    num[(x, y)] += mult
    return {k: _frac(num[k], d) for k, d in den.items()}


def order_side(members, a: dict) -> tuple[str, ...]:
    rest = sorted(members)
    out = []
    while rest:
        best, x = None, None
        for cand in rest:
            score = sum(a.get((cand, y), 0.0) - a.get((y, cand), 0.0) for y in rest)
            if best is None or score > best:
                best, x = score, cand
        out.append(x)
        rest.remove(x)
    return tuple(out)


# -- orchestration -----------------------------------------------------------

def build_simple(tprime: TrinetCollection, trace: SimpleTrace | None = None) -> Network:
    """Simple network (or two-taxon binet) best supported by ``tprime``."""
    if trace is None:
        trace = SimpleTrace()
    level = choose_level(tprime, trace)
    if isinstance(level, Network):
        trace.n = 2
        trace.notes.append("two taxa: binet of highest multiplicity")
        return level
    g = choose_generator(tprime, level)
    trace.generator = g.name
    taxa = sorted(tprime.taxa)

    tg = generator_trinets(tprime, g)
    assigned, tgr = assign_reticulation_leaves(tg, g, taxa, trace.scores)
    trace.reticulation_leaves = dict(assigned)
    rest = [x for x in taxa if x not in assigned.values()]
    class_of = assign_arc_classes(tgr, g, rest)
    trace.arc_class_of = class_of

    q = same_side_fractions(tprime)
    trace.scores.q = q
    groups: dict[str, tuple] = {}
    for cls in g.arc_classes:
        members = [x for x in rest if class_of[x] == cls]
        part = partition_arc_class(cls, members, q, trace.scores)
        trace.partitions[cls] = part
        groups.update(part)
    if g.name == "G2c":
        groups, trace.swaps = align_sides_2c(groups, q, trace.scores)

    a = ancestor_fractions(tprime)
    trace.scores.a = a
    sides = {side: order_side(xs, a) for side, xs in groups.items() if xs}
    for r, x in assigned.items():
        sides[r] = (x,)
    assignment = SideAssignment(sides)
    trace.assignment = assignment
    net = attach(g, assignment)
    out = restrict(net, net.taxa)
    if len(out) != len(net):
        trace.notes.append("attached network needed simplification")
    return out
