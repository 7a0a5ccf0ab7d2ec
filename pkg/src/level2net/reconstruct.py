"""Top-level reconstruction: split off a minimal cut-arc set, recurse on the
collapsed collection, build the simple part and graft it back."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .cutset import InsufficientTrinetsError, find_cut_arc_set, pair_deficiency
from .network import Network, NetworkError
from .restriction import TrinetCollection, _bits, restrict, simplify
from .simple import SimpleTrace, build_simple

log = logging.getLogger(__name__)

COLLAPSE_PREFIX = "<collapse:"


class ReconstructionError(NetworkError):
    pass


@dataclass
class LevelReport:
    depth: int
    taxa: int
    cut_arc_set: tuple[str, ...]
    k: int | None
    generator: str | None
    notes: list = field(default_factory=list)


@dataclass
class ReconstructionReport:
    levels: list[LevelReport] = field(default_factory=list)
    dropped_nonrecoverable: int = 0

    def as_text(self) -> str:
        lines = [f"dropped_nonrecoverable: {self.dropped_nonrecoverable}"]
        for lv in self.levels:
            gen = lv.generator or ("binet" if lv.k is None else "-")
            lines.append(f"depth {lv.depth}: taxa={lv.taxa} A={{{','.join(lv.cut_arc_set)}}} "
                         f"k={lv.k if lv.k is not None else '-'} generator={gen}"
                         + "".join(f" note={n!r}" for n in lv.notes))
        return "\n".join(lines) + "\n"


def fresh_taxon(taxa, depth: int) -> str:
    name = f"{COLLAPSE_PREFIX}{depth}>"
    i = 0
    while name in taxa:
        i += 1
        name = f"{COLLAPSE_PREFIX}{depth}.{i}>"
    return name


def collapse_collection(collection: TrinetCollection, cut: frozenset, a_star: str,
                        below: Network | None = None) -> TrinetCollection:
    """Replace the taxa of ``cut`` by the single taxon ``a_star``.

    ``below``, the network already built on ``cut``, tells where the cut arc
    sits when redundant structure hides it.
    """
    shapes: dict = {}
    out = TrinetCollection()
    for net, mult in collection:
        taxa = net.taxa
        outside = taxa - cut
        if not outside:
            continue
        inside = taxa & cut
        if not inside:
            out.add(net, mult)
            continue
        shape = None
        if below is not None:
            if inside not in shapes:
                shapes[inside] = pendant(below, inside).canonical_form()
            shape = shapes[inside]
        out.add(_cut_off(net, inside, a_star, shape), mult)
    return out


def pendant(net: Network, taxa) -> Network:
    """What hangs below the root arc of ``net`` once only ``taxa`` are kept:
    every path from the root to them, simplified."""
    anc = net._masks()[0]
    order = net.topological_order()
    leaves = [net.leaf(t) for t in sorted(taxa)]
    mask = 0
    for leaf in leaves:
        mask |= anc[leaf]
    keep = {order[i] for i in _bits(mask)}
    arcs = [(u, c) for u in keep for c in net.children(u) if c in keep]
    return simplify(arcs, {v: net.labels[v] for v in leaves}, net.root)


def _subnetwork(net: Network, v) -> Network:
    keep = net.descendants(v)
    arcs = [(u, c) for u in keep for c in net.children(u)]
    return Network(arcs, {u: t for u, t in net.labels.items() if u in keep}, vertices=keep)


def _cut_off(net: Network, inside: frozenset, a_star: str, shape=None) -> Network:
    """Replace the part of ``net`` hanging below the cut arc above ``inside``
    by the leaf ``a_star``.

    The cut arc enters a single-parent vertex whose descendants have no
    other way in. Several such vertices can be stacked when redundant
    blobs are involved; the highest one whose subnetwork matches ``shape``
    is chosen, else the highest one. Without any, restrict to one
    representative instead.
    """
    candidates = []
    for v in net.topological_order():
        if len(net.parents(v)) != 1 or net.descendant_taxa(v) != inside:
            continue
        below = net.descendants(v) - {v}
        if all(p in below or p == v for w in below for p in net.parents(w)):
            candidates.append(v)
    if candidates:
        top = candidates[0]
        if shape is not None and len(candidates) > 1:
            top = next((v for v in candidates
                        if _subnetwork(net, v).canonical_form() == shape), top)
        below = net.descendants(top) - {top}
        arcs = [(a, b) for a, b in net.arcs if a not in below and a != top]
        labels = {u: t for u, t in net.labels.items() if u not in below}
        labels[top] = a_star
        keep = [u for u in net.vertices if u not in below]
        return Network(arcs, labels, vertices=keep)
    a = min(inside)
    sub = net if len(inside) == 1 else restrict(net, (net.taxa - inside) | {a})
    return sub.relabeled({a: a_star})


def restrict_collection(collection: TrinetCollection, cut: frozenset) -> TrinetCollection:
    out = TrinetCollection()
    for net, mult in collection:
        inside = net.taxa & cut
        if len(inside) >= 2:
            out.add(net if inside == net.taxa else restrict(net, inside), mult)
    return out


def graft(n_star: Network, a_star: str, n_prime: Network) -> Network:
    """Identify the leaf ``a_star`` of ``n_star`` with the root of ``n_prime``."""
    clash = (n_star.taxa - {a_star}) & n_prime.taxa
    if clash:
        raise ReconstructionError(f"graft: taxa on both sides: {sorted(clash)}")
    leaf = n_star.leaf(a_star)
    ids = {}
    for v in n_star.vertices:
        if v != leaf:
            ids[("s", v)] = len(ids)
    for v in n_prime.vertices:
        ids[("p", v)] = len(ids)
    target = ids[("p", n_prime.root)]
    arcs = []
    for u, v in n_star.arcs:
        arcs.append((ids[("s", u)], target if v == leaf else ids[("s", v)]))
    for u, v in n_prime.arcs:
        arcs.append((ids[("p", u)], ids[("p", v)]))
    labels = {ids[("s", v)]: t for v, t in n_star.labels.items() if v != leaf}
    labels.update({ids[("p", v)]: t for v, t in n_prime.labels.items()})
    return Network(arcs, labels, vertices=ids.values())


def prepare_input(collection: TrinetCollection,
                  report: ReconstructionReport | None = None) -> TrinetCollection:
    """Drop non-recoverable entries; reject anything that is not a valid
    binet or trinet of level at most 2."""
    out = TrinetCollection()
    dropped = 0
    for net, mult in collection:
        problems = net.validate()
        if problems:
            raise ReconstructionError(f"invalid input network: {problems[0]}")
        if len(net.taxa) not in (2, 3):
            raise ReconstructionError(f"input entries must have 2 or 3 taxa, got {sorted(net.taxa)}")
        if net.level() > 2:
            raise ReconstructionError(f"input entry on {sorted(net.taxa)} has level {net.level()}")
        if not net.is_recoverable():
            dropped += mult
            continue
        out.add(net, mult)
    if dropped:
        log.warning("dropped %d non-recoverable input entries", dropped)
    if report is not None:
        report.dropped_nonrecoverable = dropped
    return out


def reconstruct(collection: TrinetCollection,
                report: ReconstructionReport | None = None) -> Network:
    """Level-2 network on the taxa of ``collection``.

    Exact input (the trinets of a recoverable binary level-2 network on at
    least three taxa) gives back that network.
    """
    if report is None:
        report = ReconstructionReport()
    work = prepare_input(collection, report)
    if len(work.taxa) < 2:
        raise InsufficientTrinetsError("need binets or trinets on at least two taxa")
    return _reconstruct(work, 0, report)


def _reconstruct(collection: TrinetCollection, depth: int,
                 report: ReconstructionReport) -> Network:
    taxa = collection.taxa
    phi = pair_deficiency(collection)
    cut = find_cut_arc_set(collection, phi)
    trace = SimpleTrace()
    n_prime = build_simple(restrict_collection(collection, cut), trace)
    report.levels.append(LevelReport(depth, len(taxa), tuple(sorted(cut)), trace.k,
                                     trace.generator, list(trace.notes)))
    if cut == taxa:
        return n_prime
    a_star = fresh_taxon(taxa, depth)
    collapsed = collapse_collection(collection, cut, a_star, n_prime)
    expected = (taxa - cut) | {a_star}
    if collapsed.taxa != expected:
        missing = sorted(expected - collapsed.taxa)
        raise InsufficientTrinetsError(f"no trinet links taxa {missing} to the rest")
    n_star = _reconstruct(collapsed, depth + 1, report)
    return graft(n_star, a_star, n_prime)
