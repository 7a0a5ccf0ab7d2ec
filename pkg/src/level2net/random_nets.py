"""Seeded random recoverable binary networks of level at most 2."""

from __future__ import annotations

import random

from .generators import CATALOG, Generator
from .network import Network, NetworkError


def _slots_needed(g: Generator) -> int:
    # a lone reticulation side without an occupied arc side would dominate
    # every leaf of the blob, making the blob invisible to its trinets
    extra = 1 if len(g.reticulation_sides) == 1 and not g.parallel_pairs else 0
    return len(g.reticulation_sides) + len(g.parallel_pairs) + extra


def random_level2_network(n: int, seed: int, max_level: int = 2,
                          taxa: list[str] | None = None) -> Network:
    """Compose random blobs top-down until every taxon is a leaf.

    Each blob is a tree vertex or a catalog generator of level at most
    ``max_level``; every side that needs one gets a pendant subnetwork.
    """
    if n < 3:
        raise NetworkError("random networks need at least three leaves")
    if max_level not in (0, 1, 2):
        raise NetworkError("max_level must be 0, 1 or 2")
    rng = random.Random(seed)
    if taxa is None:
        taxa = [f"t{i}" for i in range(n)]
    if len(taxa) != n:
        raise NetworkError("taxa list does not match n")
    choices = [g for g in CATALOG.values() if g.level <= max_level]
    arcs: list[tuple[int, int]] = []
    labels: dict[int, str] = {}
    counter = [0]

    def new():
        counter[0] += 1
        return counter[0] - 1

    def build(group: list[str]) -> int:
        if len(group) == 1:
            v = new()
            labels[v] = group[0]
            return v
        fits = [g for g in choices if _slots_needed(g) <= len(group)]
        if not fits or rng.random() < 0.35:
            cut = rng.randint(1, len(group) - 1)
            v = new()
            arcs.append((v, build(group[:cut])))
            arcs.append((v, build(group[cut:])))
            return v
        g = rng.choice(fits)
        return blob(g, group)

    def blob(g: Generator, group: list[str]) -> int:
        need = _slots_needed(g)
        m = rng.randint(need, min(len(group), need + 3))
        cuts = sorted(rng.sample(range(1, len(group)), m - 1))
        parts = [group[i:j] for i, j in zip([0] + cuts, cuts + [len(group)])]
        rng.shuffle(parts)
        ids = {v: new() for v in g.vertices}
        on_side: dict[str, list[list[str]]] = {s: [] for s in g.arc_sides}
        it = iter(parts)
        for r in g.reticulation_sides:
            arcs.append((ids[r], build(next(it))))
        for pair in g.parallel_pairs:
            on_side[rng.choice(pair)].append(next(it))
        sides = list(g.arc_sides)
        if need > len(g.reticulation_sides) + len(g.parallel_pairs):
            on_side[rng.choice(sides)].append(next(it))
        for part in it:
            on_side[rng.choice(sides)].append(part)
        for s, (u, v) in g.arc_sides.items():
            prev = ids[u]
            for part in on_side[s]:
                p = new()
                arcs.append((prev, p))
                arcs.append((p, build(part)))
                prev = p
            arcs.append((prev, ids[v]))
        return ids[g.root]

    order = list(taxa)
    rng.shuffle(order)
    build(order)
    net = Network(arcs, labels)
    assert not net.validate(), net.validate()
    return net
