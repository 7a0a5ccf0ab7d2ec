"""Rooted binary phylogenetic networks and their structural queries."""

from __future__ import annotations

import itertools
import sys
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

Vertex = Hashable
Arc = tuple[Vertex, Vertex]


class NetworkError(ValueError):
    """Raised when a query is not defined for the given network or taxa."""


@dataclass(frozen=True)
class CutArcSetReport:
    sets: frozenset[frozenset[str]]
    minimal_sets: frozenset[frozenset[str]]


class Network:
    """A rooted DAG whose outdegree-0 vertices carry unique taxon labels.

    Vertex ids are opaque hashables. Arcs form a multiset, so a pair of
    parallel arcs is stored twice. The object is treated as immutable:
    structural queries are cached on first use.

    Construction does not enforce the binary-network invariants; call
    :meth:`validate` for diagnostics.
    """

    def __init__(self, arcs: Iterable[Arc], labels: Mapping[Vertex, str],
                 vertices: Iterable[Vertex] = ()):
        children: dict[Vertex, list] = {}
        parents: dict[Vertex, list] = {}
        for v in itertools.chain(vertices, labels):
            children.setdefault(v, [])
            parents.setdefault(v, [])
        arc_list = []
        for u, v in arcs:
            children.setdefault(u, []).append(v)
            parents.setdefault(u, [])
            children.setdefault(v, [])
            parents.setdefault(v, []).append(u)
            arc_list.append((u, v))
        self._children = {v: tuple(c) for v, c in children.items()}
        self._parents = {v: tuple(p) for v, p in parents.items()}
        self._arcs = tuple(arc_list)
        self.labels: dict[Vertex, str] = dict(labels)
        self._leaf_of: dict[str, Vertex] = {t: v for v, t in self.labels.items()}
        roots = [v for v, p in self._parents.items() if not p]
        self._roots = roots
        self.root = roots[0] if len(roots) == 1 else None
        self._cache: dict[str, object] = {}

    # -- basic accessors ------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return tuple(self._children)

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return self._arcs

    @property
    def taxa(self) -> frozenset[str]:
        return frozenset(self._leaf_of)

    def children(self, v: Vertex) -> tuple:
        return self._children[v]

    def parents(self, v: Vertex) -> tuple:
        return self._parents[v]

    def leaf(self, taxon: str) -> Vertex:
        try:
            return self._leaf_of[taxon]
        except KeyError:
            raise NetworkError(f"unknown taxon {taxon!r}") from None

    def is_leaf(self, v: Vertex) -> bool:
        return not self._children[v]

    def is_reticulation(self, v: Vertex) -> bool:
        return len(self._parents[v]) == 2

    @property
    def reticulations(self) -> list:
        return [v for v in self._children if len(self._parents[v]) == 2]

    def __len__(self) -> int:
        return len(self._children)

    def __repr__(self) -> str:
        return (f"Network({len(self._children)} vertices, "
                f"taxa={sorted(self._leaf_of)})")

    def relabeled(self, mapping: Mapping[str, str]) -> "Network":
        """Copy with taxa renamed through ``mapping`` (missing keys kept)."""
        labels = {v: mapping.get(t, t) for v, t in self.labels.items()}
        return Network(self._arcs, labels, vertices=self._children)

    # -- validation -----------------------------------------------------

    def validate(self) -> list[str]:
        """Return a list of invariant violations; empty means valid."""
        problems = []
        if len(self._roots) != 1:
            problems.append(f"expected exactly one root, found {len(self._roots)}: "
                            f"{sorted(map(repr, self._roots))}")
        for v in self._children:
            indeg, outdeg = len(self._parents[v]), len(self._children[v])
            if not self._parents[v]:
                if outdeg != 2:
                    problems.append(f"vertex degree: root {v!r} has outdegree {outdeg}")
            elif (indeg, outdeg) not in ((1, 2), (2, 1), (1, 0)):
                problems.append(f"vertex degree: {v!r} has indegree {indeg} "
                                f"and outdegree {outdeg}")
            if outdeg == 0 and v not in self.labels:
                problems.append(f"leaf {v!r} has no taxon label")
        for v, t in self.labels.items():
            if self._children[v]:
                problems.append(f"labelled vertex {v!r} ({t}) is not a leaf")
            if not isinstance(t, str) or not t:
                problems.append(f"leaf {v!r} has an empty label")
        if len(self._leaf_of) != len(self.labels):
            dup = [t for t, c in Counter(self.labels.values()).items() if c > 1]
            problems.append(f"duplicate taxon labels: {sorted(dup)}")
        if self._topological_order_or_none() is None:
            problems.append("arcs contain a directed cycle")
        return problems

    def is_valid(self) -> bool:
        return not self.validate()

    # -- traversal helpers ------------------------------------------------

    def _topological_order_or_none(self):
        if "topo" in self._cache:
            return self._cache["topo"]
        indeg = {v: len(p) for v, p in self._parents.items()}
        stack = sorted((v for v, d in indeg.items() if d == 0), key=repr)
        order = []
        while stack:
            v = stack.pop()
            order.append(v)
            for c in self._children[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    stack.append(c)
        result = order if len(order) == len(indeg) else None
        self._cache["topo"] = result
        return result

    def topological_order(self) -> list:
        order = self._topological_order_or_none()
        if order is None:
            raise NetworkError("network contains a directed cycle")
        return order

    def _index(self) -> dict:
        if "index" not in self._cache:
            self._cache["index"] = {v: i for i, v in enumerate(self.topological_order())}
        return self._cache["index"]

    def _masks(self) -> tuple[dict, dict]:
        """Ancestor and descendant bitmasks, each including the vertex itself."""
        if "masks" not in self._cache:
            index = self._index()
            order = self.topological_order()
            anc, desc = {}, {}
            for v in order:
                m = 1 << index[v]
                for p in self._parents[v]:
                    m |= anc[p]
                anc[v] = m
            for v in reversed(order):
                m = 1 << index[v]
                for c in self._children[v]:
                    m |= desc[c]
                desc[v] = m
            self._cache["masks"] = (anc, desc)
        return self._cache["masks"]

    def descendants(self, v: Vertex) -> set:
        order = self.topological_order()
        mask = self._masks()[1][v]
        return {u for i, u in enumerate(order) if mask >> i & 1}

    def is_ancestor(self, u: Vertex, v: Vertex) -> bool:
        """True when there is a directed path from ``u`` to ``v`` (u == v allowed)."""
        index = self._index()
        return bool(self._masks()[1][u] >> index[v] & 1)

    def descendant_taxa(self, v: Vertex) -> frozenset[str]:
        key = ("dtaxa", v)
        if key not in self._cache:
            mask = self._masks()[1][v]
            index = self._index()
            self._cache[key] = frozenset(t for u, t in self.labels.items()
                                         if mask >> index[u] & 1)
        return self._cache[key]

    # -- lowest stable ancestor -----------------------------------------

    def _dominators(self) -> tuple[dict, dict]:
        if "dom" not in self._cache:
            if self.root is None:
                raise NetworkError("network has no unique root")
            order = self.topological_order()
            idom = {self.root: self.root}
            depth = {self.root: 0}

            def meet(a, b):
                while a != b:
                    if depth[a] < depth[b]:
                        a, b = b, a
                    a = idom[a]
                return a

            for v in order:
                if v == self.root:
                    continue
                ps = self._parents[v]
                d = ps[0]
                for p in ps[1:]:
                    d = meet(d, p)
                idom[v] = d
                depth[v] = depth[d] + 1
            self._cache["dom"] = (idom, depth)
        return self._cache["dom"]

    def lsa_vertex(self, vertices: Iterable[Vertex]) -> Vertex:
        """Deepest vertex lying on every root path to each of ``vertices``."""
        idom, depth = self._dominators()
        it = iter(vertices)
        try:
            a = next(it)
        except StopIteration:
            raise NetworkError("LSA of an empty set is undefined") from None
        for b in it:
            while a != b:
                if depth[a] < depth[b]:
                    a, b = b, a
                a = idom[a]
        return a

    def lsa(self, taxa: Iterable[str]) -> Vertex:
        return self.lsa_vertex([self.leaf(t) for t in taxa])

    def is_recoverable(self) -> bool:
        return self.lsa(self._leaf_of) == self.root

    # -- blobs, level and cut-arc sets -----------------------------------

    def cut_arcs(self) -> list[Arc]:
        """Arcs whose removal disconnects the underlying undirected multigraph."""
        if "bridges" not in self._cache:
            self._cache["bridges"] = _bridges(self)
        return self._cache["bridges"]

    def biconnected_components(self) -> list[list[Arc]]:
        """Partition of the arcs into maximal cut-arc-free pieces.

        Every cut-arc is a singleton component; a pair of parallel arcs is
        never a cut-arc.
        """
        if "blobs" not in self._cache:
            bridge_count = Counter(self.cut_arcs())
            parent = {v: v for v in self._children}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            rest = []
            comps = []
            for arc in self._arcs:
                if bridge_count[arc]:
                    bridge_count[arc] -= 1
                    comps.append([arc])
                else:
                    rest.append(arc)
                    parent[find(arc[0])] = find(arc[1])
            groups = defaultdict(list)
            for arc in rest:
                groups[find(arc[0])].append(arc)
            comps.extend(groups.values())
            self._cache["blobs"] = comps
        return self._cache["blobs"]

    def level(self) -> int:
        best = 0
        for comp in self.biconnected_components():
            heads = Counter(v for _, v in comp)
            best = max(best, sum(1 for v, c in heads.items() if c == 2))
        return best

    def is_strict_level(self, k: int) -> bool:
        return self.level() == k

    def is_tree(self) -> bool:
        return not self.reticulations

    def cut_arc_sets(self) -> CutArcSetReport:
        if "cutsets" not in self._cache:
            sets = {self.taxa}
            for _, v in self.cut_arcs():
                sets.add(self.descendant_taxa(v))
            sets = frozenset(sets)
            big = [s for s in sets if len(s) > 1]
            minimal = frozenset(s for s in big if not any(b < s for b in big))
            self._cache["cutsets"] = CutArcSetReport(sets, minimal)
        return self._cache["cutsets"]

    def is_simple(self) -> bool:
        """True when no cut-arc set strictly between singletons and X exists."""
        n = len(self._leaf_of)
        return not any(1 < len(s) < n for s in self.cut_arc_sets().sets)

    # -- isomorphism ------------------------------------------------------

    def canonical_form(self) -> tuple:
        if "canon" not in self._cache:
            self._cache["canon"] = canonical_labeling(self)[0]
        return self._cache["canon"]


def _bridges(net: Network) -> list[Arc]:
    adj = defaultdict(list)
    for eid, (u, v) in enumerate(net.arcs):
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    pre: dict = {}
    low: dict = {}
    bridges = []
    counter = 0
    for start in net.vertices:
        if start in pre:
            continue
        pre[start] = low[start] = counter
        counter += 1
        stack = [(start, -1, iter(adj[start]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for w, eid in it:
                if eid == via:
                    continue
                if w not in pre:
                    pre[w] = low[w] = counter
                    counter += 1
                    stack.append((w, eid, iter(adj[w])))
                    advanced = True
                    break
                low[v] = min(low[v], pre[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] > pre[u]:
                    bridges.append(net.arcs[via])
    return bridges


# -- canonical labelling by colour refinement and individualisation ------

def _initial_colors(net: Network) -> dict:
    raw = {v: (len(net.parents(v)), len(net.children(v)), net.labels.get(v, ""))
           for v in net.vertices}
    ranks = {c: i for i, c in enumerate(sorted(set(raw.values())))}
    return {v: ranks[c] for v, c in raw.items()}


def _refine(net: Network, colors: dict) -> dict:
    n_classes = len(set(colors.values()))
    while True:
        sig = {v: (colors[v],
                   tuple(sorted(colors[c] for c in net.children(v))),
                   tuple(sorted(colors[p] for p in net.parents(v))))
               for v in colors}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        colors = {v: ranks[s] for v, s in sig.items()}
        if len(ranks) == n_classes:
            return colors
        n_classes = len(ranks)


def _encode(net: Network, colors: dict) -> tuple:
    arcs = tuple(sorted((colors[u], colors[v]) for u, v in net.arcs))
    leaves = tuple(sorted((colors[v], t) for v, t in net.labels.items()))
    return (len(colors), arcs, leaves)


def canonical_labeling(net: Network) -> tuple[tuple, dict]:
    """Return ``(form, position)``: a complete isomorphism invariant and the
    canonical position of every vertex that realises it."""
    best: list = [None, None]

    def search(colors):
        colors = _refine(net, colors)
        cells = defaultdict(list)
        for v, c in colors.items():
            cells[c].append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = c
                break
        if target is None:
            form = _encode(net, colors)
            if best[0] is None or form < best[0]:
                best[0], best[1] = form, colors
            return
        for v in cells[target]:
            split = {u: 2 * c + (0 if u == v else 1) for u, c in colors.items()}
            search(split)

    search(_initial_colors(net))
    return best[0], best[1]


def find_isomorphism(a: Network, b: Network) -> dict | None:
    """Backtracking search for a label-preserving isomorphism ``a -> b``."""
    if (len(a), len(a.arcs), a.taxa) != (len(b), len(b.arcs), b.taxa):
        return None
    union = Network([(("a", u), ("a", v)) for u, v in a.arcs]
                    + [(("b", u), ("b", v)) for u, v in b.arcs],
                    {**{("a", v): t for v, t in a.labels.items()},
                     **{("b", v): t for v, t in b.labels.items()}},
                    vertices=[("a", v) for v in a.vertices] + [("b", v) for v in b.vertices])
    colors = _refine(union, _initial_colors(union))
    ca = {v: colors[("a", v)] for v in a.vertices}
    cb = {v: colors[("b", v)] for v in b.vertices}
    if Counter(ca.values()) != Counter(cb.values()):
        return None
    by_color = defaultdict(list)
    for v, c in cb.items():
        by_color[c].append(v)
    arc_count_a = Counter(a.arcs)
    arc_count_b = Counter(b.arcs)
    order = sorted(a.vertices, key=lambda v: (len(by_color[ca[v]]), ca[v], repr(v)))
    mapping: dict = {}
    inverse: dict = {}

    def consistent(u, w):
        for x in set(a.children(u)) | set(a.parents(u)):
            if x in mapping:
                y = mapping[x]
                if (arc_count_a[(u, x)] != arc_count_b[(w, y)]
                        or arc_count_a[(x, u)] != arc_count_b[(y, w)]):
                    return False
        for y in set(b.children(w)) | set(b.parents(w)):
            if y in inverse:
                x = inverse[y]
                if (arc_count_a[(u, x)] != arc_count_b[(w, y)]
                        or arc_count_a[(x, u)] != arc_count_b[(y, w)]):
                    return False
        return True

    def extend(i):
        if i == len(order):
            return True
        u = order[i]
        for w in by_color[ca[u]]:
            if w in inverse or not consistent(u, w):
                continue
            mapping[u] = w
            inverse[w] = u
            if extend(i + 1):
                return True
            del mapping[u]
            del inverse[w]
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 2 * len(order) + 100))
    try:
        found = extend(0)
    finally:
        sys.setrecursionlimit(limit)
    if not found:
        return None
    return dict(mapping)


SMALL_NETWORK = 16


def isomorphic(a: Network, b: Network) -> bool:
    """Label-preserving isomorphism test.

    Small networks compare canonical forms; larger ones use backtracking.
    """
    if max(len(a), len(b)) <= SMALL_NETWORK:
        return a.canonical_form() == b.canonical_form()
    return find_isomorphism(a, b) is not None
