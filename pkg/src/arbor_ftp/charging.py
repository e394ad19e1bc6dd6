"""Empirical checks of the charging argument that bounds ``|union of paths|``.

Each path edge gets the index of the first path containing it as its color.
Color ``i`` is charged to a vertex pair ``(x, y)`` when path ``i`` runs from
``x`` to ``y``, leaves ``x`` on an edge colored ``i`` and enters ``y`` on an
edge colored ``i``.  A path index is *intersecting* for ``(x, y)`` when its
``x -> y`` stretch shares an edge with the canonical shortest ``x -> y`` path.
"""
from __future__ import annotations

import enum
import io
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .eft import EftSubgraph, union_of_paths
from .graph import Graph, SearchTree, backward_search


class MissingProvenance(ValueError):
    pass


class PairClass(enum.Enum):
    INTERSECTING = "intersecting"
    NON_INTERSECTING = "non-intersecting"


@dataclass(frozen=True)
class ColorAssignment:
    color: dict[int, int]
    per_color_count: Counter

    def count(self, i: int) -> int:
        return self.per_color_count.get(i, 0)


def color_edges(h: EftSubgraph) -> ColorAssignment:
    """Color each path edge with the least index of a path containing it."""
    if not h.paths:
        raise MissingProvenance("subgraph carries no replacement paths")
    color: dict[int, int] = {}
    for i, p in enumerate(h.paths, 1):
        for eid in p.edges:
            color.setdefault(eid, i)
    if h.provenance and h.provenance != color:
        raise MissingProvenance("recorded provenance disagrees with path order")
    return ColorAssignment(color, Counter(color.values()))


class ShortestPathCache:
    """Canonical ``SP(x, y)`` edge sets, one full backward search per target."""

    def __init__(self, g: Graph):
        self.g = g
        self._trees: dict[int, SearchTree] = {}
        self._edges: dict[tuple[int, int], frozenset[int]] = {}

    def tree(self, y: int) -> SearchTree:
        t = self._trees.get(y)
        if t is None:
            t = self._trees[y] = backward_search(self.g, y)
        return t

    def edges(self, x: int, y: int) -> frozenset[int]:
        key = (x, y)
        es = self._edges.get(key)
        if es is None:
            es = self._edges[key] = frozenset(self.tree(y).path_from(x).edges)
        return es

    @property
    def ties(self) -> bool:
        return any(t.tie for t in self._trees.values())


@dataclass
class ChargeLedger:
    charges: dict[tuple[int, int], set[int]] = field(default_factory=lambda: defaultdict(set))
    classification: dict[tuple[tuple[int, int], int], PairClass] = field(default_factory=dict)
    pairs_per_color: Counter = field(default_factory=Counter)
    subpaths: dict[tuple[tuple[int, int], int], tuple[int, ...]] = field(default_factory=dict)

    def max_charge(self) -> int:
        return max((len(c) for c in self.charges.values()), default=0)

    def total_charge(self) -> int:
        return sum(len(c) for c in self.charges.values())

    def breakdown(self, pair: tuple[int, int]) -> tuple[list[int], list[int]]:
        """(intersecting colors, non-intersecting colors) charged to ``pair``."""
        inter, non = [], []
        for i in sorted(self.charges.get(pair, ())):
            if self.classification[(pair, i)] is PairClass.INTERSECTING:
                inter.append(i)
            else:
                non.append(i)
        return inter, non


def compute_charges(h: EftSubgraph, ca: ColorAssignment,
                    sp: ShortestPathCache | None = None) -> ChargeLedger:
    """Charge every (x, y) stretch of every path and classify it."""
    sp = sp or ShortestPathCache(h.graph)
    ledger = ChargeLedger()
    for i, p in enumerate(h.paths, 1):
        edges, verts = p.edges, p.vertices
        fresh = [a for a, eid in enumerate(edges) if ca.color.get(eid) == i]
        for ai, a in enumerate(fresh):
            x = verts[a]
            for b in fresh[ai:]:
                y = verts[b + 1]
                pair = (x, y)
                stretch = edges[a:b + 1]
                ledger.charges[pair].add(i)
                ledger.pairs_per_color[i] += 1
                hit = not sp.edges(x, y).isdisjoint(stretch)
                ledger.classification[(pair, i)] = (
                    PairClass.INTERSECTING if hit else PairClass.NON_INTERSECTING)
                ledger.subpaths[(pair, i)] = stretch
    return ledger


@dataclass(frozen=True)
class ChargeViolation:
    pair: tuple[int, int]
    colors: tuple[int, ...]
    intersecting: tuple[int, ...]
    non_intersecting: tuple[int, ...]
    subpaths: dict[int, tuple[int, ...]]
    reason: str


def check_charge_bound(cl: ChargeLedger) -> ChargeViolation | None:
    """At most three colors per pair, split as at most one non-intersecting
    and at most two intersecting.  Returns the first offending pair."""
    for pair in sorted(cl.charges):
        colors = cl.charges[pair]
        inter, non = cl.breakdown(pair)
        reason = None
        if len(colors) > 3:
            reason = f"{len(colors)} colors charged"
        elif len(non) > 1:
            reason = f"{len(non)} non-intersecting colors"
        elif len(inter) > 2:
            reason = f"{len(inter)} intersecting colors"
        if reason:
            subs = {i: cl.subpaths.get((pair, i), ()) for i in sorted(colors)}
            return ChargeViolation(pair, tuple(sorted(colors)), tuple(inter), tuple(non),
                                   subs, reason)
    return None


def check_color_pair_counts(cl: ChargeLedger, ca: ColorAssignment) -> int | None:
    """First color charging more than ``c(c+1)/2`` pairs, else ``None``."""
    for i in sorted(cl.pairs_per_color):
        c = ca.count(i)
        if cl.pairs_per_color[i] > c * (c + 1) // 2:
            return i
    return None


@dataclass(frozen=True)
class SizeReport:
    n: int
    union_size: int

    @property
    def ok(self) -> bool:
        return self.union_size ** 2 <= 6 * self.n ** 3

    @property
    def bound(self) -> float:
        return 6 ** 0.5 * self.n ** 1.5


def check_size_bound(h: EftSubgraph) -> SizeReport | None:
    """``None`` if ``|union of paths|^2 <= 6 n^3``, else the excess report."""
    rep = SizeReport(h.graph.n, len(union_of_paths(h.paths)))
    return None if rep.ok else rep


@dataclass(frozen=True)
class DisjointCounterexample:
    pair: tuple[int, int]
    first: tuple[int, tuple[int, ...]]
    second: tuple[int, tuple[int, ...]]


def check_disjoint_uniqueness(h: EftSubgraph, sp: ShortestPathCache | None = None,
                              max_n: int = 50) -> DisjointCounterexample | None:
    """Any two path stretches x -> y that avoid every edge of ``SP(x, y)``
    must coincide."""
    g = h.graph
    if g.n > max_n:
        raise ValueError(f"pair scan limited to n <= {max_n}")
    sp = sp or ShortestPathCache(g)
    seen: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}
    for i, p in enumerate(h.paths, 1):
        edges, verts = p.edges, p.vertices
        for a in range(len(edges)):
            for b in range(a, len(edges)):
                pair = (verts[a], verts[b + 1])
                stretch = edges[a:b + 1]
                if not sp.edges(*pair).isdisjoint(stretch):
                    continue
                prev = seen.setdefault(pair, (i, stretch))
                if prev[1] != stretch:
                    return DisjointCounterexample(pair, prev, (i, stretch))
    return None


def format_charges(cl: ChargeLedger) -> str:
    """TSV: x, y, comma list of colors, comma list of classes (same order)."""
    out = io.StringIO()
    out.write("x\ty\tcolors\tclasses\n")
    for pair in sorted(cl.charges):
        colors = sorted(cl.charges[pair])
        classes = [cl.classification[(pair, i)].value for i in colors]
        out.write(f"{pair[0]}\t{pair[1]}\t{','.join(map(str, colors))}\t{','.join(classes)}\n")
    return out.getvalue()
