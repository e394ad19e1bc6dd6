"""Matroids given by independence oracles, and min-cost bases.

Costs are arbitrary (possibly negative) numbers indexed by element id.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .graph import _content_lines, _read_text, parse_cost

Costs = Union[Sequence, Mapping]


class InstanceTooLarge(ValueError):
    pass


class InternalContradiction(RuntimeError):
    """A full-rank fault found no swap element; the oracle is not a matroid."""


class MatroidKind(enum.Enum):
    GRAPHIC = "graphic"
    UNIFORM = "uniform"
    PARTITION = "partition"
    EXPLICIT = "explicit"


class MatroidOracle:
    kind: MatroidKind
    ground_size: int

    def is_independent(self, s: Iterable[int]) -> bool:
        raise NotImplementedError

    @property
    def ground(self) -> range:
        return range(self.ground_size)


class GraphicMatroid(MatroidOracle):
    """Cycle matroid of an undirected multigraph; element i is ``edges[i]``."""

    kind = MatroidKind.GRAPHIC

    def __init__(self, n_vertices: int, edges: Sequence[tuple[int, int]]):
        self.n_vertices = n_vertices
        self.edges = [tuple(e) for e in edges]
        self.ground_size = len(self.edges)

    def is_independent(self, s: Iterable[int]) -> bool:
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in s:
            u, v = self.edges[i]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def __repr__(self):
        return f"GraphicMatroid({self.n_vertices}, {self.edges})"


class UniformMatroid(MatroidOracle):
    kind = MatroidKind.UNIFORM

    def __init__(self, k: int, m: int):
        self.k = k
        self.ground_size = m

    def is_independent(self, s: Iterable[int]) -> bool:
        return len(set(s)) <= self.k

    def __repr__(self):
        return f"UniformMatroid({self.k}, {self.ground_size})"


class PartitionMatroid(MatroidOracle):
    """Element i lies in block ``block_of[i]``; block b admits ``capacity[b]``."""

    kind = MatroidKind.PARTITION

    def __init__(self, block_of: Sequence[int], capacity: Sequence[int]):
        self.block_of = list(block_of)
        self.capacity = list(capacity)
        self.ground_size = len(self.block_of)

    def is_independent(self, s: Iterable[int]) -> bool:
        used = [0] * len(self.capacity)
        for i in set(s):
            b = self.block_of[i]
            used[b] += 1
            if used[b] > self.capacity[b]:
                return False
        return True

    def __repr__(self):
        return f"PartitionMatroid({self.block_of}, {self.capacity})"


class ExplicitMatroid(MatroidOracle):
    """Independent sets listed outright (stored as bitmasks)."""

    kind = MatroidKind.EXPLICIT

    def __init__(self, m: int, independent: Iterable[Iterable[int]]):
        self.ground_size = m
        self.masks = frozenset(_mask(s) for s in independent)

    @classmethod
    def from_bases(cls, m: int, bases: Iterable[Iterable[int]]) -> "ExplicitMatroid":
        """Downward closure of the given sets."""
        family = set()
        for b in bases:
            b = sorted(set(b))
            for r in range(len(b) + 1):
                family.update(combinations(b, r))
        return cls(m, family)

    def is_independent(self, s: Iterable[int]) -> bool:
        return _mask(s) in self.masks

    def __repr__(self):
        return f"ExplicitMatroid({self.ground_size}, {len(self.masks)} sets)"


def _mask(s: Iterable[int]) -> int:
    mask = 0
    for i in s:
        mask |= 1 << i
    return mask


@dataclass(frozen=True)
class Basis:
    elements: tuple[int, ...]
    cost: object = 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements


def _cost(cost: Costs, e: int):
    return cost[e]


def greedy_min_cost_basis(m: MatroidOracle, ground: Iterable[int], cost: Costs) -> Basis:
    """Min-cost basis of the restriction of ``m`` to ``ground``.

    Elements are scanned by ``(cost, id)``; equal costs go to the lower id.
    """
    chosen: list[int] = []
    for e in sorted(set(ground), key=lambda e: (cost[e], e)):
        chosen.append(e)
        if not m.is_independent(chosen):
            chosen.pop()
    return Basis(tuple(sorted(chosen)), sum(cost[e] for e in chosen))


def rank(m: MatroidOracle, s: Iterable[int]) -> int:
    chosen: list[int] = []
    for e in sorted(set(s)):
        chosen.append(e)
        if not m.is_independent(chosen):
            chosen.pop()
    return len(chosen)


def in_span(m: MatroidOracle, s: Iterable[int], x: int) -> bool:
    s = set(s)
    return rank(m, s | {x}) == rank(m, s)


def find_swap_element(m: MatroidOracle, b1: Iterable[int], f: int, b2: Iterable[int],
                      cost: Costs, ground: Iterable[int] | None = None) -> int | None:
    """Element of ``b2`` that repairs ``b1`` after ``f`` fails.

    ``b1`` is a min-cost basis of ``M|ground`` containing ``f`` and ``b2`` a
    min-cost basis of ``M|(ground - b1)``.  Returns ``None`` when ``f`` is a
    coloop of ``M|ground`` (then ``b1 - f`` is already optimal); otherwise the
    cheapest ``b`` in ``b2`` with ``b1 - f + b`` independent.
    """
    b1 = set(b1)
    if f not in b1:
        raise ValueError(f"{f} is not in the basis")
    ground = set(m.ground) if ground is None else set(ground)
    if rank(m, ground - {f}) < rank(m, ground):
        return None
    rest = sorted(b1 - {f})
    for b in sorted(set(b2), key=lambda e: (cost[e], e)):
        if m.is_independent(rest + [b]):
            return b
    raise InternalContradiction(f"no element of {sorted(b2)} completes {rest} after losing {f}")


def independent_sets(m: MatroidOracle, ground: Iterable[int] | None = None,
                     limit: int = 16) -> list[tuple[int, ...]]:
    ground = sorted(m.ground if ground is None else set(ground))
    if len(ground) > limit:
        raise InstanceTooLarge(f"enumeration needs at most {limit} elements")
    return [s for r in range(len(ground) + 1) for s in combinations(ground, r)
            if m.is_independent(s)]


def brute_force_min_basis(m: MatroidOracle, ground: Iterable[int], cost: Costs) -> Basis:
    """Cheapest maximum-size independent subset of ``ground``, by enumeration."""
    sets = independent_sets(m, ground)
    top = max(len(s) for s in sets)
    best = min((s for s in sets if len(s) == top), key=lambda s: (sum(cost[e] for e in s), s))
    return Basis(best, sum(cost[e] for e in best))


def check_matroid_axioms(m: MatroidOracle) -> str | None:
    """Exhaustive audit for ``ground_size <= 12``.  ``None`` when valid."""
    if m.ground_size > 12:
        raise InstanceTooLarge("axiom audit limited to 12 elements")
    if not m.is_independent(()):
        return "empty set is dependent"
    sets = independent_sets(m)
    masks = {_mask(s) for s in sets}
    for s in sets:
        for i in range(len(s)):
            if _mask(s[:i] + s[i + 1:]) not in masks:
                return f"not downward closed at {s}"
    by_size: dict[int, list[int]] = {}
    for s in sets:
        by_size.setdefault(len(s), []).append(_mask(s))
    for r, smaller in by_size.items():
        for x in smaller:
            for y in by_size.get(r + 1, ()):
                extra = y & ~x
                if not any((extra >> e) & 1 and (x | 1 << e) in masks
                           for e in range(m.ground_size)):
                    return f"exchange fails for {bin(x)} and {bin(y)}"
    return None


def load_matroid(src) -> tuple[MatroidOracle, list]:
    """Parse a matroid file; returns the oracle and one cost per element.

    Formats (``#`` starts a comment)::

        graphic            uniform K M        partition M        explicit M
        n m [root]                            block CAP e e ...  e e ...
        u v cost                                                 -          (empty set)
        ...
        costs                                 (all formats: optional for graphic)
        c0 c1 ...
    """
    lines = list(_content_lines(_read_text(src)))
    if not lines:
        raise ValueError("empty matroid file")
    _, head, _ = lines[0]
    kind = head[0]
    body = lines[1:]
    cost_at = next((i for i, (_, f, _) in enumerate(body) if f == ["costs"]), None)
    cost_lines = [] if cost_at is None else body[cost_at + 1:]
    body = body if cost_at is None else body[:cost_at]
    costs = [parse_cost(c, allow_negative=True) for _, f, _ in cost_lines for c in f]

    if kind == "graphic":
        nv, m = int(body[0][1][0]), int(body[0][1][1])
        edges, edge_costs = [], []
        for lineno, f, _ in body[1:]:
            if len(f) != 3:
                raise ValueError(f"line {lineno}: expected 'u v cost'")
            edges.append((int(f[0]), int(f[1])))
            edge_costs.append(parse_cost(f[2], allow_negative=True))
        if len(edges) != m:
            raise ValueError(f"expected {m} edges, found {len(edges)}")
        mat: MatroidOracle = GraphicMatroid(nv, edges)
        costs = costs or edge_costs
    elif kind == "uniform":
        mat = UniformMatroid(int(head[1]), int(head[2]))
    elif kind == "partition":
        m = int(head[1])
        block_of = [-1] * m
        caps = []
        for lineno, f, _ in body:
            if f[0] != "block":
                raise ValueError(f"line {lineno}: expected 'block CAP elements...'")
            for e in f[2:]:
                block_of[int(e)] = len(caps)
            caps.append(int(f[1]))
        if -1 in block_of:
            raise ValueError(f"element {block_of.index(-1)} is in no block")
        mat = PartitionMatroid(block_of, caps)
    elif kind == "explicit":
        m = int(head[1])
        sets = [[] if f == ["-"] else [int(x) for x in f] for _, f, _ in body]
        mat = ExplicitMatroid(m, sets)
    else:
        raise ValueError(f"unknown matroid kind {kind!r}")
    if len(costs) != mat.ground_size:
        raise ValueError(f"expected {mat.ground_size} costs, found {len(costs)}")
    return mat, costs


def dump_matroid(m: MatroidOracle, costs: Sequence) -> str:
    from .graph import format_cost

    out = []
    if isinstance(m, GraphicMatroid):
        out.append("graphic")
        out.append(f"{m.n_vertices} {m.ground_size} 0")
        out += [f"{u} {v} {format_cost(c)}" for (u, v), c in zip(m.edges, costs)]
        return "\n".join(out) + "\n"
    if isinstance(m, UniformMatroid):
        out.append(f"uniform {m.k} {m.ground_size}")
    elif isinstance(m, PartitionMatroid):
        out.append(f"partition {m.ground_size}")
        for b, cap in enumerate(m.capacity):
            members = [i for i, x in enumerate(m.block_of) if x == b]
            out.append(" ".join(["block", str(cap)] + list(map(str, members))))
    elif isinstance(m, ExplicitMatroid):
        out.append(f"explicit {m.ground_size}")
        for mask in sorted(m.masks):
            members = [i for i in range(m.ground_size) if mask >> i & 1]
            out.append(" ".join(map(str, members)) or "-")
    out.append("costs")
    out.append(" ".join(format_cost(c) for c in costs))
    return "\n".join(out) + "\n"
