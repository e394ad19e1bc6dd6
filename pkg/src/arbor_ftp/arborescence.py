"""Minimum-cost arborescences.

``min_cost_arborescence`` is the contraction algorithm (Chu-Liu/Edmonds, in
Tarjan's O(m log^2 n) form with mergeable heaps and a rollback union-find).
``brute_force_arborescence`` is an independent exact search for tiny graphs.
"""
from __future__ import annotations

from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from typing import Iterable

from .graph import Graph, format_cost, parse_cost


class InstanceTooLarge(ValueError):
    pass


class Infeasible(ValueError):
    """Raised by builders that need an arborescence when none exists."""


@dataclass(frozen=True)
class Arborescence:
    root: int
    parent_edge: dict[int, int]
    parent: dict[int, int]
    total_cost: int

    @classmethod
    def from_edges(cls, g: Graph, edge_ids: Iterable[int]) -> "Arborescence":
        parent_edge, parent = {}, {}
        for eid in sorted(edge_ids):
            e = g.edges[eid]
            parent_edge[e.head] = eid
            parent[e.head] = e.tail
        return cls(g.root, parent_edge, parent, g.cost_of(parent_edge.values()))

    @property
    def edge_ids(self) -> frozenset[int]:
        return frozenset(self.parent_edge.values())

    def recost(self, g: Graph) -> "Arborescence":
        """Same edges, costs taken from ``g``."""
        return Arborescence(self.root, self.parent_edge, self.parent,
                            g.cost_of(self.parent_edge.values()))

    def dumps(self) -> str:
        lines = [f"{v} {self.parent_edge[v]}" for v in sorted(self.parent_edge)]
        lines.append(f"cost={format_cost(self.total_cost)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, g: Graph, text: str) -> "Arborescence":
        ids = []
        cost = None
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("cost="):
                cost = parse_cost(line[5:])
                continue
            v, eid = map(int, line.split())
            if g.edges[eid].head != v:
                raise ValueError(f"edge {eid} does not enter vertex {v}")
            ids.append(eid)
        a = cls.from_edges(g, ids)
        if cost is not None and cost != a.total_cost:
            raise ValueError(f"cost trailer {cost} != {a.total_cost}")
        return a


class _RollbackUF:
    __slots__ = ("e", "st")

    def __init__(self, n: int):
        self.e = [-1] * n
        self.st: list[tuple[int, int]] = []

    def find(self, x: int) -> int:
        e = self.e
        while e[x] >= 0:
            x = e[x]
        return x

    def time(self) -> int:
        return len(self.st)

    def rollback(self, t: int) -> None:
        e, st = self.e, self.st
        while len(st) > t:
            i, v = st.pop()
            e[i] = v

    def join(self, a: int, b: int) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        e = self.e
        if e[a] > e[b]:
            a, b = b, a
        self.st.append((a, e[a]))
        self.st.append((b, e[b]))
        e[a] += e[b]
        e[b] = a
        return True


def min_cost_arborescence(g: Graph, edge_ids: Iterable[int] | None = None) -> Arborescence | None:
    """Min-cost arborescence of ``g`` rooted at ``g.root``, or ``None`` if some
    vertex is unreachable.  ``edge_ids`` restricts the usable edges."""
    n, root = g.n, g.root
    edges = g.edges
    usable = edges if edge_ids is None else [edges[i] for i in edge_ids]
    # per-vertex heap of (reduced cost, edge id) with a lazy additive offset
    heaps: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    offs = [0] * n
    for e in usable:
        heaps[e.head].append((e.cost, e.id))
    for h in heaps:
        heapify(h)

    uf = _RollbackUF(n)
    seen = [-1] * n
    seen[root] = root
    chosen = [-1] * n
    cycles: list[tuple[int, int, list[int]]] = []
    total = 0
    for s in range(n):
        u = s
        path: list[int] = []
        queue: list[int] = []
        while seen[u] < 0:
            heap = heaps[u]
            if not heap:
                return None
            w, eid = heappop(heap)
            w += offs[u]
            offs[u] -= w
            queue.append(eid)
            path.append(u)
            seen[u] = s
            total += w
            u = uf.find(edges[eid].tail)
            if seen[u] == s:
                # contract the cycle just closed
                merged, moff = None, 0
                end = len(queue)
                t = uf.time()
                qi = len(path)
                while True:
                    qi -= 1
                    x = path[qi]
                    merged, moff = _merge(merged, moff, heaps[x], offs[x])
                    if not uf.join(u, x):
                        break
                u = uf.find(u)
                heaps[u], offs[u] = merged, moff
                seen[u] = -1
                cycles.append((u, t, queue[qi:end]))
                del path[qi:]
                del queue[qi:]
        for eid in queue:
            chosen[uf.find(edges[eid].head)] = eid

    for u, t, comp in reversed(cycles):
        uf.rollback(t)
        in_edge = chosen[u]
        for eid in comp:
            chosen[uf.find(edges[eid].head)] = eid
        chosen[uf.find(edges[in_edge].head)] = in_edge

    arb = Arborescence.from_edges(g, (chosen[v] for v in range(n) if v != root))
    assert arb.total_cost == total, (arb.total_cost, total)
    return arb


def _merge(a, aoff, b, boff):
    if a is None:
        return b, boff
    if len(a) < len(b):
        a, aoff, b, boff = b, boff, a, aoff
    shift = boff - aoff
    for key, eid in b:
        heappush(a, (key + shift, eid))
    return a, aoff


def brute_force_arborescence(g: Graph, edge_ids: Iterable[int] | None = None) -> Arborescence | None:
    """Exact search over one in-edge choice per vertex, for ``n <= 10``.

    Choices are tried cheapest first and a branch is dropped once its cost
    plus the cheapest in-edge of every unassigned vertex cannot beat the best
    complete arborescence seen so far.
    """
    if g.n > 10:
        raise InstanceTooLarge(f"brute force needs n <= 10, got {g.n}")
    allowed = set(range(g.m)) if edge_ids is None else set(edge_ids)
    verts = [v for v in range(g.n) if v != g.root]
    if not verts:
        return Arborescence(g.root, {}, {}, 0)
    options = []
    for v in verts:
        ins = sorted((e for e in g.in_edges[v] if e.id in allowed), key=lambda e: (e.cost, e.id))
        if not ins:
            return None
        options.append(ins)
    # lower bound on the cost of vertices k.. onwards
    rest = [0] * (len(verts) + 1)
    for k in range(len(verts) - 1, -1, -1):
        rest[k] = rest[k + 1] + options[k][0].cost

    parent = [-1] * g.n
    pick = [-1] * g.n
    best_cost = None
    best_pick = None

    def closes_cycle(v: int, t: int) -> bool:
        while t != -1:
            if t == v:
                return True
            t = parent[t]
        return False

    def search(k: int, acc: int) -> None:
        nonlocal best_cost, best_pick
        if best_cost is not None and acc + rest[k] >= best_cost:
            return
        if k == len(verts):
            best_cost = acc
            best_pick = [pick[v] for v in verts]
            return
        v = verts[k]
        for e in options[k]:
            if best_cost is not None and acc + e.cost + rest[k + 1] >= best_cost:
                break
            if closes_cycle(v, e.tail):
                continue
            parent[v], pick[v] = e.tail, e.id
            search(k + 1, acc + e.cost)
            parent[v], pick[v] = -1, -1

    search(0, 0)
    if best_pick is None:
        return None
    return Arborescence.from_edges(g, best_pick)


def validate_arborescence(g: Graph, a: Arborescence) -> str | None:
    """Return ``None`` if ``a`` is a spanning arborescence of ``g`` rooted at
    ``g.root``, else a message naming the first violation."""
    if a.root != g.root:
        return f"root mismatch: {a.root} != {g.root}"
    if g.root in a.parent_edge:
        return "root has an incoming edge"
    for v in range(g.n):
        if v != g.root and v not in a.parent_edge:
            return f"uncovered vertex {v}"
    for v, eid in a.parent_edge.items():
        if not 0 <= eid < g.m:
            return f"unknown edge {eid}"
        e = g.edges[eid]
        if e.head != v:
            return f"edge {eid} does not enter vertex {v}"
        if a.parent.get(v) != e.tail:
            return f"parent of {v} disagrees with edge {eid}"
    for v in a.parent_edge:
        seen = set()
        x = v
        while x != g.root:
            if x in seen:
                return f"cycle through vertex {x}"
            seen.add(x)
            if x not in a.parent:
                return f"uncovered vertex {x}"
            x = a.parent[x]
    if a.total_cost != g.cost_of(a.parent_edge.values()):
        return f"total_cost {a.total_cost} != sum of edge costs"
    return None
