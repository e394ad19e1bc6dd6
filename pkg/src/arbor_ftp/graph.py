"""Directed weighted multigraphs with a designated root.

Costs are exact integers: decimal input with at most six fractional digits is
scaled by ``COST_SCALE``.  Shortest paths are made unique by ordering paths on
``(cost, hops, edge ids)`` and, optionally, by a seeded cost perturbation.
"""
from __future__ import annotations

import io
import random
import re
from dataclasses import dataclass, field
from heapq import heappop, heappush
from typing import IO, Iterable, NamedTuple, Sequence, Union

COST_SCALE = 10**6
INT64_MAX = 2**63 - 1

_COST_RE = re.compile(r"^([+-]?)(\d+)(?:\.(\d{1,6}))?$")


class GraphFormatError(ValueError):
    """Base class for edge-list parse errors; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class MalformedLine(GraphFormatError):
    pass


class NegativeCost(GraphFormatError):
    pass


class EdgeIntoRoot(GraphFormatError):
    pass


class SelfLoop(GraphFormatError):
    pass


class Overflow(ArithmeticError):
    pass


class Unreachable(LookupError):
    pass


def parse_cost(text: str, *, allow_negative: bool = False) -> int:
    """Parse a decimal string into a cost scaled by ``COST_SCALE``.

    >>> parse_cost("1.5")
    1500000
    """
    m = _COST_RE.match(text)
    if m is None:
        raise ValueError(f"bad cost {text!r}")
    sign, whole, frac = m.groups()
    value = int(whole) * COST_SCALE + int((frac or "").ljust(6, "0") or 0)
    if sign == "-":
        if not allow_negative and value != 0:
            raise ValueError(f"negative cost {text!r}")
        value = -value
    return value


def format_cost(value: int) -> str:
    """Inverse of :func:`parse_cost`, with trailing zeros dropped."""
    sign = "-" if value < 0 else ""
    whole, frac = divmod(abs(value), COST_SCALE)
    if frac == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:06d}".rstrip("0")


class Edge(NamedTuple):
    id: int
    tail: int
    head: int
    cost: int


@dataclass(frozen=True)
class PathKey:
    """Total order on paths: cost first, then hop count, then edge ids."""

    cost: int
    hops: int
    edge_ids: tuple[int, ...]

    def _tuple(self):
        return (self.cost, self.hops, self.edge_ids)

    def __lt__(self, other: "PathKey") -> bool:
        return self._tuple() < other._tuple()

    def __le__(self, other: "PathKey") -> bool:
        return self._tuple() <= other._tuple()

    def __gt__(self, other: "PathKey") -> bool:
        return self._tuple() > other._tuple()

    def __ge__(self, other: "PathKey") -> bool:
        return self._tuple() >= other._tuple()

    def __add__(self, other: "PathKey") -> "PathKey":
        return PathKey(self.cost + other.cost, self.hops + other.hops,
                       self.edge_ids + other.edge_ids)


@dataclass(frozen=True)
class Graph:
    """Immutable rooted multigraph.  Edge ids are dense: ``edges[i].id == i``.

    ``scale`` is 1 for raw costs and ``K`` for graphs returned by
    :func:`perturb_costs`, where ``cost // K`` recovers the raw cost.
    """

    n: int
    root: int
    edges: tuple[Edge, ...]
    scale: int = 1
    out_edges: tuple[tuple[Edge, ...], ...] = field(init=False, repr=False, compare=False)
    in_edges: tuple[tuple[Edge, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        outs: list[list[Edge]] = [[] for _ in range(self.n)]
        ins: list[list[Edge]] = [[] for _ in range(self.n)]
        for e in self.edges:
            outs[e.tail].append(e)
            ins[e.head].append(e)
        object.__setattr__(self, "out_edges", tuple(map(tuple, outs)))
        object.__setattr__(self, "in_edges", tuple(map(tuple, ins)))

    @classmethod
    def from_edges(cls, n: int, root: int, triples: Iterable[Sequence[int]]) -> "Graph":
        """Build and validate a graph from ``(tail, head, scaled_cost)`` triples."""
        edges = tuple(Edge(i, int(t), int(h), int(c)) for i, (t, h, c) in enumerate(triples))
        g = cls(n, root, edges)
        check_graph(g)
        return g

    @property
    def m(self) -> int:
        return len(self.edges)

    def cost_of(self, edge_ids: Iterable[int]) -> int:
        return sum(self.edges[i].cost for i in edge_ids)


def check_graph(g: Graph) -> None:
    """Raise ``ValueError`` if ``g`` breaks a graph invariant."""
    if g.n < 1 or not 0 <= g.root < g.n:
        raise ValueError(f"bad vertex count / root: n={g.n} root={g.root}")
    for i, e in enumerate(g.edges):
        if e.id != i:
            raise ValueError(f"edge ids must be dense, got {e.id} at position {i}")
        if not (0 <= e.tail < g.n and 0 <= e.head < g.n):
            raise ValueError(f"edge {i}: vertex out of range")
        if e.tail == e.head:
            raise ValueError(f"edge {i}: self-loop")
        if e.head == g.root:
            raise ValueError(f"edge {i}: enters the root")
        if e.cost < 0:
            raise ValueError(f"edge {i}: negative cost")


def _read_text(src: Union[str, bytes, IO]) -> str:
    if isinstance(src, bytes):
        return src.decode("utf-8")
    if isinstance(src, str):
        return src
    data = src.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body, _, comment = raw.partition("#")
        body = body.strip()
        if body:
            yield lineno, body.split(), comment.strip()


def load_graph(src: Union[str, bytes, IO]) -> Graph:
    """Parse the edge-list format (``n m root`` then ``tail head cost`` lines).

    Edge ids are assigned in file order.
    """
    g, _ = _load_edge_list(_read_text(src))
    return g


def _load_edge_list(text: str) -> tuple[Graph, list[str]]:
    lines = list(_content_lines(text))
    if not lines:
        raise MalformedLine(1, "missing header 'n m root'")
    lineno, fields, _ = lines[0]
    if len(fields) != 3 or not all(f.isdigit() for f in fields):
        raise MalformedLine(lineno, "header must be 'n m root'")
    n, m, root = map(int, fields)
    if n < 1 or root >= n:
        raise MalformedLine(lineno, f"bad header n={n} root={root}")
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] + 1 if body else lineno + 1)
        raise MalformedLine(where, f"expected {m} edges, found {len(body)}")
    edges = []
    comments = []
    for i, (lineno, fields, comment) in enumerate(body):
        if len(fields) != 3:
            raise MalformedLine(lineno, "edge must be 'tail head cost'")
        t, h, c = fields
        if not (t.isdigit() and h.isdigit()):
            raise MalformedLine(lineno, "vertex ids must be non-negative integers")
        t, h = int(t), int(h)
        if t >= n or h >= n:
            raise MalformedLine(lineno, f"vertex out of range [0,{n})")
        try:
            cost = parse_cost(c, allow_negative=True)
        except ValueError:
            raise MalformedLine(lineno, f"bad cost {c!r}") from None
        if cost < 0:
            raise NegativeCost(lineno, f"negative cost {c}")
        if t == h:
            raise SelfLoop(lineno, f"self-loop at vertex {t}")
        if h == root:
            raise EdgeIntoRoot(lineno, f"edge {t}->{h} enters the root")
        edges.append(Edge(i, t, h, cost))
        comments.append(comment)
    return Graph(n, root, tuple(edges)), comments


def dump_graph(g: Graph, edge_ids: Iterable[int] | None = None,
               header: Sequence[str] = ()) -> str:
    """Serialize ``g`` (or the subgraph on ``edge_ids``) in edge-list format.

    Subgraph lines carry the original edge id as a trailing ``# id=<k>``.
    """
    out = io.StringIO()
    for line in header:
        out.write(f"# {line}\n")
    if edge_ids is None:
        chosen = g.edges
        tag = False
    else:
        chosen = [g.edges[i] for i in sorted(set(edge_ids))]
        tag = True
    out.write(f"{g.n} {len(chosen)} {g.root}\n")
    for e in chosen:
        cost = format_cost(e.cost // g.scale)
        out.write(f"{e.tail} {e.head} {cost}")
        out.write(f" # id={e.id}\n" if tag else "\n")
    return out.getvalue()


def reverse(g: Graph) -> Graph:
    """Reverse graph: each edge (a, b) becomes (b, a) with the same id and cost.

    The root invariant is not checked on the result.
    """
    return Graph(g.n, g.root, tuple(Edge(e.id, e.head, e.tail, e.cost) for e in g.edges), g.scale)


def restore_costs(g: Graph) -> Graph:
    """Undo :func:`perturb_costs`."""
    if g.scale == 1:
        return g
    return Graph(g.n, g.root, tuple(e._replace(cost=e.cost // g.scale) for e in g.edges))


def default_scale(g: Graph) -> int:
    """Largest power of two K with ``(max cost + 1) * K`` inside int64."""
    top = max((e.cost for e in g.edges), default=0) + 1
    return 1 << ((INT64_MAX // top).bit_length() - 1)


def perturb_costs(g: Graph, seed: int, scale: int | None = None) -> Graph:
    """Return a copy with ``cost' = cost * K + delta``.

    The deltas are distinct draws from ``[1, K // n]``, so any simple path
    (fewer than ``n`` edges) gains less than ``K`` in total and paths with
    different raw costs keep their order.
    """
    if g.scale != 1:
        raise ValueError("graph is already perturbed")
    k = default_scale(g) if scale is None else scale
    m = max(g.m, 1)
    width = k // g.n
    if width < m:
        raise Overflow(f"scale {k} too small for {m} distinct perturbations")
    top = max((e.cost for e in g.edges), default=0)
    if top * k + width > INT64_MAX:
        raise Overflow(f"scaled cost {top}*{k} exceeds 64-bit range")
    rng = random.Random(seed)
    deltas = rng.sample(range(1, width + 1), g.m)
    edges = tuple(e._replace(cost=e.cost * k + d) for e, d in zip(g.edges, deltas))
    return Graph(g.n, g.root, edges, k)


@dataclass(frozen=True)
class ShortestPath:
    key: PathKey
    vertices: tuple[int, ...]

    @property
    def edges(self) -> tuple[int, ...]:
        return self.key.edge_ids

    @property
    def source(self) -> int:
        return self.vertices[0]


class SearchTree:
    """Result of a backward search towards ``target``.

    ``label[v]`` is ``(cost, hops, first_edge)`` of the least path from ``v``
    to ``target`` found so far (``first_edge`` is -1 at the target itself).
    """

    __slots__ = ("g", "target", "label", "settled", "tie", "hit")

    def __init__(self, g: Graph, target: int):
        self.g = g
        self.target = target
        self.label: list = [None] * g.n
        self.settled = [False] * g.n
        self.tie = False
        self.hit: int | None = None

    def path_from(self, v: int) -> ShortestPath:
        lab = self.label[v]
        if lab is None:
            raise Unreachable(f"{self.target} is unreachable from {v}")
        edges = self.g.edges
        verts = [v]
        ids = []
        while v != self.target:
            eid = self.label[v][2]
            ids.append(eid)
            v = edges[eid].head
            verts.append(v)
        return ShortestPath(PathKey(lab[0], lab[1], tuple(ids)), tuple(verts))


def backward_search(g: Graph, target: int, banned: Iterable[int] = (),
                    sources: Sequence[bool] | None = None) -> SearchTree:
    """Dijkstra from ``target`` over the reverse graph of ``g`` minus ``banned``.

    Paths are ordered by :class:`PathKey`.  Two distinct paths from the same
    vertex differ in their first edge, so ``(cost, hops, first_edge)`` is
    enough to compare them once suffixes are canonical.  If ``sources`` (a
    boolean mask) is given the search stops at the first settled source.
    ``tie`` records whether two distinct paths of equal cost were compared.
    """
    banned = banned if isinstance(banned, (set, frozenset)) else set(banned)
    tree = SearchTree(g, target)
    label, settled = tree.label, tree.settled
    in_edges = g.in_edges
    label[target] = (0, 0, -1)
    heap = [(0, 0, -1, target)]
    while heap:
        c, h, first, u = heappop(heap)
        if settled[u]:
            continue
        settled[u] = True
        if sources is not None and sources[u]:
            tree.hit = u
            for w in range(g.n):
                if w != u and sources[w] and label[w] is not None and label[w][0] == c:
                    tree.tie = True
                    break
            return tree
        h1 = h + 1
        for e in in_edges[u]:
            if e.id in banned:
                continue
            w = e.tail
            cand = (c + e.cost, h1, e.id)
            cur = label[w]
            if cur is None:
                label[w] = cand
                heappush(heap, (cand[0], h1, e.id, w))
            elif cand < cur:
                if cur[0] == cand[0]:
                    tree.tie = True
                if not settled[w]:
                    label[w] = cand
                    heappush(heap, (cand[0], h1, e.id, w))
            elif cur[0] == cand[0]:
                tree.tie = True
    return tree


def shortest_path(g: Graph, sources: Iterable[int], target: int,
                  banned: Iterable[int] = ()) -> ShortestPath:
    """Least path (by :class:`PathKey`) from any vertex of ``sources`` to ``target``
    avoiding ``banned`` edges.  Raises :class:`Unreachable` if there is none."""
    mask = [False] * g.n
    for s in sources:
        mask[s] = True
    tree = backward_search(g, target, banned, mask)
    if tree.hit is None:
        raise Unreachable(f"no path to {target}")
    return tree.path_from(tree.hit)
