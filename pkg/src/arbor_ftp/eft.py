"""Sparse 1-edge-fault-tolerant subgraph for approximate min-cost arborescence.

``H`` is a min-cost arborescence ``T`` plus, for every non-root vertex ``v``,
the least path into ``v`` from the root side of ``T`` minus the tree edge
entering ``v``.
"""
from __future__ import annotations

import enum
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .arborescence import Arborescence, Infeasible, min_cost_arborescence
from .graph import (
    Graph,
    PathKey,
    _content_lines,
    _read_text,
    backward_search,
    dump_graph,
    perturb_costs,
)

MAX_REDRAWS = 16


class PathStatus(enum.Enum):
    FOUND = "found"
    UNREACHABLE = "unreachable"


@dataclass(frozen=True)
class TreePartition:
    subtree: frozenset[int]
    rest: frozenset[int]


@dataclass(frozen=True)
class ReplacementPath:
    vertex: int
    fault_edge: int
    status: PathStatus
    entry_vertex: int | None = None
    edges: tuple[int, ...] = ()
    vertices: tuple[int, ...] = ()
    key: PathKey | None = None
    tie: bool = False

    @property
    def found(self) -> bool:
        return self.status is PathStatus.FOUND


@dataclass(frozen=True)
class EftSubgraph:
    """Output of :func:`build_eft_subgraph`.

    ``graph`` is the graph the paths were computed on (perturbed when a seed
    was given).  ``paths[i - 1]`` is the path for the i-th non-root vertex in
    ascending id order.  ``provenance`` maps each path edge to the index of
    the first path containing it.
    """

    graph: Graph
    base_tree: Arborescence
    paths: tuple[ReplacementPath, ...]
    edge_set: frozenset[int]
    provenance: dict[int, int] = field(default_factory=dict)
    seed: int | None = None

    @property
    def path_edges(self) -> frozenset[int]:
        return frozenset(self.provenance)


def children_map(t: Arborescence) -> dict[int, list[int]]:
    kids: dict[int, list[int]] = {}
    for v, p in t.parent.items():
        kids.setdefault(p, []).append(v)
    return kids


def partition(t: Arborescence, v: int, n: int | None = None, _kids=None) -> TreePartition:
    """Split the vertices by deleting the tree edge into ``v``."""
    if v == t.root:
        raise ValueError("the root has no tree edge")
    kids = children_map(t) if _kids is None else _kids
    sub = {v}
    stack = [v]
    while stack:
        for c in kids.get(stack.pop(), ()):
            sub.add(c)
            stack.append(c)
    n = len(t.parent_edge) + 1 if n is None else n
    return TreePartition(frozenset(sub), frozenset(range(n)) - sub)


def replacement_path(g: Graph, t: Arborescence, v: int, _kids=None) -> ReplacementPath:
    """Least path into ``v`` from the root side of ``t``, avoiding ``v``'s tree edge."""
    part = partition(t, v, g.n, _kids)
    fault = t.parent_edge[v]
    mask = [False] * g.n
    for x in part.rest:
        mask[x] = True
    tree = backward_search(g, v, (fault,), mask)
    if tree.hit is None:
        return ReplacementPath(v, fault, PathStatus.UNREACHABLE, tie=tree.tie)
    sp = tree.path_from(tree.hit)
    return ReplacementPath(v, fault, PathStatus.FOUND, sp.source, sp.edges,
                           sp.vertices, sp.key, tree.tie)


def _paths_chunk(args):
    g, t, verts = args
    kids = children_map(t)
    return [replacement_path(g, t, v, kids) for v in verts]


def _all_paths(g: Graph, t: Arborescence, workers: int) -> list[ReplacementPath]:
    verts = [v for v in range(g.n) if v != g.root]
    if workers <= 1 or len(verts) < 2 * workers:
        return _paths_chunk((g, t, verts))
    chunks = [verts[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(workers) as pool:
        parts = list(pool.map(_paths_chunk, [(g, t, c) for c in chunks]))
    by_vertex = {p.vertex: p for part in parts for p in part}
    return [by_vertex[v] for v in verts]


def next_seed(seed: int, attempt: int) -> int:
    return (seed + attempt * 0x9E3779B97F4A7C15) % 2**64


def build_eft_subgraph(g: Graph, seed: int | None = None, workers: int = 1) -> EftSubgraph:
    """Build ``H = T + paths`` for ``g``.

    With ``seed`` set, paths are computed on perturbed costs; if an equal-cost
    tie is seen during any search the perturbation is redrawn from a derived
    seed (the seed actually used is stored on the result).  Raises
    :class:`Infeasible` when ``g`` has no arborescence.
    """
    if seed is None:
        return _build(g, None, workers)
    for attempt in range(MAX_REDRAWS):
        s = next_seed(seed, attempt)
        h = _build(perturb_costs(g, s), s, workers)
        if not any(p.tie for p in h.paths):
            return h
    return h


def _build(work: Graph, seed: int | None, workers: int) -> EftSubgraph:
    t = min_cost_arborescence(work)
    if t is None:
        raise Infeasible("graph has no arborescence rooted at %d" % work.root)
    paths = _all_paths(work, t, workers)
    provenance: dict[int, int] = {}
    for i, p in enumerate(paths, 1):
        for eid in p.edges:
            provenance.setdefault(eid, i)
    edge_set = t.edge_ids | frozenset(provenance)
    return EftSubgraph(work, t, tuple(paths), edge_set, provenance, seed)


def dump_subgraph(h: EftSubgraph) -> str:
    """Edge-list text of H (raw costs, ``# id=<k>`` tags) with the tree recorded
    in a ``# tree`` comment."""
    header = []
    if h.seed is not None:
        header.append(f"seed={h.seed}")
    header.append("tree " + " ".join(map(str, sorted(h.base_tree.edge_ids))))
    return dump_graph(h.graph, h.edge_set, header)


def dump_provenance(h: EftSubgraph) -> str:
    out = io.StringIO()
    out.write("edge_id\tfirst_path_index\n")
    for eid in sorted(h.provenance):
        out.write(f"{eid}\t{h.provenance[eid]}\n")
    return out.getvalue()


def load_subgraph(g: Graph, src) -> EftSubgraph:
    """Read a file written by :func:`dump_subgraph` against the original graph.

    The result has no paths or provenance; it supports fault queries only.
    """
    text = _read_text(src)
    tree_ids: list[int] | None = None
    seed = None
    for raw in text.splitlines():
        s = raw.strip()
        if s.startswith("# tree"):
            tree_ids = [int(x) for x in s[len("# tree"):].split()]
        elif s.startswith("# seed="):
            seed = int(s[len("# seed="):])
    if tree_ids is None:
        raise ValueError("subgraph file has no '# tree' line")
    lines = list(_content_lines(text))
    ids = []
    for lineno, fields, comment in lines[1:]:
        if not comment.startswith("id="):
            raise ValueError(f"line {lineno}: missing '# id=<k>' tag")
        eid = int(comment[3:].split()[0])
        e = g.edges[eid]
        if (e.tail, e.head) != (int(fields[0]), int(fields[1])):
            raise ValueError(f"line {lineno}: edge {eid} does not match the graph")
        ids.append(eid)
    t = Arborescence.from_edges(g, tree_ids)
    return EftSubgraph(g, t, (), frozenset(ids) | t.edge_ids, {}, seed)


def union_of_paths(paths: Iterable[ReplacementPath]) -> frozenset[int]:
    return frozenset(eid for p in paths for eid in p.edges)
