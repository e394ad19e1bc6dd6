"""Single-edge-fault queries against an EFT subgraph, with exact certification."""
from __future__ import annotations

import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arborescence import Arborescence, min_cost_arborescence
from .eft import EftSubgraph
from .graph import Graph, format_cost


class UnknownEdge(KeyError):
    pass


class CertificationFailure(AssertionError):
    """The approximation sandwich or feasibility agreement was violated."""

    def __init__(self, message: str, interim: Arborescence | None, exact: Arborescence | None):
        super().__init__(message)
        self.interim = interim
        self.exact = exact


@dataclass(frozen=True)
class FaultQueryResult:
    fault: int
    interim: Arborescence | None
    exact: Arborescence | None = None
    certified: bool = False
    t_h_micros: int = 0
    t_g_micros: int = 0

    @property
    def feasible(self) -> bool:
        return self.interim is not None

    @property
    def interim_cost(self) -> int | None:
        return None if self.interim is None else self.interim.total_cost

    @property
    def exact_cost(self) -> int | None:
        return None if self.exact is None else self.exact.total_cost

    @property
    def ratio(self) -> Fraction | None:
        if self.interim is None or self.exact is None:
            return None
        if self.exact.total_cost == 0:
            return Fraction(1) if self.interim.total_cost == 0 else None
        return Fraction(self.interim.total_cost, self.exact.total_cost)


Solver = Callable[[Graph, frozenset], "Arborescence | None"]


def _edmonds(g: Graph, ids) -> Arborescence | None:
    return min_cost_arborescence(g, sorted(ids))


def query_fault(g: Graph, h: EftSubgraph, f: int) -> FaultQueryResult:
    """Min-cost arborescence of ``H - f`` (costs from ``g``).

    A fault outside the base tree leaves the tree optimal, so it is returned
    unchanged.
    """
    if not 0 <= f < g.m:
        raise UnknownEdge(f)
    start = time.perf_counter_ns()
    if f not in h.base_tree.edge_ids:
        interim = h.base_tree.recost(g)
    else:
        interim = min_cost_arborescence(g, sorted(h.edge_set - {f}))
    elapsed = (time.perf_counter_ns() - start) // 1000
    return FaultQueryResult(f, interim, t_h_micros=elapsed)


def certify(g: Graph, h: EftSubgraph, f: int, oracle: Solver | None = None) -> FaultQueryResult:
    """Answer the query and compare against a min-cost arborescence of ``G - f``.

    Raises :class:`CertificationFailure` unless ``exact <= interim <= 2 exact``
    and both sides agree on feasibility.  ``oracle`` replaces the exact solver
    (it receives ``g`` and the allowed edge ids).
    """
    res = query_fault(g, h, f)
    solve = oracle or _edmonds
    start = time.perf_counter_ns()
    exact = solve(g, frozenset(range(g.m)) - {f})
    elapsed = (time.perf_counter_ns() - start) // 1000
    res = FaultQueryResult(f, res.interim, exact, True, res.t_h_micros, elapsed)
    if (res.interim is None) != (exact is None):
        raise CertificationFailure(
            f"fault {f}: feasibility differs (H-f {res.feasible}, G-f {exact is not None})",
            res.interim, exact)
    if exact is not None:
        a, b = res.interim_cost, exact.total_cost
        if not b <= a <= 2 * b:
            raise CertificationFailure(f"fault {f}: interim {a} outside [{b}, {2 * b}]",
                                       res.interim, exact)
    return res


@dataclass(frozen=True)
class SweepSummary:
    rows: tuple[FaultQueryResult, ...]

    @property
    def ratios(self) -> list[Fraction]:
        return [r.ratio for r in self.rows if r.ratio is not None]

    @property
    def max_ratio(self) -> Fraction | None:
        return max(self.ratios, default=None)

    @property
    def mean_ratio(self) -> float | None:
        rs = self.ratios
        return float(sum(rs) / len(rs)) if rs else None

    @property
    def feasibility(self) -> dict[int, bool]:
        return {r.fault: r.feasible for r in self.rows}


def _sweep_chunk(args):
    g, h, faults, oracle = args
    return [certify(g, h, f, oracle) for f in faults]


def sweep_all_faults(g: Graph, h: EftSubgraph, tree_only: bool = False,
                     workers: int = 1, oracle: Solver | None = None) -> SweepSummary:
    """Certify every fault (or only the tree edges) and collect the rows in
    fault-id order."""
    faults = sorted(h.base_tree.edge_ids) if tree_only else list(range(g.m))
    if workers <= 1 or len(faults) < 2 * workers:
        rows = _sweep_chunk((g, h, faults, oracle))
    else:
        chunks = [faults[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            parts = pool.map(_sweep_chunk, [(g, h, c, oracle) for c in chunks])
            rows = sorted((r for part in parts for r in part), key=lambda r: r.fault)
    return SweepSummary(tuple(rows))


REPORT_COLUMNS = ("fault_id", "interim_cost", "exact_cost", "ratio_num", "ratio_den",
                  "t_H_micros", "t_G_micros", "feasible")


def format_report(summary: SweepSummary, timings: bool = True) -> str:
    """TSV report, one row per fault.  Infeasible costs are written as ``NA``."""
    out = io.StringIO()
    out.write("\t".join(REPORT_COLUMNS) + "\n")
    for r in summary.rows:
        ratio = r.ratio
        cells = [
            r.fault,
            "NA" if r.interim_cost is None else format_cost(r.interim_cost),
            "NA" if r.exact_cost is None else format_cost(r.exact_cost),
            "NA" if ratio is None else ratio.numerator,
            "NA" if ratio is None else ratio.denominator,
            r.t_h_micros if timings else 0,
            r.t_g_micros if timings else 0,
            int(r.feasible),
        ]
        out.write("\t".join(map(str, cells)) + "\n")
    return out.getvalue()
