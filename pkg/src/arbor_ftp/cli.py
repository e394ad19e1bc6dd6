"""``arbor-ftp`` command line.

Exit status: 0 on success, 1 when a verification or certification finds a
counterexample, 2 on usage or I/O errors.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .arborescence import Infeasible
from .charging import (
    ShortestPathCache,
    check_charge_bound,
    check_color_pair_counts,
    check_disjoint_uniqueness,
    check_size_bound,
    color_edges,
    compute_charges,
    format_charges,
)
from .eft import build_eft_subgraph, dump_provenance, dump_subgraph, load_subgraph, union_of_paths
from .faults import CertificationFailure, UnknownEdge, certify, format_report, query_fault, sweep_all_faults
from .ftp import (
    build_ftp,
    load_ftp_set,
    lower_bound_multigraph,
    minimum_ftp_size,
    size_report,
    verify_ftp,
)
from .generate import gen_random_graph
from .graph import GraphFormatError, dump_graph, format_cost, load_graph
from .matroid import InstanceTooLarge, dump_matroid, load_matroid

OK, FOUND_COUNTEREXAMPLE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _graph(path: str):
    try:
        return load_graph(_read(path))
    except GraphFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_gen(args) -> int:
    g = gen_random_graph(args.n, Fraction(args.density), args.cost_max, args.seed)
    header = [f"seed={args.seed} n={args.n} density={args.density} cost_max={args.cost_max}"]
    _write(args.out, dump_graph(g, header=header))
    return OK


def cmd_build(args) -> int:
    g = _graph(args.graph)
    try:
        h = build_eft_subgraph(g, args.seed if args.perturb else None, args.workers)
    except Infeasible as exc:
        raise UsageError(str(exc)) from None
    _write(args.out, dump_subgraph(h))
    if args.provenance:
        _write(args.provenance, dump_provenance(h))
    unreachable = sum(not p.found for p in h.paths)
    print(f"n={g.n} m={g.m} |H|={len(h.edge_set)} |paths|={len(union_of_paths(h.paths))} "
          f"unreachable={unreachable} seed={h.seed}", file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return OK


def cmd_query(args) -> int:
    g = _graph(args.graph)
    h = load_subgraph(g, _read(args.subgraph))
    try:
        res = certify(g, h, args.fault) if args.certify else query_fault(g, h, args.fault)
    except UnknownEdge:
        raise UsageError(f"unknown edge {args.fault}") from None
    except CertificationFailure as exc:
        print(f"CERTIFICATION FAILURE: {exc}")
        return FOUND_COUNTEREXAMPLE
    if not res.feasible:
        print(f"fault={args.fault} infeasible")
        return OK
    print(f"fault={args.fault} interim_cost={format_cost(res.interim_cost)}")
    print(res.interim.dumps(), end="")
    if args.certify:
        print(f"exact_cost={format_cost(res.exact_cost)} ratio={res.ratio}")
    return OK


def cmd_sweep(args) -> int:
    g = _graph(args.graph)
    h = load_subgraph(g, _read(args.subgraph))
    try:
        summary = sweep_all_faults(g, h, tree_only=args.tree_only, workers=args.workers)
    except CertificationFailure as exc:
        print(f"CERTIFICATION FAILURE: {exc}")
        return FOUND_COUNTEREXAMPLE
    if args.report:
        _write(args.report, format_report(summary, timings=not args.no_timings))
    infeasible = sum(not ok for ok in summary.feasibility.values())
    mean = summary.mean_ratio
    print(f"faults={len(summary.rows)} infeasible={infeasible} max_ratio={summary.max_ratio} "
          f"mean_ratio={'NA' if mean is None else f'{mean:.6f}'}")
    return OK


def cmd_analyze(args) -> int:
    g = _graph(args.graph)
    perturbed = not args.no_perturb
    try:
        h = build_eft_subgraph(g, args.seed if perturbed else None, args.workers)
    except Infeasible as exc:
        raise UsageError(str(exc)) from None
    sp = ShortestPathCache(h.graph)
    ca = color_edges(h)
    cl = compute_charges(h, ca, sp)
    if args.charging_report:
        _write(args.charging_report, format_charges(cl))
    problems = []
    violation = check_charge_bound(cl)
    if violation:
        problems.append(f"charge bound: pair {violation.pair} {violation.reason} "
                        f"colors={violation.colors}")
    bad_color = check_color_pair_counts(cl, ca)
    if bad_color is not None:
        problems.append(f"color {bad_color} charges too many pairs")
    if sum(cl.pairs_per_color.values()) > 3 * g.n ** 2:
        problems.append(f"{sum(cl.pairs_per_color.values())} charged pairs exceed 3n^2")
    size = check_size_bound(h)
    if size:
        problems.append(f"size bound: {size.union_size} > {size.bound:.1f}")
    if g.n <= 50:
        ce = check_disjoint_uniqueness(h, sp)
        if ce:
            problems.append(f"disjoint stretches differ for pair {ce.pair}")
    print(f"n={g.n} |paths|={len(union_of_paths(h.paths))} bound={6 ** 0.5 * g.n ** 1.5:.1f} "
          f"max_charge={cl.max_charge()} total_charge={cl.total_charge()} "
          f"regime={'perturbed seed=' + str(h.seed) if perturbed else 'deterministic'}")
    for p in problems:
        print(("VIOLATION: " if perturbed else "note: ") + p)
    return FOUND_COUNTEREXAMPLE if problems and perturbed else OK


def _matroid(path):
    try:
        return load_matroid(_read(path))
    except (ValueError, IndexError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_matroid_build(args) -> int:
    m, costs = _matroid(args.matroid)
    ftp = build_ftp(m, costs, args.k)
    _write(args.out, ftp.dumps())
    rep = size_report(m, ftp)
    print(f"|S|={rep['size']} rank={rep['rank']} k*rank={rep['k_rank']} "
          f"(k+1)*rank={rep['k1_rank']}", file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return OK


def cmd_matroid_verify(args) -> int:
    m, costs = _matroid(args.matroid)
    s = {e for layer in load_ftp_set(_read(args.set)) for e in layer}
    try:
        ce = verify_ftp(m, costs, s, args.k)
    except InstanceTooLarge as exc:
        raise UsageError(str(exc)) from None
    if ce is None:
        print(f"ok: |S|={len(s)} is a {args.k}-FTP")
        return OK
    print(f"counterexample F={list(ce.faults)} "
          f"E-F basis cost={format_cost(ce.full.cost)} size={len(ce.full)} "
          f"S-F basis cost={format_cost(ce.restricted.cost)} size={len(ce.restricted)}")
    return FOUND_COUNTEREXAMPLE


def cmd_matroid_lower_bound(args) -> int:
    m, costs, _ = lower_bound_multigraph(args.n, args.k, args.seed, args.extra_edges)
    if args.out:
        _write(args.out, f"# seed={args.seed} n={args.n} k={args.k}\n" + dump_matroid(m, costs))
    ftp = build_ftp(m, costs, args.k)
    ce = verify_ftp(m, costs, ftp.union, args.k) if m.ground_size <= 18 and args.k <= 3 else None
    line = f"ground={m.ground_size} k(n-1)={args.k * (args.n - 1)} |S|={len(ftp)}"
    if m.ground_size <= 12:
        size, _ = minimum_ftp_size(m, costs, args.k)
        line += f" min_verified={size}"
    print(line)
    return FOUND_COUNTEREXAMPLE if ce else OK


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--perturb", action="store_true", help="perturb costs with --seed")

    p = argparse.ArgumentParser(prog="arbor-ftp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="random rooted graph")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--density", default="0.1")
    s.add_argument("--cost-max", type=int, default=100)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("build", parents=[common], help="build the fault-tolerant subgraph")
    s.add_argument("--graph", required=True)
    s.add_argument("--out")
    s.add_argument("--provenance")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("query", parents=[common], help="answer one edge fault")
    s.add_argument("--graph", required=True)
    s.add_argument("--subgraph", required=True)
    s.add_argument("--fault", type=int, required=True)
    s.add_argument("--certify", action="store_true")
    s.set_defaults(func=cmd_query)

    s = sub.add_parser("sweep", parents=[common], help="certify every fault")
    s.add_argument("--graph", required=True)
    s.add_argument("--subgraph", required=True)
    s.add_argument("--report")
    s.add_argument("--tree-only", action="store_true")
    s.add_argument("--no-timings", action="store_true")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("analyze", parents=[common], help="charging-argument diagnostics")
    s.add_argument("--graph", required=True)
    s.add_argument("--charging-report")
    s.add_argument("--no-perturb", action="store_true")
    s.set_defaults(func=cmd_analyze)

    mp = sub.add_parser("matroid", help="matroid preservers")
    msub = mp.add_subparsers(dest="matroid_command", required=True)
    s = msub.add_parser("build", parents=[common])
    s.add_argument("--matroid", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_matroid_build)
    s = msub.add_parser("verify", parents=[common])
    s.add_argument("--matroid", required=True)
    s.add_argument("--set", required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_matroid_verify)
    s = msub.add_parser("lower-bound", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--extra-edges", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_matroid_lower_bound)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"arbor-ftp: {exc}", file=sys.stderr)
        return USAGE
    except ValueError as exc:
        print(f"arbor-ftp: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
