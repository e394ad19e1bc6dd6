import pytest
from hypothesis import given, settings, strategies as st

from arbor_ftp.arborescence import Arborescence, Infeasible
from arbor_ftp.charging import (
    ChargeLedger,
    MissingProvenance,
    PairClass,
    check_charge_bound,
    check_color_pair_counts,
    check_disjoint_uniqueness,
    check_size_bound,
    color_edges,
    compute_charges,
    format_charges,
)
from arbor_ftp.eft import EftSubgraph, PathStatus, ReplacementPath, build_eft_subgraph, load_subgraph
from arbor_ftp.graph import Graph, load_graph
from instances import G1_TEXT, chain_graph, geometric_graph, small_random_graph


def synthetic(g, routes):
    """EFT subgraph whose paths are the given edge-id routes, in order."""
    paths = []
    for i, route in enumerate(routes, 1):
        verts = (g.edges[route[0]].tail,) + tuple(g.edges[e].head for e in route)
        paths.append(ReplacementPath(verts[-1], -i, PathStatus.FOUND, verts[0],
                                     tuple(route), verts))
    t = Arborescence(g.root, {}, {}, 0)
    edges = frozenset(e for r in routes for e in r)
    return EftSubgraph(g, t, tuple(paths), edges)


def line_fixture():
    # vertices x1..x10 are 0..9, edge i runs i -> i+1
    g = Graph.from_edges(10, 0, [(i, i + 1, 1) for i in range(9)])
    return synthetic(g, [(2, 3, 4), (6, 7), tuple(range(9))])


def test_line_fixture_charges_ten_pairs():
    h = line_fixture()
    ca = color_edges(h)
    assert [e for e, c in sorted(ca.color.items()) if c == 3] == [0, 1, 5, 8]
    assert ca.count(3) == 4
    cl = compute_charges(h, ca)
    pairs = sorted(p for p, cs in cl.charges.items() if 3 in cs)
    assert pairs == [(0, 1), (0, 2), (0, 6), (0, 9), (1, 2), (1, 6), (1, 9),
                     (5, 6), (5, 9), (8, 9)]
    assert cl.pairs_per_color[3] == 10 == 4 * 5 // 2


def test_g1_charging():
    g = load_graph(G1_TEXT)
    h = build_eft_subgraph(g)
    ca = color_edges(h)
    assert ca.color == {1: 1, 3: 1}
    assert (ca.count(1), ca.count(2)) == (2, 0)
    cl = compute_charges(h, ca)
    assert cl.total_charge() == 3 and cl.max_charge() == 1
    assert check_charge_bound(cl) is None
    assert check_color_pair_counts(cl, ca) is None
    assert format_charges(cl).splitlines()[1:] == [
        "0\t1\t1\tnon-intersecting", "0\t2\t1\tnon-intersecting", "2\t1\t1\tintersecting"]


def test_four_colors_on_one_pair_is_a_violation():
    cl = ChargeLedger()
    for i in (1, 2, 3, 4):
        cl.charges[(0, 5)].add(i)
        cl.classification[((0, 5), i)] = PairClass.INTERSECTING
    v = check_charge_bound(cl)
    assert v.pair == (0, 5) and v.colors == (1, 2, 3, 4)


@pytest.mark.parametrize("classes, why", [
    ((PairClass.NON_INTERSECTING, PairClass.NON_INTERSECTING), "non-intersecting"),
    ((PairClass.INTERSECTING,) * 3, "intersecting"),
])
def test_breakdown_violations(classes, why):
    cl = ChargeLedger()
    for i, c in enumerate(classes, 1):
        cl.charges[(1, 2)].add(i)
        cl.classification[((1, 2), i)] = c
    assert why in check_charge_bound(cl).reason


def test_color_pair_count_violation():
    h = line_fixture()
    ca = color_edges(h)
    cl = compute_charges(h, ca)
    cl.pairs_per_color[3] += 1
    assert check_color_pair_counts(cl, ca) == 3


def test_two_disjoint_stretches_are_flagged():
    # 0 -> 3 directly is the shortest route; two distinct detours avoid it
    g = Graph.from_edges(4, 0, [(0, 3, 1), (0, 1, 5), (1, 3, 5), (0, 2, 5), (2, 3, 5)])
    h = synthetic(g, [(1, 2), (3, 4)])
    ce = check_disjoint_uniqueness(h)
    assert ce.pair == (0, 3)
    assert ce.first == (1, (1, 2)) and ce.second == (2, (3, 4))


def test_subgraph_without_paths_is_rejected():
    g = load_graph(G1_TEXT)
    h = build_eft_subgraph(g)
    from arbor_ftp.eft import dump_subgraph
    with pytest.raises(MissingProvenance):
        color_edges(load_subgraph(g, dump_subgraph(h)))


@given(st.integers(0, 100_000))
@settings(max_examples=150, deadline=None)
def test_charging_invariants_on_perturbed_builds(seed):
    g = small_random_graph(seed)
    try:
        h = build_eft_subgraph(g, seed)
    except Infeasible:
        return
    ca = color_edges(h)
    cl = compute_charges(h, ca)
    assert check_charge_bound(cl) is None
    assert check_color_pair_counts(cl, ca) is None
    assert check_size_bound(h) is None
    assert check_disjoint_uniqueness(h) is None
    # every charged stretch starts and ends on an edge of its own color
    for (pair, i), stretch in cl.subpaths.items():
        assert ca.color[stretch[0]] == i and ca.color[stretch[-1]] == i


@pytest.mark.parametrize("make", [
    lambda s: chain_graph(50, 2, s),
    lambda s: geometric_graph(50, 4, s),
])
def test_charging_invariants_mid_sized(make):
    for seed in range(4):
        g = make(seed)
        h = build_eft_subgraph(g, seed)
        ca = color_edges(h)
        cl = compute_charges(h, ca)
        assert check_charge_bound(cl) is None
        assert check_color_pair_counts(cl, ca) is None
        assert check_disjoint_uniqueness(h) is None


@pytest.mark.parametrize("seed", range(100))
def test_disjoint_stretches_unique_on_random_builds(seed):
    g = (chain_graph, geometric_graph)[seed % 2](10 + seed % 41, 2 + seed % 3, seed)
    h = build_eft_subgraph(g, seed)
    assert check_disjoint_uniqueness(h) is None


@given(st.integers(0, 100_000))
@settings(max_examples=100, deadline=None)
def test_color_counts_sum_to_union_and_pairs_bounded(seed):
    g = small_random_graph(seed)
    try:
        h = build_eft_subgraph(g, seed)
    except Infeasible:
        return
    from arbor_ftp.eft import union_of_paths
    ca = color_edges(h)
    assert sum(ca.per_color_count.values()) == len(union_of_paths(h.paths))
    cl = compute_charges(h, ca)
    assert sum(cl.pairs_per_color.values()) <= 3 * g.n ** 2


def test_deterministic_regime_is_informational():
    # raw costs can tie; the bound is reported, not required
    worst = 0
    for seed in range(40):
        h = build_eft_subgraph(chain_graph(40, 2, seed))
        worst = max(worst, compute_charges(h, color_edges(h)).max_charge())
    print(f"raw-cost max charge over 40 builds: {worst}")
