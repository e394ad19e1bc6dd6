import random

import pytest
from hypothesis import given, settings, strategies as st

from arbor_ftp.graph import (
    COST_SCALE,
    EdgeIntoRoot,
    Graph,
    MalformedLine,
    NegativeCost,
    Overflow,
    PathKey,
    SelfLoop,
    Unreachable,
    backward_search,
    dump_graph,
    format_cost,
    load_graph,
    parse_cost,
    perturb_costs,
    restore_costs,
    reverse,
    shortest_path,
)
from instances import G1_TEXT, small_random_graph


def test_load_g1():
    g = load_graph(G1_TEXT)
    assert (g.n, g.m, g.root) == (3, 4, 0)
    assert [(e.tail, e.head, e.cost // COST_SCALE) for e in g.edges] == [
        (0, 1, 1), (0, 2, 5), (1, 2, 1), (2, 1, 2)]
    assert [e.id for e in g.in_edges[1]] == [0, 3]


def test_comments_and_blank_lines():
    text = "# a graph\n\n2 1 0   # header\n0 1 2.5  # the only edge\n"
    g = load_graph(text)
    assert g.edges[0].cost == 2_500_000


@pytest.mark.parametrize("text, exc, line", [
    ("3 1 0\n0 1 -1\n", NegativeCost, 2),
    ("3 1 0\n1 0 1\n", EdgeIntoRoot, 2),
    ("3 1 0\n1 1 1\n", SelfLoop, 2),
    ("3 2 0\n0 1 1\n", MalformedLine, 3),
    ("3 1 0\n0 1\n", MalformedLine, 2),
    ("3 1 0\n0 7 1\n", MalformedLine, 2),
    ("3 1 0\n0 1 1.0000001\n", MalformedLine, 2),
    ("3 x 0\n", MalformedLine, 1),
    ("", MalformedLine, 1),
])
def test_parse_errors_name_the_line(text, exc, line):
    with pytest.raises(exc) as info:
        load_graph(text)
    assert info.value.lineno == line


def test_zero_cost_edges_are_fine():
    g = load_graph("2 1 0\n0 1 0\n")
    assert g.edges[0].cost == 0


@pytest.mark.parametrize("text", ["0", "1", "1.5", "0.000001", "123.456789"[:9], "-2.25"])
def test_cost_round_trip(text):
    assert format_cost(parse_cost(text, allow_negative=True)) == text


def test_parse_cost_rejects_negative_by_default():
    with pytest.raises(ValueError):
        parse_cost("-1")


@given(st.integers(0, 200))
@settings(max_examples=60, deadline=None)
def test_dump_load_round_trip(seed):
    g = small_random_graph(seed)
    again = load_graph(dump_graph(g))
    assert again == g


def test_subgraph_dump_tags_original_ids():
    g = load_graph(G1_TEXT)
    text = dump_graph(g, [3, 0])
    assert text.splitlines() == ["3 2 0", "0 1 1 # id=0", "2 1 2 # id=3"]


def test_reverse_keeps_ids_and_costs():
    g = load_graph(G1_TEXT)
    r = reverse(g)
    assert [(e.id, e.tail, e.head, e.cost) for e in r.edges] == [
        (e.id, e.head, e.tail, e.cost) for e in g.edges]
    assert [e.id for e in r.out_edges[1]] == [0, 3]


def test_pathkey_order():
    a = PathKey(5, 2, (1, 4))
    assert a < PathKey(6, 1, (0,))
    assert a < PathKey(5, 3, (0, 1, 2))
    assert a < PathKey(5, 2, (1, 5))
    assert a + PathKey(1, 1, (7,)) == PathKey(6, 3, (1, 4, 7))


def _all_paths(g, sources, target, banned=()):
    """Every simple path from a source to target, by DFS."""
    found = []

    def walk(v, seen, eids, cost):
        if v == target:
            found.append(PathKey(cost, len(eids), tuple(eids)))
            return
        for e in g.out_edges[v]:
            if e.id in banned or e.head in seen:
                continue
            seen.add(e.head)
            eids.append(e.id)
            walk(e.head, seen, eids, cost + e.cost)
            eids.pop()
            seen.discard(e.head)

    for s in sources:
        walk(s, {s}, [], 0)
    return found


@given(st.integers(0, 10_000), st.integers(0, 3))
@settings(max_examples=150, deadline=None)
def test_shortest_path_matches_exhaustive_search(seed, nsrc):
    g = small_random_graph(seed)
    rng = random.Random(seed)
    target = rng.randrange(g.n)
    others = [v for v in range(g.n) if v != target]
    sources = rng.sample(others, min(nsrc + 1, len(others)))
    banned = {e.id for e in g.edges if rng.random() < 0.2}
    paths = _all_paths(g, sources, target, banned)
    if not paths:
        with pytest.raises(Unreachable):
            shortest_path(g, sources, target, banned)
        return
    sp = shortest_path(g, sources, target, banned)
    best = min(paths)
    assert sp.key == best
    assert sp.vertices[-1] == target and sp.source in sources


def test_tie_flag_on_equal_cost_paths():
    g = Graph.from_edges(4, 0, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)])
    assert backward_search(g, 3).tie
    g = Graph.from_edges(4, 0, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 2)])
    assert not backward_search(g, 3).tie


def test_perturbation_preserves_strict_order_and_restores():
    g = small_random_graph(7)
    p = perturb_costs(g, 1)
    assert restore_costs(p) == g
    assert all(e.cost // p.scale == o.cost for e, o in zip(p.edges, g.edges))


def test_perturbation_makes_path_costs_distinct():
    # 10^4 seeded draws on a graph with many equal-cost paths: the two
    # routes 0->1->3 and 0->2->3 never tie after perturbation
    g = Graph.from_edges(4, 0, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1), (0, 3, 2)])
    for seed in range(10_000):
        p = perturb_costs(g, seed)
        c = [e.cost for e in p.edges]
        assert len({c[0] + c[2], c[1] + c[3], c[4]}) == 3


def test_perturbation_on_random_instances_has_no_ties():
    for seed in range(300):
        g = small_random_graph(seed)
        p = perturb_costs(g, seed)
        assert not any(backward_search(p, v).tie for v in range(g.n))


def test_overflow_is_reported():
    g = Graph.from_edges(3, 0, [(0, 1, 1), (0, 2, 1), (1, 2, 1)])
    with pytest.raises(Overflow):
        perturb_costs(g, 0, scale=4)
