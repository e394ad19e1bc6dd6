"""Seeded random test instances."""
from __future__ import annotations

import random
from fractions import Fraction

from .graph import COST_SCALE, Graph


def gen_random_graph(n: int, density: float | Fraction, cost_max: int, seed: int) -> Graph:
    """Random rooted digraph on ``n`` vertices with root 0.

    A random spanning arborescence is laid down first so every vertex is
    reachable; every other ordered pair ``(u, v)`` with ``v != 0`` is then
    added with probability ``density``.  Costs are uniform integers in
    ``[1, cost_max]``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 0 < density <= 1:
        raise ValueError("density must lie in (0, 1]")
    rng = random.Random(seed)
    order = list(range(1, n))
    rng.shuffle(order)
    placed = [0]
    pairs = set()
    for v in order:
        pairs.add((rng.choice(placed), v))
        placed.append(v)
    for v in range(1, n):
        for u in range(n):
            if u != v and (u, v) not in pairs and rng.random() < density:
                pairs.add((u, v))
    triples = [(u, v, rng.randint(1, cost_max) * COST_SCALE) for u, v in sorted(pairs)]
    return Graph.from_edges(n, 0, triples)
