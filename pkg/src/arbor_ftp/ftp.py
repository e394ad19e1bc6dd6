"""k-fault-tolerant preservers for min-cost matroid bases.

The preserver is the union of ``k + 1`` successive greedy bases, each taken
from what the earlier ones left behind.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .matroid import (
    Basis,
    Costs,
    GraphicMatroid,
    InstanceTooLarge,
    MatroidOracle,
    find_swap_element,
    greedy_min_cost_basis,
    rank,
)

VERIFY_MAX_GROUND = 18
VERIFY_MAX_K = 3


@dataclass(frozen=True)
class FtpSet:
    layers: tuple[Basis, ...]
    k: int

    @property
    def union(self) -> frozenset[int]:
        return frozenset(e for b in self.layers for e in b)

    def __len__(self) -> int:
        return sum(len(b) for b in self.layers)

    def dumps(self) -> str:
        return "".join(" ".join(map(str, b.elements)) + "\n" for b in self.layers)


def build_ftp(m: MatroidOracle, cost: Costs, k: int) -> FtpSet:
    """Greedy bases ``B_1 .. B_{k+1}``, each over the elements not yet used."""
    if k < 1:
        raise ValueError("k must be at least 1")
    remaining = set(m.ground)
    layers = []
    for _ in range(k + 1):
        b = greedy_min_cost_basis(m, remaining, cost)
        layers.append(b)
        remaining -= set(b)
    return FtpSet(tuple(layers), k)


def load_ftp_set(text: str) -> list[list[int]]:
    layers = []
    for line in text.splitlines():
        body = line.partition("#")[0]
        if line.lstrip().startswith("#"):
            continue
        layers.append([int(x) for x in body.split()])
    return layers


@dataclass(frozen=True)
class FtpCounterexample:
    faults: tuple[int, ...]
    full: Basis
    restricted: Basis


def verify_ftp(m: MatroidOracle, cost: Costs, s: Iterable[int], k: int) -> FtpCounterexample | None:
    """Check every fault set of size at most ``k``: the greedy basis on
    ``S - F`` must match the one on ``E - F`` in cost and size.

    Fault sets are tried by size, then lexicographically; the first failure
    is returned.
    """
    ground = set(m.ground)
    if len(ground) > VERIFY_MAX_GROUND or k > VERIFY_MAX_K:
        raise InstanceTooLarge(
            f"verification needs m <= {VERIFY_MAX_GROUND} and k <= {VERIFY_MAX_K}")
    s = set(s)
    for size in range(k + 1):
        for faults in combinations(sorted(ground), size):
            fs = set(faults)
            full = greedy_min_cost_basis(m, ground - fs, cost)
            part = greedy_min_cost_basis(m, s - fs, cost)
            if len(full) != len(part) or full.cost != part.cost:
                return FtpCounterexample(faults, full, part)
    return None


def simulate_failure_cascade(m: MatroidOracle, ftp: FtpSet, faults: Sequence[int],
                             cost: Costs) -> Basis:
    """Replay ``faults`` one at a time against the layered bases.

    A fault inside layer ``j`` pulls a swap element up from layer ``j + 1``,
    whose departure is in turn treated as a failure there, down to the last
    layer.  Each processed fault uses up the deepest layer.  Returns the
    repaired top layer, a min-cost basis of ``M|(E - faults)``.
    """
    if len(faults) > ftp.k:
        raise ValueError(f"at most {ftp.k} faults supported, got {len(faults)}")
    layers = [set(b) for b in ftp.layers]
    ground = set(m.ground)
    for f in faults:
        if f not in ground:
            continue
        j = next((i for i, b in enumerate(layers) if f in b), None)
        ground.discard(f)
        if j is not None:
            _cascade(m, layers, ground, j, f, cost)
        layers.pop()
    top = sorted(layers[0])
    return Basis(tuple(top), sum(cost[e] for e in top))


def _cascade(m, layers, ground, j, lost, cost):
    # ground already excludes the original fault
    while True:
        level_ground = ground - set().union(*layers[:j]) | {lost}
        if j + 1 >= len(layers):
            layers[j].discard(lost)
            return
        swap = find_swap_element(m, layers[j], lost, layers[j + 1], cost, level_ground)
        layers[j].discard(lost)
        if swap is None:
            return
        layers[j].add(swap)
        lost = swap
        j += 1


def lower_bound_multigraph(n: int, k: int, seed: int, extra_edges: int = 0):
    """Graphic matroid where every edge of a connected graph has ``k`` parallel
    copies of equal cost.

    The base graph is a random spanning tree on ``n`` vertices plus
    ``extra_edges`` further edges; all base costs are distinct.  Element
    ``e * k + c`` is copy ``c`` of base edge ``e``.  Returns
    ``(matroid, costs, base_edges)``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    rng = random.Random(seed)
    base = [(rng.randrange(v), v) for v in range(1, n)]
    spare = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in base]
    base += rng.sample(spare, min(extra_edges, len(spare)))
    base_costs = rng.sample(range(1, 10 * len(base) + 1), len(base))
    edges, costs = [], []
    for (u, v), c in zip(base, base_costs):
        for _ in range(k):
            edges.append((u, v))
            costs.append(c)
    return GraphicMatroid(n, edges), costs, base


def minimum_ftp_size(m: MatroidOracle, cost: Costs, k: int) -> tuple[int, tuple[int, ...]]:
    """Smallest verified k-FTP found by scanning subsets in order of size."""
    ground = sorted(m.ground)
    budget = 2 ** len(ground) * comb(len(ground), min(k, len(ground)))
    if len(ground) > 12 or budget > 10**7:
        raise InstanceTooLarge("exhaustive preserver search limited to 12 elements")
    for size in range(len(ground) + 1):
        for s in combinations(ground, size):
            if verify_ftp(m, cost, s, k) is None:
                return size, s
    raise AssertionError("the full ground set is always a preserver")


def size_report(m: MatroidOracle, ftp: FtpSet) -> dict[str, int]:
    """Preserver size next to ``k * rank(E)`` and ``(k + 1) * rank(E)``."""
    r = rank(m, m.ground)
    return {"size": len(ftp), "rank": r, "k_rank": ftp.k * r, "k1_rank": (ftp.k + 1) * r}
