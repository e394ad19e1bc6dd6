"""Color path edges by the first path that uses them and count charges per pair."""
import math
import random

from arbor_ftp.charging import (
    check_charge_bound,
    check_color_pair_counts,
    check_size_bound,
    color_edges,
    compute_charges,
)
from arbor_ftp.eft import build_eft_subgraph, union_of_paths
from arbor_ftp.graph import Graph

# a unit-cost spine with priced shortcuts; replacement paths share long runs
rng = random.Random(3)
n = 150
triples = [(v - 1, v, 1) for v in range(1, n)]
pairs = set()
while len(pairs) < 2 * n:
    u, v = rng.randrange(n), rng.randrange(1, n)
    if u != v:
        pairs.add((u, v))
triples += [(u, v, rng.randint(2, 3 * abs(u - v) + 2)) for u, v in sorted(pairs)]
g = Graph.from_edges(n, 0, triples)

h = build_eft_subgraph(g, seed=1)
used = len(union_of_paths(h.paths))
print(f"|union of paths| = {used}, bound sqrt(6) n^1.5 = {math.sqrt(6) * n ** 1.5:.0f}")
print("size bound violated:", check_size_bound(h))

ca = color_edges(h)
cl = compute_charges(h, ca)
print("charged pairs:", len(cl.charges), " max colors on one pair:", cl.max_charge())
hist = {}
for colors in cl.charges.values():
    hist[len(colors)] = hist.get(len(colors), 0) + 1
print("pairs by charge count:", dict(sorted(hist.items())))

# show one of the busiest pairs and how its colors split
pair = max(cl.charges, key=lambda p: (len(cl.charges[p]), p))
inter, non = cl.breakdown(pair)
print(f"pair {pair}: intersecting {inter}, non-intersecting {non}")

print("charge bound violation:", check_charge_bound(cl))
print("color over c(c+1)/2:", check_color_pair_counts(cl, ca))
