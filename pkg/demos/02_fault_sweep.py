"""Sweep every edge fault of a random graph and look at the ratio spread."""
from collections import Counter

from arbor_ftp.eft import build_eft_subgraph
from arbor_ftp.faults import sweep_all_faults
from arbor_ftp.generate import gen_random_graph

g = gen_random_graph(120, 0.08, 100, seed=7)
h = build_eft_subgraph(g, seed=7)  # perturbed costs, ties redrawn
print(f"G: n={g.n} m={g.m}   H: {len(h.edge_set)} edges")

summary = sweep_all_faults(g, h, tree_only=True)
print("tree faults:", len(summary.rows))
print("max ratio:", summary.max_ratio, " mean:", round(summary.mean_ratio, 4))

# most faults are answered exactly; bucket the rest
buckets = Counter(round(float(r), 2) for r in summary.ratios)
for ratio, count in sorted(buckets.items()):
    print(f"  ratio {ratio:.2f}: {count}")

# querying H-f is much cheaper than re-solving G-f
th = sum(r.t_h_micros for r in summary.rows)
tg = sum(r.t_g_micros for r in summary.rows)
print(f"time on H-f {th / 1000:.1f} ms, on G-f {tg / 1000:.1f} ms")
