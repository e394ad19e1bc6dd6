"""Layered greedy bases as a k-fault-tolerant preserver, and its lower bound."""
from arbor_ftp.ftp import (
    build_ftp,
    lower_bound_multigraph,
    minimum_ftp_size,
    simulate_failure_cascade,
    size_report,
    verify_ftp,
)
from arbor_ftp.matroid import GraphicMatroid, greedy_min_cost_basis

# spanning trees of K4 with costs
edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
costs = [4, 1, 3, 2, 6, 5]
m = GraphicMatroid(4, edges)

for k in (1, 2):
    s = build_ftp(m, costs, k)
    print(f"k={k}: layers {[list(b) for b in s.layers]}  report {size_report(m, s)}")
    print("   preserver holds:", verify_ftp(m, costs, s.union, k) is None)

# replay two failures: each one pulls a swap element up from the next layer
s = build_ftp(m, costs, 2)
faults = [1, 3]
top = simulate_failure_cascade(m, s, faults, costs)
direct = greedy_min_cost_basis(m, set(m.ground) - set(faults), costs)
print(f"after failing {faults}: cascade {list(top)} cost {top.cost}, direct cost {direct.cost}")

# every edge doubled: no 2-FTP can be smaller than 2 (n - 1)
lb, lb_costs, _ = lower_bound_multigraph(3, 2, seed=0)
size, witness = minimum_ftp_size(lb, lb_costs, 2)
print(f"multigraph n=3 k=2: smallest preserver {size} elements {witness}")
