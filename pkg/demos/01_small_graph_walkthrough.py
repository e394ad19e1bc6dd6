"""Three vertices, four edges: build the subgraph and answer every fault."""
from arbor_ftp.eft import build_eft_subgraph
from arbor_ftp.faults import certify
from arbor_ftp.graph import format_cost, load_graph

g = load_graph("""
3 4 0
0 1 1   # e1
0 2 5   # e2
1 2 1   # e3
2 1 2   # e4
""")

h = build_eft_subgraph(g)
print("base tree edges:", sorted(h.base_tree.edge_ids))  # 0->1 and 1->2, cost 2

# one replacement path per non-root vertex, avoiding that vertex's tree edge
for p in h.paths:
    print(f"  vertex {p.vertex}: avoid edge {p.fault_edge}, path {list(p.edges)} "
          f"from {p.entry_vertex}, cost {format_cost(p.key.cost)}")

print("H keeps", len(h.edge_set), "of", g.m, "edges")

for f in range(g.m):
    r = certify(g, h, f)
    print(f"fault {f}: H-f answer {sorted(r.interim.edge_ids)} cost {format_cost(r.interim_cost)}"
          f", exact {format_cost(r.exact_cost)}, ratio {r.ratio}")
