"""Coloured graphs, blow-up grounds, complements and the file format.

Run: python demos/01_coloured_graphs.py
"""

from conmatch import (
    COMPLETE,
    blowup_spec,
    build_blowup,
    coloured_graph,
    complement_within,
    induced_subgraph,
    min_ground_degree_deficit,
    parse_graph,
    write_graph,
)

# A blow-up ground graph: part 0 is a clique of 3 (the pattern has a loop
# there), part 1 is an independent set of 2, and the parts are fully joined.
spec = blowup_spec([3, 2], [(0, 0), (0, 1)])
ground = build_blowup(spec)
print(f"ground graph: {ground.n} vertices, {ground.edge_count()} edges")
print(f"part layout:  {ground.part_of}")

# Colour it with two colours: cross edges red (1), intra-part edges blue (2).
layout = spec.part_layout()
edges = [
    (u, v, [0] if layout[u] != layout[v] else [1])
    for (u, v) in ground.edges
]
g = coloured_graph(ground.n, 2, edges, part_of=layout)
print("\nfile format:")
print(write_graph(g), end="")

# Round trip through the parser.
assert parse_graph(write_graph(g)) == g
print("parser round trip: ok")

# Remove one edge and look at the complement within the ground.
smaller = dict(g.edges)
del smaller[(0, 3)]
comp = complement_within(g.with_edges(smaller), spec)
print(f"\nafter deleting (0, 3): complement within the ground = {sorted(comp.edges)}")
print(f"max ground-degree deficit: {min_ground_degree_deficit(g.with_edges(smaller), spec)}")

# Induced subgraphs relabel to dense ids and keep the part structure.
sub = induced_subgraph(g, [0, 2, 3, 4])
print(f"\ninduced on {{0, 2, 3, 4}}: n={sub.n}, parts={sub.part_of}, edges={sorted(sub.edges)}")

# Multicoloured edges are first-class: an edge may carry several colours.
multi = coloured_graph(3, 2, [(0, 1, [0, 1]), (1, 2, [1])])
print(f"\nedge (0,1) colours: {multi.colours(0, 1)} (multicoloured)")
print(f"complement of the multicoloured triangle: {sorted(complement_within(multi, COMPLETE).edges)}")
