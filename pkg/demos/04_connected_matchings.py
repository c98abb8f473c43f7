"""Monochromatic components and connected-matching thresholds.

Run: python demos/04_connected_matchings.py
"""

from conmatch import (
    all_pairs,
    coloured_graph,
    gen_structure_c,
    has_cm_at_least,
    largest_mono_cm,
    mono_components,
)

# A 2-coloured K4: red is a perfect matching, blue the remaining 4-cycle.
g = coloured_graph(
    4,
    2,
    [(0, 1, [0]), (2, 3, [0]), (0, 2, [1]), (0, 3, [1]), (1, 2, [1]), (1, 3, [1])],
)
print("red components:", mono_components(g, 0))
print("blue components:", mono_components(g, 1))
report = largest_mono_cm(g)
print(f"largest red connected matching covers {report.best_cm[0]} vertices"
      f" (two separate edges), blue covers {report.best_cm[1]}")

# The four-block extremal colouring keeps every colour's connected matchings
# small even though the graph is complete.
for m in (1, 2):
    g = gen_structure_c(m, m, m + 1, seed=0)
    report = largest_mono_cm(g)
    print(f"\nfour-block colouring, m={m}: complete graph on {g.n} vertices,"
          f" best connected matching per colour (vertices): {report.best_cm}")
    met, _ = has_cm_at_least(g, [2 * (m + 1)] * 3, k0=3)
    print(f"  threshold {2 * (m + 1)} vertices met: {met}")

# Colours above k0 only count inside non-bipartite components: a red
# five-cycle fires in two-matching mode (odd cycle, order 5), while the
# same subgraph inside a bipartite component would be exempt.
red_cycle = {tuple(sorted((i, (i + 1) % 5))) for i in range(5)}
edges = [(u, v, [1] if (u, v) in red_cycle else [0]) for u, v in all_pairs(5)]
g = coloured_graph(5, 2, edges)
met, witness = has_cm_at_least(g, [6, 4], k0=1, mode="two_matching")
print(f"\nred five-cycle above k0: threshold met: {met},"
      f" witness order {witness.two_matching.order} (the odd cycle itself)")
