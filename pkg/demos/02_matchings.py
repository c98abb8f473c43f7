"""Maximum matchings, 2-matchings and König covers, with brute-force checks.

Run: python demos/02_matchings.py
"""

from conmatch import (
    brute_matching_number,
    brute_two_matching_order,
    is_factor_critical,
    konig_cover,
    matching_number,
    max_matching,
    max_two_matching,
)

# The Petersen graph: outer 5-cycle, spokes, inner pentagram.
petersen = (
    [(i, (i + 1) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
)
m = max_matching(10, petersen)
print(f"Petersen graph: blossom search finds a matching of size {m.size}")
print(f"                exhaustive search agrees: {brute_matching_number(10, petersen)}")
print(f"                witness: {sorted(m.edges)}")

# 2-matchings may use odd cycles, so odd graphs can do better than 2*matching.
c5 = [(i, (i + 1) % 5) for i in range(5)]
t = max_two_matching(5, c5)
print(f"\nfive-cycle: matching covers {2 * matching_number(5, c5)} vertices,"
      f" 2-matching covers {t.order} (odd cycle {t.odd_cycles[0]})")
assert t.order == brute_two_matching_order(5, c5)

# On bipartite graphs there are no odd cycles, so the two notions coincide.
k23 = [(u, 2 + v) for u in range(2) for v in range(3)]
print(f"\nK(2,3): 2-matching order {max_two_matching(5, k23).order} ="
      f" 2 x matching number {matching_number(5, k23)}")

# König duality: a minimum vertex cover the same size as the matching.
cover = konig_cover(5, k23)
print(f"K(2,3): minimum vertex cover {sorted(cover)} (size = matching number)")

# Factor-critical graphs lose a vertex and stay perfectly matchable.
chorded = [(i, (i + 1) % 7) for i in range(7)] + [(0, 3)]
print(f"\nseven-cycle with a chord factor-critical: {is_factor_critical(7, chorded)}")
print(f"four-clique factor-critical: {is_factor_critical(4, [(0,1),(0,2),(0,3),(1,2),(1,3),(2,3)])}"
      " (even order cannot be)")
