"""Gallai-Edmonds decompositions, maximal extensions, critical vertices.

Run: python demos/03_decompositions.py
"""

from conmatch import (
    critical_vertex,
    ge_decompose,
    maximal_star_extension,
    maximal_two_matching_extension,
    matching_number,
    star_edge_set,
    verify_ge_theorem,
)


def show(name, n, edges):
    ge = ge_decompose(n, edges)
    print(f"{name}: A={sorted(ge.A)} C={sorted(ge.C)} D={sorted(ge.D)}"
          f" components of D: {[sorted(c) for c in ge.d_components]}")


show("path a-b-c", 3, [(0, 1), (1, 2)])
show("four-clique", 4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
show("five-cycle ", 5, [(i, (i + 1) % 5) for i in range(5)])

# The decomposition theorem, checked by enumerating every maximum matching.
report = verify_ge_theorem(5, [(i, (i + 1) % 5) for i in range(5)])
print(f"\nfive-cycle: {report.maximum_matchings} maximum matchings, "
      f"cover/spread ok: {report.covers_and_spreads}, "
      f"factor-critical components: {report.factor_critical_components}")

# Any graph without a matching of size m extends to an edge-maximal graph
# with the same matching number; the result is a complete blow-up of a star.
star_graph = [(0, i) for i in range(1, 6)]
star = maximal_star_extension(6, star_graph, 2)
print(f"\nstar with 5 leaves, bound 2: head={sorted(star.head)}, "
      f"leaves={[sorted(l) for l in star.leaves]} (already maximal)")

two_triangles = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
star = maximal_star_extension(6, two_triangles, 3)
print(f"two triangles, bound 3: head={sorted(star.head)}, "
      f"leaves={[sorted(l) for l in star.leaves]}")
print(f"extension preserves the matching number: "
      f"{matching_number(6, sorted(star_edge_set(star)))} == {matching_number(6, two_triangles)}")

# The 2-matching variant: all but at most one leaf is a single vertex.
triangle_plus_isolated = [(0, 1), (1, 2), (0, 2)]
star = maximal_two_matching_extension(4, triangle_plus_isolated, 4)
print(f"\ntriangle + isolated vertex, order bound 4: head={sorted(star.head)}, "
      f"leaves={[sorted(l) for l in star.leaves]}")

# In a connected graph much larger than its matching number, deleting one
# well-chosen vertex lowers the matching number.
u = critical_vertex(6, star_graph, 1)
print(f"\nstar with 5 leaves: deleting vertex {u} kills every matching")
