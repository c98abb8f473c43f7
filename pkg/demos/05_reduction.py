"""End-to-end reduction: almost-complete colouring -> complete colouring.

Run: python demos/05_reduction.py
"""

import json
import random
from fractions import Fraction

from conmatch import (
    blowup_spec,
    gen_structure_b2,
    gen_structure_c,
    has_cm_at_least,
    largest_mono_cm,
    reduce_blowup,
    reduce_complete,
)
from conmatch.reduction import complement_matching_bound, reduction_params

# Take the four-block colouring of the complete graph on 13 vertices (m=3,
# no colour has a connected matching on 8 vertices), delete one edge, and
# reduce to a complete colouring on 11 vertices with the same ceiling.
m, n = 3, 13
g = gen_structure_c(m, 1, 2 * m, seed=5)
rng = random.Random(5)
victim = sorted(g.edges)[rng.randrange(g.edge_count())]
edges = dict(g.edges)
del edges[victim]
g = g.with_edges(edges)
print(f"input: complete graph on {n} vertices minus {victim}, 3 colours")
print(f"per-colour connected-matching maxima: {largest_mono_cm(g).best_cm}")

params = reduction_params(
    k=3, k0=3,
    alphas=[Fraction(2 * (m + 1), n)] * 3,
    beta=Fraction(n - 2, n),
    eps=Fraction(2, n),
    n=n, N=n - 2,
    mode="matching",
    delta=Fraction(1, n),  # admit one missing edge per vertex
)
print(f"thresholds: {params.thresholds} vertices, complement-matching bound:"
      f" {complement_matching_bound(params)}")

report = reduce_complete(g, params)
print(f"\ncolours added while maximalising: {report.edges_added}")
print(f"complement matching: {sorted(report.complement_matching.edges)}")
print(f"kept vertices: {report.kept_vertices}")
out = report.g_prime
met, _ = has_cm_at_least(out, params.thresholds, params.k0, params.mode)
print(f"output: complete colouring on {out.n} vertices, threshold met: {met}")
print(f"property checks: {report.property_checks}")

# The same pipeline inside a bipartite ground graph.
ground = blowup_spec([4, 5], [(0, 1)])
g = gen_structure_b2(2, z_size=2, seed=1)
params = reduction_params(
    k=2, k0=2, alphas=[Fraction(2, 3)] * 2, beta=Fraction(2, 3),
    eps=Fraction(1, 9), n=9, Ns=[3, 4], delta=Fraction(1, 9),
)
report = reduce_blowup(g, ground, params)
print(f"\nbipartite ground: K(4,5) -> complete colouring of K(3,4),"
      f" parts {report.g_prime.part_of}")

# Reports serialise to JSON with the output graph embedded.
doc = report.to_json_dict()
print(f"report keys: {sorted(doc)}")
print(json.dumps(doc["audit"], indent=2))
