"""Gallai-Edmonds decompositions and maximal extension constructions.

The decomposition splits V into D (vertices missed by some maximum matching),
A (neighbours of D outside D) and C (the rest).  Built on top of it:

* every graph without a matching of size m extends, without changing the
  matching number, to an edge-maximal graph that is a complete blow-up of a
  star (head blob completely joined to everything, leaf cliques);
* the analogue for 2-matching order, where all but at most one leaf is a
  single vertex;
* in a connected graph that is large relative to its matching number, some
  single vertex deletion lowers the matching number.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable

from .graphs import (
    InternalCheckError,
    PreconditionError,
    adjacency,
    all_pairs,
    connected_components,
    edge_key,
)
from .matching import (
    enumerate_maximum_matchings,
    is_factor_critical,
    matching_number,
    matching_number_without,
    max_two_matching_order,
    _normalise,
)


@dataclasses.dataclass(frozen=True)
class GEDecomposition:
    """Partition {A, C, D} plus the components of the subgraph induced on D."""

    A: frozenset[int]
    C: frozenset[int]
    D: frozenset[int]
    d_components: tuple[frozenset[int], ...]


def ge_decompose(n: int, edges: Iterable[tuple[int, int]]) -> GEDecomposition:
    """Decompose via n+1 matching computations: v is in D iff deleting v
    does not lower the matching number."""
    es = _normalise(n, edges)
    nu = matching_number(n, es)
    D = frozenset(v for v in range(n) if matching_number_without(n, es, {v}) == nu)
    B = [v for v in range(n) if v not in D]
    adj = adjacency(n, es)
    A = frozenset(v for v in B if any(w in D for w in adj[v]))
    C = frozenset(v for v in B if v not in A)
    d_edges = [(u, v) for u, v in es if u in D and v in D]
    d_adj = adjacency(n, d_edges)
    comps = tuple(
        frozenset(comp)
        for comp in connected_components(n, d_adj)
        if comp[0] in D
    )
    return GEDecomposition(A, C, D, comps)


@dataclasses.dataclass(frozen=True)
class GETheoremReport:
    """Outcome of checking the decomposition's two structure properties by
    enumerating every maximum matching."""

    n: int
    decomposition: GEDecomposition
    maximum_matchings: int
    covers_and_spreads: bool
    factor_critical_components: bool
    counterexample: frozenset[tuple[int, int]] | None

    @property
    def passed(self) -> bool:
        return self.covers_and_spreads and self.factor_critical_components


def verify_ge_theorem(n: int, edges: Iterable[tuple[int, int]]) -> GETheoremReport:
    """Check, for every maximum matching: C is covered and A is matched into
    pairwise distinct D-components; and every D-component is factor-critical.
    """
    if n > 12:
        raise PreconditionError("maximum-matching enumeration limited to n <= 12")
    es = _normalise(n, edges)
    ge = ge_decompose(n, es)
    comp_of = {}
    for idx, comp in enumerate(ge.d_components):
        for v in comp:
            comp_of[v] = idx

    matchings = enumerate_maximum_matchings(n, es)
    m1_ok = True
    counterexample = None
    for m in matchings:
        mate = {}
        for u, v in m:
            mate[u] = v
            mate[v] = u
        ok = all(c in mate for c in ge.C)
        if ok:
            hit: set[int] = set()
            for a in ge.A:
                partner = mate.get(a)
                if partner is None or partner not in ge.D or comp_of[partner] in hit:
                    ok = False
                    break
                hit.add(comp_of[partner])
        if not ok:
            m1_ok = False
            counterexample = m
            break

    m2_ok = True
    for comp in ge.d_components:
        sub = sorted(comp)
        relabel = {v: i for i, v in enumerate(sub)}
        sub_edges = [
            (relabel[u], relabel[v]) for u, v in es if u in comp and v in comp
        ]
        if not is_factor_critical(len(sub), sub_edges):
            m2_ok = False
            break

    return GETheoremReport(n, ge, len(matchings), m1_ok, m2_ok, counterexample)


# ---------------------------------------------------------------------------
# Star blow-ups and maximal extensions
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class StarBlowup:
    """A complete blow-up of a star on a fixed vertex set.

    ``head`` is the centre blob; each leaf is a clique completely joined to
    the head and to nothing else.  Empty blobs are omitted.  A degenerate
    star (empty head, one leaf) is a single clique.
    """

    n: int
    head: frozenset[int]
    leaves: tuple[frozenset[int], ...]

    def __post_init__(self):
        blobs = [self.head, *self.leaves]
        seen: set[int] = set()
        for blob in blobs:
            if blob & seen:
                raise PreconditionError("star blobs overlap")
            seen |= blob
        if seen != set(range(self.n)):
            raise PreconditionError("star blobs do not partition the vertex set")
        if any(not leaf for leaf in self.leaves):
            raise PreconditionError("empty leaf blob")


def star_edge_set(star: StarBlowup) -> frozenset[tuple[int, int]]:
    """Edges of the blow-up: all pairs touching the head plus intra-blob pairs."""
    out = set()
    head = sorted(star.head)
    for i, h in enumerate(head):
        for h2 in head[i + 1 :]:
            out.add((h, h2))
        for leaf in star.leaves:
            for v in leaf:
                out.add(edge_key(h, v))
    for leaf in star.leaves:
        vs = sorted(leaf)
        for i, u in enumerate(vs):
            for v in vs[i + 1 :]:
                out.add((u, v))
    return frozenset(out)


def _greedy_maximalise(
    n: int, es: list[tuple[int, int]], invariant, target: int
) -> list[tuple[int, int]]:
    """Add every pair whose addition keeps ``invariant`` at ``target``.

    A single lexicographic pass suffices: the invariant is monotone under
    edge addition, so a rejected pair stays rejected.
    """
    current = set(es)
    for u, v in all_pairs(n):
        if (u, v) in current:
            continue
        current.add((u, v))
        if invariant(n, sorted(current)) != target:
            current.remove((u, v))
    return sorted(current)


def maximal_star_extension(n: int, edges: Iterable[tuple[int, int]], m: int) -> StarBlowup:
    """Extend a graph without a matching of size m to an edge-maximal graph
    with the same matching number, returned as its star blow-up structure.

    Head = A of the decomposition of the maximalised graph; leaves = C and
    the D-components.  The extraction is asserted to reproduce the
    maximalised edge set exactly.
    """
    es = _normalise(n, edges)
    nu = matching_number(n, es)
    if nu >= m:
        raise PreconditionError(f"graph already has a matching of size {m}")
    full = _greedy_maximalise(n, es, matching_number, nu)
    ge = ge_decompose(n, full)
    leaves = []
    if ge.C:
        leaves.append(ge.C)
    leaves.extend(ge.d_components)
    star = StarBlowup(n, ge.A, tuple(leaves))
    if star_edge_set(star) != frozenset(full):
        raise InternalCheckError(
            "maximalised graph is not the star blow-up of its decomposition",
            diagnostics={"edges": full, "star": star},
        )
    return star


def maximal_two_matching_extension(
    n: int, edges: Iterable[tuple[int, int]], m: int
) -> StarBlowup:
    """2-matching analogue: extend keeping the maximum 2-matching order, and
    read off the star with head N(D'), one clique blob, and singleton leaves
    D' (the vertices of D isolated inside D)."""
    es = _normalise(n, edges)
    order = max_two_matching_order(n, es)
    if order >= m:
        raise PreconditionError(f"graph already has a 2-matching of order {m}")
    full = _greedy_maximalise(n, es, max_two_matching_order, order)
    ge = ge_decompose(n, full)
    adj = adjacency(n, full)
    d_prime = frozenset(v for comp in ge.d_components if len(comp) == 1 for v in comp)
    a_prime = frozenset(w for v in d_prime for w in adj[v])
    c_prime = frozenset(range(n)) - a_prime - d_prime
    leaves = []
    if c_prime:
        leaves.append(c_prime)
    leaves.extend(frozenset({v}) for v in sorted(d_prime))
    star = StarBlowup(n, a_prime, tuple(leaves))
    if star_edge_set(star) != frozenset(full):
        raise InternalCheckError(
            "maximalised graph is not the expected near-singleton star blow-up",
            diagnostics={"edges": full, "star": star},
        )
    if sum(1 for leaf in star.leaves if len(leaf) > 1) > 1:
        raise InternalCheckError("more than one non-singleton leaf")
    return star


def critical_vertex(n: int, edges: Iterable[tuple[int, int]], m: int) -> int:
    """In a connected graph on >= 2m+2 vertices with matching number <= m,
    return the smallest vertex whose deletion lowers the matching number."""
    es = _normalise(n, edges)
    adj = adjacency(n, es)
    if len(connected_components(n, adj)) != 1:
        raise PreconditionError("graph is not connected")
    if n < 2 * m + 2:
        raise PreconditionError(f"need at least {2 * m + 2} vertices, have {n}")
    nu = matching_number(n, es)
    if nu > m:
        raise PreconditionError(f"matching number {nu} exceeds {m}")
    ge = ge_decompose(n, es)
    covered_by_all = sorted(ge.A | ge.C)
    if not covered_by_all:
        # connected with everything missable would make the graph
        # factor-critical, impossible at this size
        raise PreconditionError("no vertex is covered by every maximum matching")
    u = covered_by_all[0]
    if matching_number_without(n, es, {u}) != nu - 1:
        raise InternalCheckError(f"deleting {u} did not lower the matching number")
    return u
