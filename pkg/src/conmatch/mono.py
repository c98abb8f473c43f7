"""Monochromatic components and largest connected (2-)matchings per colour.

A multicoloured edge belongs to every colour subgraph in its mask.  Vertices
without an edge of a colour are singleton components of that colour.  Best
values are vertex counts (twice the matching size for plain matchings), so
thresholds compare directly against them.
"""

from __future__ import annotations

import dataclasses
from typing import Sequence

from .graphs import ColouredGraph, PreconditionError, adjacency, bipartition, connected_components
from .matching import Matching, TwoMatching, max_matching, max_two_matching

MODES = ("matching", "two_matching")
RESTRICTIONS = ("all", "nonbipartite")


@dataclasses.dataclass(frozen=True)
class ComponentInfo:
    """One colour component with its matching statistics."""

    vertices: tuple[int, ...]
    matching_vertices: int
    two_matching_order: int
    bipartite: bool

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclasses.dataclass(frozen=True)
class CMReport:
    """Per-colour component lists plus the per-colour maxima.

    ``best_cm``/``best_cm2`` are the largest vertex counts of a connected
    matching / connected 2-matching in any component of that colour;
    the ``nonbip`` variants restrict to non-bipartite components (0 when no
    such component exists).
    """

    n: int
    k: int
    components: tuple[tuple[ComponentInfo, ...], ...]
    best_cm: tuple[int, ...]
    best_cm2: tuple[int, ...]
    best_nonbip_cm: tuple[int, ...]
    best_nonbip_cm2: tuple[int, ...]

    def best(self, colour: int, mode: str = "matching", restrict: str = "all") -> int:
        if mode not in MODES:
            raise PreconditionError(f"unknown mode {mode!r}")
        if restrict not in RESTRICTIONS:
            raise PreconditionError(f"unknown restriction {restrict!r}")
        if mode == "matching":
            return self.best_cm[colour] if restrict == "all" else self.best_nonbip_cm[colour]
        return self.best_cm2[colour] if restrict == "all" else self.best_nonbip_cm2[colour]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "colours": [
                {
                    "colour": c + 1,
                    "components": [
                        {
                            "vertices": list(info.vertices),
                            "matching_vertices": info.matching_vertices,
                            "two_matching_order": info.two_matching_order,
                            "bipartite": info.bipartite,
                        }
                        for info in self.components[c]
                    ],
                    "best_cm": self.best_cm[c],
                    "best_cm2": self.best_cm2[c],
                    "best_nonbip_cm": self.best_nonbip_cm[c],
                    "best_nonbip_cm2": self.best_nonbip_cm2[c],
                }
                for c in range(self.k)
            ],
        }


@dataclasses.dataclass(frozen=True)
class CMWitness:
    """A threshold-meeting connected (2-)matching of one colour."""

    colour: int
    component: tuple[int, ...]
    vertex_count: int
    matching: Matching | None = None
    two_matching: TwoMatching | None = None

    def to_json_dict(self) -> dict:
        out = {
            "colour": self.colour + 1,
            "component": list(self.component),
            "vertex_count": self.vertex_count,
        }
        if self.matching is not None:
            out["matching"] = sorted(list(e) for e in self.matching.edges)
        if self.two_matching is not None:
            out["edges"] = sorted(list(e) for e in self.two_matching.edges)
            out["odd_cycles"] = [list(c) for c in self.two_matching.odd_cycles]
        return out


def mono_components(g: ColouredGraph, colour: int) -> list[list[int]]:
    """Components of the colour subgraph, singletons included, ordered by
    smallest vertex."""
    edges = g.colour_edges(colour)
    return connected_components(g.n, adjacency(g.n, edges))


def largest_mono_cm(g: ColouredGraph) -> CMReport:
    """Full per-colour analysis: every component's matching number,
    2-matching order and bipartiteness, plus the per-colour maxima."""
    per_colour: list[tuple[ComponentInfo, ...]] = []
    best_cm, best_cm2, best_nb_cm, best_nb_cm2 = [], [], [], []
    for colour in range(g.k):
        edges = g.colour_edges(colour)
        comps = connected_components(g.n, adjacency(g.n, edges))
        infos = []
        b1 = b2 = nb1 = nb2 = 0
        for comp in comps:
            comp_set = set(comp)
            comp_edges = [(u, v) for u, v in edges if u in comp_set]
            mv = 2 * max_matching(g.n, comp_edges).size
            order = max_two_matching(g.n, comp_edges).order
            bip = bipartition(len(comp), adjacency(len(comp), _relabel(comp, comp_edges))) is not None
            infos.append(ComponentInfo(tuple(comp), mv, order, bip))
            b1 = max(b1, mv)
            b2 = max(b2, order)
            if not bip:
                nb1 = max(nb1, mv)
                nb2 = max(nb2, order)
        per_colour.append(tuple(infos))
        best_cm.append(b1)
        best_cm2.append(b2)
        best_nb_cm.append(nb1)
        best_nb_cm2.append(nb2)
    return CMReport(
        g.n,
        g.k,
        tuple(per_colour),
        tuple(best_cm),
        tuple(best_cm2),
        tuple(best_nb_cm),
        tuple(best_nb_cm2),
    )


def _relabel(comp: list[int], edges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    idx = {v: i for i, v in enumerate(comp)}
    return [(idx[u], idx[v]) for u, v in edges]


def has_cm_at_least(
    g: ColouredGraph,
    thresholds: Sequence[int],
    k0: int,
    mode: str = "matching",
) -> tuple[bool, CMWitness | None]:
    """Does some colour reach its vertex-count threshold?

    Colours up to ``k0`` count any component; colours above ``k0`` only count
    non-bipartite components.  Returns the first witness in (colour,
    component) order.
    """
    if mode not in MODES:
        raise PreconditionError(f"unknown mode {mode!r}")
    if len(thresholds) != g.k:
        raise PreconditionError(f"expected {g.k} thresholds, got {len(thresholds)}")
    if any(t <= 0 for t in thresholds):
        raise PreconditionError("thresholds must be positive")
    if not 0 <= k0 <= g.k:
        raise PreconditionError(f"k0 {k0} outside 0..{g.k}")
    for colour in range(g.k):
        edges = g.colour_edges(colour)
        comps = connected_components(g.n, adjacency(g.n, edges))
        for comp in comps:
            comp_set = set(comp)
            comp_edges = [(u, v) for u, v in edges if u in comp_set]
            if colour >= k0:
                local = _relabel(comp, comp_edges)
                if bipartition(len(comp), adjacency(len(comp), local)) is not None:
                    continue
            if mode == "matching":
                witness = max_matching(g.n, comp_edges)
                value = 2 * witness.size
                if value >= thresholds[colour]:
                    return True, CMWitness(colour, tuple(comp), value, matching=witness)
            else:
                witness2 = max_two_matching(g.n, comp_edges)
                if witness2.order >= thresholds[colour]:
                    return True, CMWitness(
                        colour, tuple(comp), witness2.order, two_matching=witness2
                    )
    return False, None
