"""Reduce an almost-complete coloured graph (or almost-blow-up) to a complete
colouring with the same connected-matching ceilings.

Pipeline: check the hypotheses, maximalise the colouring (adding colours to
ground pairs whenever that creates no over-threshold monochromatic connected
(2-)matching), take a maximum matching of the ground complement, delete its
vertices, trim every part down to its target size and resolve multicoloured
edges to single colours.  Every claimed property is re-verified directly on
the output rather than trusted.

All threshold arithmetic is exact: parameters are rationals, and the derived
integer thresholds (per-colour vertex counts and the degree-deficit budget)
are floored once at parameter construction.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import Sequence

from .graphs import (
    COMPLETE,
    BlowupSpec,
    ColouredGraph,
    Ground,
    GroundComplement,
    InternalCheckError,
    PreconditionError,
    _check_ground,
    adjacency,
    bipartition,
    blowup_to_json,
    complement_within,
    connected_components,
    edge_key,
    ground_pairs,
    is_ground_pair,
    min_ground_degree_deficit,
    write_graph,
)
from .matching import Matching, matching_number, max_matching, max_two_matching_order
from .mono import MODES, CMReport, has_cm_at_least, largest_mono_cm


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class ReductionParams:
    """Thresholds and sizes driving a reduction run.

    ``alphas`` are per-colour rational threshold coefficients; colour ``l``
    forbids connected (2-)matchings on at least ``floor(alphas[l] * n)``
    vertices (restricted to non-bipartite components for colours above
    ``k0``).  ``targets`` is the single output size N (complete case) or the
    per-part sizes N_1..N_s (blow-up case).  ``delta`` defaults to the
    regime-appropriate formula; it may be overridden to admit lossier inputs,
    in which case the complement-matching bound scales with it.
    """

    k: int
    k0: int
    s: int
    alphas: tuple[Fraction, ...]
    beta: Fraction
    eps: Fraction
    n: int
    targets: tuple[int, ...]
    mode: str
    kind: str
    delta: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("complete", "blowup"):
            raise PreconditionError(f"unknown kind {self.kind!r}")
        if self.mode not in MODES:
            raise PreconditionError(f"unknown mode {self.mode!r}")
        if not 1 <= self.k <= 16:
            raise PreconditionError("colour count outside 1..16")
        if not 0 <= self.k0 <= self.k:
            raise PreconditionError("k0 outside 0..k")
        if len(self.alphas) != self.k:
            raise PreconditionError("need one alpha per colour")
        if any(a <= 0 for a in self.alphas):
            raise PreconditionError("alphas must be positive")
        if self.n < 1:
            raise PreconditionError("n must be positive")
        if self.eps <= 0:
            raise PreconditionError("eps must be positive")
        if self.beta < self.alpha:
            raise PreconditionError("beta must be at least min(alphas)")
        if self.kind == "complete":
            if self.s != 1 or len(self.targets) != 1:
                raise PreconditionError("complete case has s = 1 and a single target N")
        elif len(self.targets) != self.s:
            raise PreconditionError("blow-up case needs one target per part")
        if any(t < 0 for t in self.targets):
            raise PreconditionError("negative target size")
        if any(t > self.beta * self.n for t in self.targets):
            raise PreconditionError("targets must satisfy N_i <= beta * n")
        if self.delta is not None and self.delta <= 0:
            raise PreconditionError("delta must be positive")

    @property
    def alpha(self) -> Fraction:
        return min(self.alphas)

    @property
    def delta_value(self) -> Fraction:
        return self.delta if self.delta is not None else delta_threshold(self)

    @property
    def thresholds(self) -> tuple[int, ...]:
        return tuple(int(a * self.n) for a in self.alphas)

    @property
    def delta_n(self) -> int:
        return int(self.delta_value * self.n)

    @property
    def eps_n(self) -> Fraction:
        return self.eps * self.n

    def to_json_dict(self) -> dict:
        def frac(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        out = {
            "k": self.k,
            "k0": self.k0,
            "s": self.s,
            "alphas": [frac(a) for a in self.alphas],
            "beta": frac(self.beta),
            "eps": frac(self.eps),
            "n": self.n,
            "mode": self.mode,
        }
        if self.kind == "complete":
            out["N"] = self.targets[0]
        else:
            out["Ns"] = list(self.targets)
        if self.delta is not None:
            out["delta"] = frac(self.delta)
        return out


def reduction_params(
    *,
    k: int,
    k0: int,
    alphas: Sequence,
    beta,
    eps,
    n: int,
    N: int | None = None,
    Ns: Sequence[int] | None = None,
    s: int | None = None,
    mode: str = "matching",
    delta=None,
) -> ReductionParams:
    """Keyword factory; exactly one of ``N`` (complete) and ``Ns`` (blow-up)."""
    if (N is None) == (Ns is None):
        raise PreconditionError("give exactly one of N and Ns")
    kind = "complete" if N is not None else "blowup"
    targets = (int(N),) if N is not None else tuple(int(x) for x in Ns)
    s_val = 1 if kind == "complete" else (s if s is not None else len(targets))
    return ReductionParams(
        k=k,
        k0=k0,
        s=s_val,
        alphas=tuple(Fraction(a) for a in alphas),
        beta=Fraction(beta),
        eps=Fraction(eps),
        n=int(n),
        targets=targets,
        mode=mode,
        kind=kind,
        delta=None if delta is None else Fraction(delta),
    )


def params_from_json(obj: dict) -> ReductionParams:
    try:
        return reduction_params(
            k=int(obj["k"]),
            k0=int(obj["k0"]),
            alphas=[Fraction(a) for a in obj["alphas"]],
            beta=Fraction(obj["beta"]),
            eps=Fraction(obj["eps"]),
            n=int(obj["n"]),
            N=obj.get("N"),
            Ns=obj.get("Ns"),
            s=obj.get("s"),
            mode=obj.get("mode", "matching"),
            delta=Fraction(obj["delta"]) if "delta" in obj else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"bad params JSON: {exc}") from exc


def delta_threshold(params: ReductionParams) -> Fraction:
    """The slack-per-vertex formula: eps/2 * (alpha / (16 beta))^(2k) in the
    complete case, eps/2 * (alpha / (56 s^3 beta))^(2k) for blow-ups."""
    if params.kind == "complete":
        ratio = params.alpha / (16 * params.beta)
    else:
        ratio = params.alpha / (56 * params.s**3 * params.beta)
    return params.eps / 2 * ratio ** (2 * params.k)


def complement_matching_bound(params: ReductionParams) -> int:
    """Ceiling on the ground-complement matching size after maximalisation:
    floor((16 beta/alpha)^(2k) * delta * n), with 56 s^3 in the blow-up case.
    Equals floor(eps*n/2) exactly when delta is the default formula."""
    if params.kind == "complete":
        ratio = 16 * params.beta / params.alpha
    else:
        ratio = 56 * params.s**3 * params.beta / params.alpha
    return int(ratio ** (2 * params.k) * params.delta_value * params.n)


# ---------------------------------------------------------------------------
# Maximalisation
# ---------------------------------------------------------------------------


def _addition_safe(
    n: int,
    colour_adj: list[set[int]],
    u: int,
    v: int,
    threshold: int,
    nonbip_only: bool,
    mode: str,
) -> bool:
    """Would adding a colour edge u-v keep that colour below its threshold?

    Only the merged component containing u and v can change, so the check is
    local to it.
    """
    comp = {u, v}
    stack = [u, v]
    while stack:
        x = stack.pop()
        for y in colour_adj[x]:
            if y not in comp:
                comp.add(y)
                stack.append(y)
    comp_edges = [(x, y) for x in comp for y in colour_adj[x] if x < y]
    comp_edges.append(edge_key(u, v))
    if nonbip_only:
        order = sorted(comp)
        idx = {x: i for i, x in enumerate(order)}
        local = [(idx[a], idx[b]) for a, b in comp_edges]
        if bipartition(len(order), adjacency(len(order), local)) is not None:
            return True
    if mode == "matching":
        value = 2 * matching_number(n, comp_edges)
    else:
        value = max_two_matching_order(n, comp_edges)
    return value < threshold


def maximalize(g: ColouredGraph, ground: Ground, params: ReductionParams) -> ColouredGraph:
    """Add colours to ground pairs until no further addition is possible
    without creating an over-threshold monochromatic connected (2-)matching.

    Deterministic: (pair, colour) in lexicographic order, repeated passes
    until a full pass adds nothing.
    """
    _check_ground(g, ground)
    if g.k != params.k:
        raise PreconditionError("graph colour count does not match params")
    met, witness = has_cm_at_least(g, params.thresholds, params.k0, params.mode)
    if met:
        raise PreconditionError(
            "input already has an over-threshold monochromatic connected matching",
            witness=witness,
        )
    masks = dict(g.edges)
    colour_adj: list[list[set[int]]] = [
        [set() for _ in range(g.n)] for _ in range(g.k)
    ]
    for (a, b), m in masks.items():
        for c in range(g.k):
            if m >> c & 1:
                colour_adj[c][a].add(b)
                colour_adj[c][b].add(a)
    pairs = list(ground_pairs(ground, g.n))
    thresholds = params.thresholds
    changed = True
    while changed:
        changed = False
        for (u, v) in pairs:
            cur = masks.get((u, v), 0)
            for c in range(g.k):
                if cur >> c & 1:
                    continue
                if _addition_safe(
                    g.n, colour_adj[c], u, v, thresholds[c], c >= params.k0, params.mode
                ):
                    cur |= 1 << c
                    masks[(u, v)] = cur
                    colour_adj[c][u].add(v)
                    colour_adj[c][v].add(u)
                    changed = True
    return g.with_edges(masks)


# ---------------------------------------------------------------------------
# Component structure detection and vertex types
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class ComponentStructure:
    """Certificate that a colour component matches one of the two templates:
    a complete star blow-up intersected with the ground, or a complete
    bipartite graph intersected with the ground."""

    kind: str  # "star" | "bipartite"
    vertices: tuple[int, ...]
    head: frozenset[int] = frozenset()
    blobs: tuple[frozenset[int], ...] = ()
    left: frozenset[int] = frozenset()
    right: frozenset[int] = frozenset()


def _lex_subsets(items: list[int]):
    """Subsets of a sorted list in lexicographic (sorted-tuple) order."""

    def rec(start: int, prefix: list[int]):
        yield tuple(prefix)
        for i in range(start, len(items)):
            prefix.append(items[i])
            yield from rec(i + 1, prefix)
            prefix.pop()

    yield from rec(0, [])


def _star_certificate(
    comp: list[int],
    colour_adj: dict[int, set[int]],
    gpair,
) -> tuple[frozenset[int], tuple[frozenset[int], ...]] | None:
    """Match the star template on a component; head is the lexicographically
    smallest valid head set (the clique case then gets an empty head)."""
    comp_set = set(comp)
    defects = [
        (u, v)
        for i, u in enumerate(comp)
        for v in comp[i + 1 :]
        if gpair(u, v) and v not in colour_adj[u]
    ]
    defective = set(v for e in defects for v in e)
    dom = [v for v in comp if v not in defective]

    def blobs_for(head: set[int]) -> tuple[frozenset[int], ...] | None:
        rest = [v for v in comp if v not in head]
        idx = {v: i for i, v in enumerate(rest)}
        parent = list(range(len(rest)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for v in rest:
            for w in colour_adj[v]:
                if w in idx and v < w:
                    parent[find(idx[v])] = find(idx[w])
        for u, v in defects:
            if find(idx[u]) == find(idx[v]):
                return None
        groups: dict[int, list[int]] = {}
        for v in rest:
            groups.setdefault(find(idx[v]), []).append(v)
        return tuple(frozenset(grp) for _, grp in sorted(groups.items()))

    if blobs_for(set(dom)) is None:
        return None  # the largest candidate fails, so no head works
    if len(dom) > 16:
        blobs = blobs_for(set(dom))
        return frozenset(dom), blobs
    for candidate in _lex_subsets(dom):
        blobs = blobs_for(set(candidate))
        if blobs is not None:
            return frozenset(candidate), blobs
    raise InternalCheckError("unreachable: the full dominating set is valid")


def _bipartite_certificate(
    comp: list[int],
    colour_adj: dict[int, set[int]],
    gpair,
) -> tuple[frozenset[int], frozenset[int]] | None:
    """Match the complete-bipartite template on a (connected) component."""
    idx = {v: i for i, v in enumerate(comp)}
    local_edges = [
        (idx[u], idx[w]) for u in comp for w in colour_adj[u] if u < w and w in idx
    ]
    side = bipartition(len(comp), adjacency(len(comp), local_edges))
    if side is None:
        return None
    left = frozenset(v for v in comp if side[idx[v]] == 0)
    right = frozenset(comp) - left
    for u in left:
        for v in right:
            if gpair(u, v) and v not in colour_adj[u]:
                return None
    return left, right


def classify_components(
    g: ColouredGraph, ground: Ground, k0: int
) -> tuple[dict[int, ComponentStructure], ...]:
    """For every colour, certify each non-singleton component against the
    star template (any colour) or the complete-bipartite template (only
    colours above ``k0``).  Failure signals a maximalisation bug."""
    layout = g.part_of
    if ground != COMPLETE and layout is None:
        layout = ground.part_layout()

    def gpair(u: int, v: int) -> bool:
        return is_ground_pair(ground, u, v, layout)

    out: list[dict[int, ComponentStructure]] = []
    for colour in range(g.k):
        edges = g.colour_edges(colour)
        colour_adj: dict[int, set[int]] = {v: set() for v in range(g.n)}
        for u, v in edges:
            colour_adj[u].add(v)
            colour_adj[v].add(u)
        comps = connected_components(g.n, adjacency(g.n, edges))
        certified: dict[int, ComponentStructure] = {}
        for comp in comps:
            if len(comp) == 1:
                continue
            star = _star_certificate(comp, colour_adj, gpair)
            if star is not None:
                head, blobs = star
                certified[comp[0]] = ComponentStructure(
                    "star", tuple(comp), head=head, blobs=blobs
                )
                continue
            if colour >= k0:
                bip = _bipartite_certificate(comp, colour_adj, gpair)
                if bip is not None:
                    left, right = bip
                    certified[comp[0]] = ComponentStructure(
                        "bipartite", tuple(comp), left=left, right=right
                    )
                    continue
            raise InternalCheckError(
                f"colour {colour} component {comp} matches no structural template",
                diagnostics={"colour": colour, "component": comp},
            )
        out.append(certified)
    return tuple(out)


@dataclasses.dataclass(frozen=True)
class TypeSignature:
    """Per-colour component identifier and role, plus the blow-up part.

    Component identifiers are ("I", colour) for vertices without edges of
    that colour and ("U", colour, min_vertex) otherwise.  Roles: H head /
    T tail of a star component, L / R sides of a bipartite component,
    I isolated.
    """

    components: tuple[tuple, ...]
    roles: tuple[str, ...]
    part: int

    def key(self) -> tuple:
        return (self.components, self.roles, self.part)


def type_census(
    g: ColouredGraph, ground: Ground, k0: int
) -> dict[TypeSignature, tuple[int, ...]]:
    """Group vertices by type signature; deterministic insertion order."""
    structures = classify_components(g, ground, k0)
    comp_of: list[dict[int, int]] = []
    for colour in range(g.k):
        edges = g.colour_edges(colour)
        lookup: dict[int, int] = {}
        for comp in connected_components(g.n, adjacency(g.n, edges)):
            if len(comp) > 1:
                for v in comp:
                    lookup[v] = comp[0]
        comp_of.append(lookup)

    census: dict[TypeSignature, list[int]] = {}
    for u in range(g.n):
        comps: list[tuple] = []
        roles: list[str] = []
        for colour in range(g.k):
            cid = comp_of[colour].get(u)
            if cid is None:
                comps.append(("I", colour))
                roles.append("I")
                continue
            comps.append(("U", colour, cid))
            cert = structures[colour][cid]
            if cert.kind == "star":
                roles.append("H" if u in cert.head else "T")
            else:
                roles.append("L" if u in cert.left else "R")
        part = g.part_of[u] if g.part_of is not None else 0
        sig = TypeSignature(tuple(comps), tuple(roles), part)
        census.setdefault(sig, []).append(u)
    return {sig: tuple(vs) for sig, vs in census.items()}


def type_of(g: ColouredGraph, u: int, ground: Ground, k0: int) -> TypeSignature:
    census = type_census(g, ground, k0)
    for sig, vs in census.items():
        if u in vs:
            return sig
    raise PreconditionError(f"vertex {u} outside 0..{g.n - 1}")


# ---------------------------------------------------------------------------
# The reduction itself
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class ReductionReport:
    """Audit trail of a reduction run."""

    params: ReductionParams
    ground: Ground
    g1: ColouredGraph
    edges_added: int
    complement_matching: Matching
    matching_bound: int
    g_prime: ColouredGraph
    kept_vertices: tuple[int, ...]
    property_checks: dict[str, bool]
    audit: dict[str, dict]

    def to_json_dict(self) -> dict:
        return {
            "params": self.params.to_json_dict(),
            "ground": "complete" if self.ground == COMPLETE else blowup_to_json(self.ground),
            "edges_added": self.edges_added,
            "complement_matching": sorted(list(e) for e in self.complement_matching.edges),
            "complement_matching_bound": self.matching_bound,
            "kept_vertices": list(self.kept_vertices),
            "property_checks": dict(self.property_checks),
            "audit": self.audit,
            "graph": write_graph(self.g_prime),
        }


def _cm_summary(report: CMReport) -> dict:
    return {
        "best_cm": list(report.best_cm),
        "best_cm2": list(report.best_cm2),
        "best_nonbip_cm": list(report.best_nonbip_cm),
        "best_nonbip_cm2": list(report.best_nonbip_cm2),
    }


def _check_small_components(g1: ColouredGraph, ground: Ground, params: ReductionParams) -> None:
    """Complete case: per colour at most one component (singletons included)
    on fewer than threshold/2 vertices.  Blow-up case: at most one per
    pattern edge among components with 2+ vertices."""
    limit = 1 if params.kind == "complete" else (
        ground.pattern_edge_count() if isinstance(ground, BlowupSpec) else 1
    )
    for colour in range(g1.k):
        t = params.thresholds[colour]
        edges = g1.colour_edges(colour)
        comps = connected_components(g1.n, adjacency(g1.n, edges))
        if params.kind == "complete":
            small = [c for c in comps if 2 * len(c) < t]
        else:
            small = [c for c in comps if len(c) >= 2 and 2 * len(c) < t]
        if len(small) > limit:
            raise InternalCheckError(
                f"colour {colour} has {len(small)} small components (limit {limit})",
                diagnostics={"colour": colour, "components": small},
            )


def _resolve_colour(g: ColouredGraph, g1: ColouredGraph, u: int, v: int) -> int:
    """Single colour for a surviving pair: the smallest colour of the input
    mask when the input coloured the pair, else the smallest maximalised
    colour.  Dropping colours only shrinks colour subgraphs, so this cannot
    create new connected matchings."""
    mask = g.mask(u, v) or g1.mask(u, v)
    return (mask & -mask).bit_length() - 1


def _reduce(g: ColouredGraph, ground: Ground, params: ReductionParams) -> ReductionReport:
    _check_ground(g, ground)
    if g.k != params.k:
        raise PreconditionError("graph colour count does not match params")

    if params.kind == "complete":
        if Fraction(g.n) < params.targets[0] + params.eps_n:
            raise PreconditionError(
                f"need at least N + eps*n = {params.targets[0] + params.eps_n} vertices, have {g.n}"
            )
    else:
        assert isinstance(ground, BlowupSpec)
        expected = tuple(math.ceil(t + params.eps_n) for t in params.targets)
        if ground.sizes != expected:
            raise PreconditionError(
                f"ground sizes {ground.sizes} differ from targets + eps*n = {expected}"
            )

    deficit = min_ground_degree_deficit(g, ground)
    if deficit > params.delta_n:
        raise PreconditionError(
            f"ground degree deficit {deficit} exceeds budget {params.delta_n}"
        )
    met, witness = has_cm_at_least(g, params.thresholds, params.k0, params.mode)
    if met:
        raise PreconditionError(
            "input already has an over-threshold monochromatic connected matching",
            witness=witness,
        )

    audit: dict[str, dict] = {"input": _cm_summary(largest_mono_cm(g))}
    checks: dict[str, bool] = {}

    g1 = maximalize(g, ground, params)
    edges_added = sum(m.bit_count() for m in g1.edges.values()) - sum(
        m.bit_count() for m in g.edges.values()
    )
    audit["maximalized"] = _cm_summary(largest_mono_cm(g1))

    if min_ground_degree_deficit(g1, ground) > params.delta_n:
        raise InternalCheckError("maximalisation increased the degree deficit")
    checks["degree_deficit"] = True
    _check_small_components(g1, ground, params)
    checks["few_small_components"] = True
    classify_components(g1, ground, params.k0)
    checks["component_structure"] = True

    comp: GroundComplement = complement_within(g1, ground)
    matching = max_matching(g1.n, comp.edges)
    bound = complement_matching_bound(params)
    if matching.size > bound:
        raise InternalCheckError(
            f"complement matching size {matching.size} exceeds bound {bound}",
            diagnostics={"matching": matching},
        )
    checks["complement_matching_bound"] = True

    removed = matching.vertices()
    survivors = [v for v in range(g.n) if v not in removed]
    survivor_set = set(survivors)
    for (u, v) in ground_pairs(ground, g.n):
        if u in survivor_set and v in survivor_set and not g1.has_edge(u, v):
            raise InternalCheckError(
                f"surviving ground pair ({u}, {v}) is uncoloured after deletion"
            )
    checks["survivors_complete"] = True

    if params.kind == "complete":
        if len(survivors) < params.targets[0]:
            raise InternalCheckError(
                f"only {len(survivors)} vertices survive, need {params.targets[0]}"
            )
        keep = survivors[: params.targets[0]]
        target_ground: Ground = COMPLETE
        target_layout = None
    else:
        assert isinstance(ground, BlowupSpec)
        layout = ground.part_layout()
        keep = []
        for i in range(ground.s):
            part = [v for v in survivors if layout[v] == i]
            if len(part) < params.targets[i]:
                raise InternalCheckError(
                    f"part {i} has {len(part)} survivors, needs {params.targets[i]}"
                )
            keep.extend(part[: params.targets[i]])
        keep.sort()
        target_ground = BlowupSpec(params.targets, ground.pattern)
        target_layout = target_ground.part_layout()

    relabel = {v: i for i, v in enumerate(keep)}
    out_edges: dict[tuple[int, int], int] = {}
    for (u, v) in ground_pairs(ground, g.n):
        if u in relabel and v in relabel:
            colour = _resolve_colour(g, g1, u, v)
            out_edges[(relabel[u], relabel[v])] = 1 << colour
    g_prime = ColouredGraph(len(keep), g.k, out_edges, target_layout)

    met2, witness2 = has_cm_at_least(g_prime, params.thresholds, params.k0, params.mode)
    if met2:
        raise InternalCheckError(
            "output violates the connected-matching ceiling",
            diagnostics={"witness": witness2, "checks": checks},
        )
    checks["output_below_thresholds"] = True
    for (u, v), mask in g.edges.items():
        if u in relabel and v in relabel:
            if not mask >> _resolve_colour(g, g1, u, v) & 1:
                raise InternalCheckError(f"output colour on ({u}, {v}) not from the input mask")
    checks["input_colours_preserved"] = True
    audit["output"] = _cm_summary(largest_mono_cm(g_prime))

    return ReductionReport(
        params=params,
        ground=ground,
        g1=g1,
        edges_added=edges_added,
        complement_matching=matching,
        matching_bound=bound,
        g_prime=g_prime,
        kept_vertices=tuple(keep),
        property_checks=checks,
        audit=audit,
    )


def reduce_complete(g: ColouredGraph, params: ReductionParams) -> ReductionReport:
    """Complete-graph case: trim an almost-complete colouring on >= N + eps*n
    vertices with bounded non-degree to a full colouring of K_N below the
    same thresholds, containing an induced subgraph of the input."""
    if params.kind != "complete":
        raise PreconditionError("params are for the blow-up case")
    return _reduce(g, COMPLETE, params)


def reduce_blowup(g: ColouredGraph, ground: BlowupSpec, params: ReductionParams) -> ReductionReport:
    """Blow-up case: same pipeline inside a pattern ground graph, trimming
    each part to its target size."""
    if params.kind != "blowup":
        raise PreconditionError("params are for the complete case")
    return _reduce(g, ground, params)
