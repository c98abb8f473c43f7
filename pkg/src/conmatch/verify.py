"""Desk-scale verifiers: exhaustive and sampled structure checks, extremal
colouring generators, and diagnostic re-derivations.

Exhaustive enumerations walk base-k counters over a fixed edge order with no
isomorphism pruning; the index space splits into disjoint ranges so reports
are identical for any worker count.  Every sampled run records its seed and
is byte-reproducible from it.
"""

from __future__ import annotations

import dataclasses
import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, Sequence

from .graphs import (
    ColouredGraph,
    Ground,
    InternalCheckError,
    PreconditionError,
    adjacency,
    all_pairs,
    complement_within,
    connected_components,
    edge_key,
)
from .matching import (
    brute_matching_number,
    brute_two_matching_order,
    matching_number,
    max_matching,
    _adj_masks,
    _bits,
    _normalise,
)
from .gallai_edmonds import verify_ge_theorem
from .mono import largest_mono_cm
from .reduction import (
    ReductionParams,
    TypeSignature,
    complement_matching_bound,
    classify_components,
    type_census,
)

RED, BLUE, GREEN = 0, 1, 2


def random_graph(n: int, p: float, rng: random.Random) -> list[tuple[int, int]]:
    """Seeded Erdos-Renyi edge list over the lexicographic pair order."""
    return [e for e in all_pairs(n) if rng.random() < p]


def _derive(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def _split_range(total: int, jobs: int) -> list[tuple[int, int]]:
    jobs = max(1, min(jobs, total)) if total else 1
    step = -(-total // jobs)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)] or [(0, 0)]


def _run_chunks(func, chunks: list, jobs: int) -> list:
    if jobs <= 1 or len(chunks) <= 1:
        return [func(c) for c in chunks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, chunks))


# ---------------------------------------------------------------------------
# Extremal colouring structures
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class StructureC:
    """Four-block partition of a 3-coloured complete graph on 4m+1 vertices.

    Under the colour roles (red, blue, green): [X,Z] and [Y,W] red, [X,W] and
    [Y,Z] blue, [Z,W] green; all of W is green once |W| >= m+2, and [X,Y] is
    green whenever Z is non-empty.  ``roles[i]`` is the actual colour playing
    role i.
    """

    m: int
    X: tuple[int, ...]
    Y: tuple[int, ...]
    Z: tuple[int, ...]
    W: tuple[int, ...]
    roles: tuple[int, int, int]


@dataclasses.dataclass(frozen=True)
class StructureB2:
    """Split partition of a 2-coloured complete bipartite graph: [X,Z] and
    [Y,W] red, [X,W] and [Y,Z] blue; one of Z, W may be empty."""

    m: int
    X: tuple[int, ...]
    Y: tuple[int, ...]
    Z: tuple[int, ...]
    W: tuple[int, ...]
    roles: tuple[int, int]


def _require_single_coloured(g: ColouredGraph) -> None:
    for e, mask in g.edges.items():
        if mask.bit_count() != 1:
            raise PreconditionError(f"edge {e} carries {mask.bit_count()} colours, need 1")


def _all_green_fill(free: list[tuple[int, int]]) -> dict[tuple[int, int], int]:
    return {e: GREEN for e in free}


def gen_structure_c(m: int, z_size: int, w_size: int, seed: int = 0) -> ColouredGraph:
    """A 3-colouring of the complete graph on 4m+1 vertices realising the
    four-block pattern with |Z| = z_size, |W| = w_size.

    The canonical contiguous partition is used (X, Y, Z, W in id order).
    Pattern-free edges are filled from the seed; fills are redrawn
    (deterministically) until no colour has a connected matching of size
    m+1, with the always-safe all-green fill as a final fallback.
    """
    n = 4 * m + 1
    if z_size < 0 or z_size > m or w_size < 0 or 2 * m + z_size + w_size != n:
        raise PreconditionError(
            f"sizes (m={m}, z={z_size}, w={w_size}) do not partition {n} vertices"
        )
    X = tuple(range(m))
    Y = tuple(range(m, 2 * m))
    Z = tuple(range(2 * m, 2 * m + z_size))
    W = tuple(range(2 * m + z_size, n))

    fixed: dict[tuple[int, int], int] = {}

    def paint(block_a, block_b, colour):
        for a in block_a:
            for b in block_b:
                if a != b:
                    fixed[edge_key(a, b)] = colour

    paint(X, Z, RED)
    paint(Y, W, RED)
    paint(X, W, BLUE)
    paint(Y, Z, BLUE)
    paint(Z, W, GREEN)
    if w_size >= m + 2:
        paint(W, W, GREEN)
    if z_size > 0:
        paint(X, Y, GREEN)
    free = [e for e in all_pairs(n) if e not in fixed]

    for attempt in range(64):
        rng = random.Random(_derive(seed, attempt))
        fills = {e: rng.randrange(3) for e in free}
        g = ColouredGraph(n, 3, {e: 1 << c for e, c in {**fixed, **fills}.items()})
        if all(v <= 2 * m for v in largest_mono_cm(g).best_cm):
            return g
    fills = _all_green_fill(free)
    return ColouredGraph(n, 3, {e: 1 << c for e, c in {**fixed, **fills}.items()})


def gen_structure_b2(m: int, z_size: int, seed: int = 0) -> ColouredGraph:
    """A 2-colouring of the complete bipartite graph K(2m, 2m+1) realising
    the split pattern with |Z| = z_size; the seed shuffles which vertices
    land in each block (the colouring itself is forced)."""
    a, b = 2 * m, 2 * m + 1
    if not 0 <= z_size <= b:
        raise PreconditionError(f"z size {z_size} outside 0..{b}")
    rng = random.Random(seed)
    a_verts = list(range(a))
    b_verts = list(range(a, a + b))
    rng.shuffle(a_verts)
    rng.shuffle(b_verts)
    X, Y = set(a_verts[:m]), set(a_verts[m:])
    Z = set(b_verts[:z_size])
    edges: dict[tuple[int, int], int] = {}
    for u in range(a):
        for v in range(a, a + b):
            red = (u in X) == (v in Z)
            edges[(u, v)] = 1 << (RED if red else BLUE)
    layout = (0,) * a + (1,) * b
    return ColouredGraph(a + b, 2, edges, layout)


def check_structure_c(g: ColouredGraph, m: int) -> StructureC | None:
    """Search for the four-block pattern under every colour relabelling.

    Given a candidate X, the remaining vertices classify by their colour
    profile towards X, so no further partition enumeration is needed in the
    Z-nonempty branch.
    """
    n = 4 * m + 1
    if g.n != n or g.k != 3:
        raise PreconditionError(f"expected a 3-coloured complete graph on {n} vertices")
    if m == 0:
        return StructureC(0, (), (), (), (0,), (RED, BLUE, GREEN))
    _require_single_coloured(g)
    if g.edge_count() != n * (n - 1) // 2:
        raise PreconditionError("graph is not complete")
    colour_of = {e: (mask & -mask).bit_length() - 1 for e, mask in g.edges.items()}

    def col(u: int, v: int) -> int:
        return colour_of[edge_key(u, v)]

    def block_is(block_a, block_b, colour) -> bool:
        return all(
            col(a, b) == colour for a in block_a for b in block_b if a < b or b < a
        )

    for roles in itertools.permutations((0, 1, 2)):
        red, blue, green = roles
        for X in itertools.combinations(range(n), m):
            xset = set(X)
            rest = [v for v in range(n) if v not in xset]
            profile: dict[int, int | None] = {}
            for v in rest:
                cols = {col(x, v) for x in X}
                profile[v] = cols.pop() if len(cols) == 1 else None

            # Z non-empty: the profile forces the assignment
            Y = tuple(v for v in rest if profile[v] == green)
            Z = tuple(v for v in rest if profile[v] == red)
            W = tuple(v for v in rest if profile[v] == blue)
            if (
                len(Y) == m
                and 1 <= len(Z) <= m
                and len(Y) + len(Z) + len(W) == len(rest)
                and block_is(Y, Z, blue)
                and block_is(Y, W, red)
                and block_is(Z, W, green)
                and (len(W) < m + 2 or block_is(W, W, green))
            ):
                return StructureC(m, X, Y, Z, W, roles)

            # Z empty: W must be pure blue towards X, Y is unconstrained
            pure_blue = [v for v in rest if profile[v] == blue]
            forced_y = [v for v in rest if profile[v] != blue]
            if len(forced_y) > m:
                continue
            slots = m - len(forced_y)
            for extra in itertools.combinations(pure_blue, slots):
                Y = tuple(sorted(forced_y + list(extra)))
                W = tuple(v for v in rest if v not in set(Y))
                if (
                    block_is(Y, W, red)
                    and block_is(W, W, green)
                ):
                    return StructureC(m, X, Y, (), W, roles)
    return None


def check_structure_b2(g: ColouredGraph, m: int) -> StructureB2 | None:
    """Search for the split pattern on a 2-coloured K(2m, 2m+1)."""
    if g.k != 2 or g.part_of is None:
        raise PreconditionError("expected a 2-coloured bipartite blow-up graph")
    A = [v for v in range(g.n) if g.part_of[v] == 0]
    B = [v for v in range(g.n) if g.part_of[v] == 1]
    if len(A) != 2 * m or len(B) != 2 * m + 1:
        raise PreconditionError(f"expected parts of sizes {2 * m} and {2 * m + 1}")
    _require_single_coloured(g)

    def col(u: int, v: int) -> int:
        return (g.mask(u, v) & -g.mask(u, v)).bit_length() - 1

    for roles in itertools.permutations((0, 1)):
        red, blue = roles
        for X in itertools.combinations(A, m):
            xset = set(X)
            Y = [v for v in A if v not in xset]
            Z, W = [], []
            ok = True
            for b in B:
                to_x = {col(x, b) for x in X}
                to_y = {col(y, b) for y in Y}
                if to_x == {red} and to_y == {blue}:
                    Z.append(b)
                elif to_x == {blue} and to_y == {red}:
                    W.append(b)
                else:
                    ok = False
                    break
            if ok:
                return StructureB2(m, tuple(X), tuple(Y), tuple(Z), tuple(W), roles)
    return None


# ---------------------------------------------------------------------------
# Exhaustive three-colour check on the complete graph (m = 1)
# ---------------------------------------------------------------------------

_K5_EDGES = list(all_pairs(5))
_K5_DISJOINT = [
    (i, j)
    for i in range(10)
    for j in range(i + 1, 10)
    if not set(_K5_EDGES[i]) & set(_K5_EDGES[j])
]


def _build_k5_cm2_table() -> list[bool]:
    table = [False] * 1024
    for mask in range(1024):
        present = [i for i in range(10) if mask >> i & 1]
        if len(present) < 2:
            continue
        parent = list(range(5))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in present:
            u, v = _K5_EDGES[i]
            parent[find(u)] = find(v)
        for i, j in _K5_DISJOINT:
            if mask >> i & 1 and mask >> j & 1:
                if find(_K5_EDGES[i][0]) == find(_K5_EDGES[j][0]):
                    table[mask] = True
                    break
    return table


_K5_CM2: list[bool] | None = None


def _k5_cm2_table() -> list[bool]:
    global _K5_CM2
    if _K5_CM2 is None:
        _K5_CM2 = _build_k5_cm2_table()
    return _K5_CM2


def _k5_graph(index: int) -> ColouredGraph:
    edges = {}
    for e in _K5_EDGES:
        edges[e] = 1 << (index % 3)
        index //= 3
    return ColouredGraph(5, 3, edges)


def _k5_masks(index: int) -> tuple[int, int, int]:
    masks = [0, 0, 0]
    for i in range(10):
        masks[index % 3] |= 1 << i
        index //= 3
    return masks[0], masks[1], masks[2]


def _three_colour_chunk(args: tuple[int, int, bool]) -> dict:
    """Scan colouring indices [lo, hi) of the 3-coloured K5.

    structure mode: every colouring must have a 2-edge connected matching in
    some colour or match the four-block pattern.  corollary mode: every
    colouring must have a 1-edge connected matching, and pattern colourings
    must exhibit a blue one inside [X, W].
    """
    lo, hi, corollary = args
    table = _k5_cm2_table()
    failures: list[dict] = []
    structure_hits = 0
    for index in range(lo, hi):
        m0, m1, m2 = _k5_masks(index)
        if corollary and not (m0 or m1 or m2):
            failures.append({"index": index, "reason": "no-edge"})
            continue
        if table[m0] or table[m1] or table[m2]:
            continue
        g = _k5_graph(index)
        found = check_structure_c(g, 1)
        if found is None:
            failures.append({"index": index, "reason": "no-structure"})
            continue
        structure_hits += 1
        if corollary and not _blue_block_cm(g, found):
            failures.append({"index": index, "reason": "no-blue-block-matching"})
    return {"checked": hi - lo, "failures": failures, "structure_hits": structure_hits}


def _blue_block_cm(g: ColouredGraph, s: StructureC) -> bool:
    """A blue connected matching of size m inside the [X, W] block: the block
    is complete bipartite in the blue role-colour, so check it lies in one
    blue component and carries an m-edge matching."""
    blue = s.roles[1]
    if len(s.W) < s.m:
        return False
    block_edges = [
        edge_key(x, w) for x in s.X for w in s.W if g.mask(x, w) >> blue & 1
    ]
    if matching_number(g.n, block_edges) < s.m:
        return False
    comps = connected_components(g.n, adjacency(g.n, g.colour_edges(blue)))
    for comp in comps:
        if set(s.X) | set(s.W) <= set(comp):
            return True
    return False


def verify_three_colour_structure(
    m: int,
    sample: int | None = None,
    seed: int | None = None,
    jobs: int = 1,
) -> dict:
    """Every 3-colouring of the complete graph on 4m+1 vertices either has a
    monochromatic connected matching of size m+1 or matches the four-block
    pattern.  Exhaustive at m = 1 (3^10 colourings); sampled above."""
    if m == 1 and sample is None:
        space = 3**10
        chunks = [(lo, hi, False) for lo, hi in _split_range(space, jobs * 4 if jobs > 1 else 1)]
        parts = _run_chunks(_three_colour_chunk, chunks, jobs)
        failures = sorted(
            (f for p in parts for f in p["failures"]), key=lambda f: f["index"]
        )
        return {
            "lemma": "lemma51",
            "m": m,
            "mode": "exhaustive",
            "seed": None,
            "space_size": space,
            "checked": sum(p["checked"] for p in parts),
            "structure_hits": sum(p["structure_hits"] for p in parts),
            "failures": failures,
        }
    if sample is None:
        raise PreconditionError("exhaustive mode is limited to m = 1; pass a sample size")
    if seed is None:
        raise PreconditionError("sampled mode needs a seed")
    return _three_colour_sampled(m, sample, seed, corollary=False)


def verify_mono_cm_guarantee(
    m: int,
    sample: int | None = None,
    seed: int | None = None,
    jobs: int = 1,
) -> dict:
    """Every checked 3-colouring of the complete graph on 4m+1 vertices has a
    monochromatic connected matching of size m; colourings without one of
    size m+1 must show a blue one inside their [X, W] block."""
    if m == 1 and sample is None:
        space = 3**10
        chunks = [(lo, hi, True) for lo, hi in _split_range(space, jobs * 4 if jobs > 1 else 1)]
        parts = _run_chunks(_three_colour_chunk, chunks, jobs)
        failures = sorted(
            (f for p in parts for f in p["failures"]), key=lambda f: f["index"]
        )
        return {
            "lemma": "corollary-cm",
            "m": m,
            "mode": "exhaustive",
            "seed": None,
            "space_size": space,
            "checked": sum(p["checked"] for p in parts),
            "structure_hits": sum(p["structure_hits"] for p in parts),
            "failures": failures,
        }
    if sample is None or seed is None:
        raise PreconditionError("sampled mode needs a sample size and seed")
    return _three_colour_sampled(m, sample, seed, corollary=True)


def _random_complete_colouring(n: int, k: int, rng: random.Random) -> ColouredGraph:
    return ColouredGraph(n, k, {e: 1 << rng.randrange(k) for e in all_pairs(n)})


def _three_colour_sampled(m: int, sample: int, seed: int, corollary: bool) -> dict:
    n = 4 * m + 1
    colourings: list[tuple[str, ColouredGraph]] = []
    for i in range(sample):
        rng = random.Random(_derive(seed, i))
        colourings.append((f"random-{i}", _random_complete_colouring(n, 3, rng)))
    idx = sample
    for z in range(m + 1):
        for j in range(3):
            g = gen_structure_c(m, z, 2 * m + 1 - z, seed=_derive(seed, idx))
            colourings.append((f"generated-z{z}-{j}", g))
            idx += 1
    failures = []
    structure_hits = 0
    for name, g in colourings:
        report = largest_mono_cm(g)
        if corollary and max(report.best_cm) < 2 * m:
            failures.append({"index": name, "reason": "no-cm-m"})
            continue
        if max(report.best_cm) >= 2 * (m + 1):
            continue
        found = check_structure_c(g, m)
        if found is None:
            failures.append({"index": name, "reason": "no-structure"})
            continue
        structure_hits += 1
        if corollary and not _blue_block_cm(g, found):
            failures.append({"index": name, "reason": "no-blue-block-matching"})
    return {
        "lemma": "corollary-cm" if corollary else "lemma51",
        "m": m,
        "mode": "sampled",
        "seed": seed,
        "space_size": 3 ** (n * (n - 1) // 2),
        "checked": len(colourings),
        "structure_hits": structure_hits,
        "failures": failures,
    }


# ---------------------------------------------------------------------------
# Exhaustive bipartite check on K(2m, 2m+1)
# ---------------------------------------------------------------------------


def _bip_component_rows(rows: list[int]) -> list[list[int]]:
    """Group row bitmasks into colour components (rows sharing column bits)."""
    groups: list[tuple[int, list[int]]] = []  # (column union, row list)
    for r in rows:
        if r == 0:
            continue
        merged = [r]
        union = r
        rest = []
        for u, rs in groups:
            if u & union:
                union |= u
                merged.extend(rs)
            else:
                rest.append((u, rs))
        rest.append((union, merged))
        groups = rest
    return [rs for _, rs in groups]


def _rows_matching_number(rows: tuple[int, ...], memo: dict) -> int:
    """Maximum bipartite matching of rows (A side) into column bits."""
    cached = memo.get(rows)
    if cached is not None:
        return cached
    match_col: dict[int, int] = {}

    def augment(i: int, seen: int) -> tuple[bool, int]:
        for c in _bits(rows[i] & ~seen):
            seen |= 1 << c
            if c not in match_col:
                match_col[c] = i
                return True, seen
            ok, seen = augment(match_col[c], seen)
            if ok:
                match_col[c] = i
                return True, seen
        return False, seen

    size = 0
    for i in range(len(rows)):
        ok, _ = augment(i, 0)
        if ok:
            size += 1
    memo[rows] = size
    return size


def _bip_has_cm(rows: list[int], need: int, memo: dict) -> bool:
    for comp in _bip_component_rows(rows):
        if len(comp) >= need and _rows_matching_number(tuple(sorted(comp)), memo) >= need:
            return True
    return False


def _bip_is_b2(rows: list[int], m: int, full: int) -> bool:
    """Rows take exactly two complementary values, m rows each."""
    values = sorted(set(rows))
    if len(values) != 2 or values[0] != full ^ values[1]:
        return False
    return rows.count(values[0]) == m


def _bipartite_chunk(args: tuple[int, int, int]) -> dict:
    lo, hi, m = args
    a, b = 2 * m, 2 * m + 1
    full = (1 << b) - 1
    memo: dict = {}
    failures: list[dict] = []
    b2_hits = 0
    for index in range(lo, hi):
        blue_rows = [(index >> (b * i)) & full for i in range(a)]
        red_rows = [full ^ r for r in blue_rows]
        if _bip_has_cm(red_rows, m + 1, memo) or _bip_has_cm(blue_rows, m + 1, memo):
            continue
        if _bip_is_b2(red_rows, m, full):
            b2_hits += 1
            continue
        failures.append({"index": index, "reason": "no-structure"})
    return {"checked": hi - lo, "failures": failures, "b2_hits": b2_hits}


def verify_bipartite_structure(
    m: int,
    sample: int | None = None,
    seed: int | None = None,
    jobs: int = 1,
) -> dict:
    """Every 2-colouring of K(2m, 2m+1) has a monochromatic connected
    matching of size m+1 or matches the split pattern.  Exhaustive for
    m <= 2 (2^6 and 2^20 colourings); m >= 3 needs sampling."""
    if m < 1:
        raise PreconditionError("m must be at least 1")
    edge_count = 2 * m * (2 * m + 1)
    if m <= 2 and sample is None:
        space = 1 << edge_count
        chunk_count = jobs * 4 if jobs > 1 else 1
        chunks = [(lo, hi, m) for lo, hi in _split_range(space, chunk_count)]
        parts = _run_chunks(_bipartite_chunk, chunks, jobs)
        failures = sorted(
            (f for p in parts for f in p["failures"]), key=lambda f: f["index"]
        )
        return {
            "lemma": "lemma52",
            "m": m,
            "mode": "exhaustive",
            "seed": None,
            "space_size": space,
            "checked": sum(p["checked"] for p in parts),
            "b2_hits": sum(p["b2_hits"] for p in parts),
            "failures": failures,
        }
    if sample is None or seed is None:
        raise PreconditionError("m >= 3 needs a sample size and seed")
    a, b = 2 * m, 2 * m + 1
    layout = (0,) * a + (1,) * b
    failures = []
    b2_hits = 0
    checked = 0
    for i in range(sample):
        rng = random.Random(_derive(seed, i))
        edges = {
            (u, v): 1 << rng.randrange(2) for u in range(a) for v in range(a, a + b)
        }
        g = ColouredGraph(a + b, 2, edges, layout)
        checked += 1
        if max(largest_mono_cm(g).best_cm) >= 2 * (m + 1):
            continue
        if check_structure_b2(g, m) is None:
            failures.append({"index": i, "reason": "no-structure"})
        else:
            b2_hits += 1
    for z in range(0, b + 1, max(1, b // 4)):
        g = gen_structure_b2(m, z, seed=_derive(seed, sample + z))
        checked += 1
        if check_structure_b2(g, m) is None:
            failures.append({"index": f"generated-z{z}", "reason": "no-structure"})
        else:
            b2_hits += 1
    return {
        "lemma": "lemma52",
        "m": m,
        "mode": "sampled",
        "seed": seed,
        "space_size": 1 << edge_count,
        "checked": checked,
        "b2_hits": b2_hits,
        "failures": failures,
    }


# ---------------------------------------------------------------------------
# Pulleyblank-style cover check for minimum-cycle maximum 2-matchings
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class PulleyblankReport:
    """Enumeration outcome for one graph.

    Among maximum-order 2-matchings with the fewest odd-cycle vertices:
    does at least one (existential) / does every one (universal) cover
    everything outside D' with its D'-incident edges covering N(D')?
    D' = vertices missed by some maximum matching and isolated among those.
    """

    n: int
    edge_count: int
    order: int
    d_prime: tuple[int, ...]
    neighbourhood: tuple[int, ...]
    min_cycle_vertices: int
    min_cycle_count: int
    existential: bool
    universal: bool

    @property
    def passed(self) -> bool:
        return self.existential


def verify_pulleyblank(n: int, edges: Iterable[tuple[int, int]]) -> PulleyblankReport:
    if n > 12:
        raise PreconditionError("2-matching enumeration limited to n <= 12")
    es = _normalise(n, edges)
    nu = brute_matching_number(n, es)
    D = frozenset(
        v
        for v in range(n)
        if brute_matching_number(n, [e for e in es if v not in e]) == nu
    )
    adj = adjacency(n, es)
    d_prime = frozenset(v for v in D if not any(w in D for w in adj[v]))
    neighbourhood = frozenset(w for v in d_prime for w in adj[v])
    order = brute_two_matching_order(n, es)
    masks = _adj_masks(n, es)
    outside = frozenset(range(n)) - d_prime

    state = {
        "min_cyc": n + 1,
        "count": 0,
        "existential": False,
        "universal": True,
    }

    def record(covered_mask: int, edge_list: list[tuple[int, int]], cyc: int) -> None:
        if cyc > state["min_cyc"]:
            return
        if cyc < state["min_cyc"]:
            state["min_cyc"] = cyc
            state["count"] = 0
            state["existential"] = False
            state["universal"] = True
        state["count"] += 1
        ok = all(covered_mask >> v & 1 for v in outside)
        if ok:
            touched = set()
            for u, v in edge_list:
                if u in d_prime or v in d_prime:
                    touched.add(u)
                    touched.add(v)
            ok = neighbourhood <= touched
        state["existential"] |= ok
        state["universal"] &= ok

    cycle_stack: list[tuple[int, ...]] = []

    def covered_mask(edge_list: list[tuple[int, int]]) -> int:
        mask = 0
        for u, v in edge_list:
            mask |= (1 << u) | (1 << v)
        for cycle in cycle_stack:
            for w in cycle:
                mask |= 1 << w
        return mask

    def rec(free: int, covered: int, cyc: int, edge_list: list[tuple[int, int]]) -> None:
        if cyc > state["min_cyc"]:
            return
        if covered + free.bit_count() < order:
            return
        if not free:
            if covered == order:
                record(covered_mask(edge_list), edge_list, cyc)
            return
        v = (free & -free).bit_length() - 1
        bit = 1 << v
        for u in _bits(masks[v] & free & ~bit):
            edge_list.append((v, u))
            rec(free ^ bit ^ (1 << u), covered + 2, cyc, edge_list)
            edge_list.pop()
        budget = state["min_cyc"] - cyc
        if budget >= 3:
            for cycle in _odd_cycles_limited(v, free, masks, budget):
                cyc_mask = 0
                for w in cycle:
                    cyc_mask |= 1 << w
                cycle_stack.append(cycle)
                rec(free ^ cyc_mask, covered + len(cycle), cyc + len(cycle), edge_list)
                cycle_stack.pop()
        rec(free ^ bit, covered, cyc, edge_list)

    rec((1 << n) - 1, 0, 0, [])
    if state["count"] == 0:
        raise InternalCheckError("no maximum 2-matching was enumerated")
    return PulleyblankReport(
        n=n,
        edge_count=len(es),
        order=order,
        d_prime=tuple(sorted(d_prime)),
        neighbourhood=tuple(sorted(neighbourhood)),
        min_cycle_vertices=state["min_cyc"],
        min_cycle_count=state["count"],
        existential=state["existential"],
        universal=state["universal"],
    )


def _odd_cycles_limited(v: int, free: int, masks: list[int], max_len: int):
    candidates = free & ~(1 << v)

    def extend(path: list[int], used: int):
        last = path[-1]
        for w in _bits(masks[last] & candidates & ~used):
            path.append(w)
            if len(path) >= 3 and len(path) % 2 == 1 and masks[w] >> v & 1 and path[1] < w:
                yield tuple(path)
            if len(path) < max_len:
                yield from extend(path, used | (1 << w))
            path.pop()

    yield from extend([v], 0)


def _trial_graph(seed: int, trial: int, max_n: int) -> tuple[int, list[tuple[int, int]]]:
    rng = random.Random(_derive(seed, trial))
    n = rng.randint(3, max_n)
    p = rng.uniform(0.15, min(0.6, 0.15 + 3.5 / n))
    return n, random_graph(n, p, rng)


def _pulleyblank_chunk(args: tuple[int, int, int, int]) -> dict:
    lo, hi, seed, max_n = args
    failures = []
    universal_failures = []
    for trial in range(lo, hi):
        n, es = _trial_graph(seed, trial, max_n)
        report = verify_pulleyblank(n, es)
        if not report.existential:
            failures.append({"trial": trial, "n": n, "edges": sorted(es)})
        if not report.universal:
            universal_failures.append(trial)
    return {
        "checked": hi - lo,
        "failures": failures,
        "universal_failures": universal_failures,
    }


def verify_pulleyblank_random(
    trials: int, seed: int, max_n: int = 12, jobs: int = 1
) -> dict:
    """Run the cover check on seeded random graphs; the gate is the
    existential reading, universal-reading outcomes are recorded."""
    if max_n > 12:
        raise PreconditionError("2-matching enumeration limited to n <= 12")
    chunk_count = jobs * 4 if jobs > 1 else 1
    chunks = [(lo, hi, seed, max_n) for lo, hi in _split_range(trials, chunk_count)]
    parts = _run_chunks(_pulleyblank_chunk, chunks, jobs)
    failures = sorted((f for p in parts for f in p["failures"]), key=lambda f: f["trial"])
    universal = sorted(t for p in parts for t in p["universal_failures"])
    return {
        "lemma": "pulleyblank",
        "mode": "sampled",
        "seed": seed,
        "space_size": trials,
        "checked": sum(p["checked"] for p in parts),
        "failures": failures,
        "universal_failures": universal,
    }


def _ge_chunk(args: tuple[int, int, int, int]) -> dict:
    lo, hi, seed, max_n = args
    failures = []
    for trial in range(lo, hi):
        rng = random.Random(_derive(seed, trial))
        n = rng.randint(2, max_n)
        p = rng.uniform(0.1, 0.8)
        es = random_graph(n, p, rng)
        report = verify_ge_theorem(n, es)
        if not report.passed:
            failures.append({"trial": trial, "n": n, "edges": sorted(es)})
    return {"checked": hi - lo, "failures": failures}


def verify_ge_random(trials: int, seed: int, max_n: int = 10, jobs: int = 1) -> dict:
    """Check the decomposition's cover/spread and factor-critical properties
    on seeded random graphs by exhaustive maximum-matching enumeration."""
    if max_n > 12:
        raise PreconditionError("maximum-matching enumeration limited to n <= 12")
    chunk_count = jobs * 4 if jobs > 1 else 1
    chunks = [(lo, hi, seed, max_n) for lo, hi in _split_range(trials, chunk_count)]
    parts = _run_chunks(_ge_chunk, chunks, jobs)
    failures = sorted((f for p in parts for f in p["failures"]), key=lambda f: f["trial"])
    return {
        "lemma": "ge",
        "mode": "sampled",
        "seed": seed,
        "space_size": trials,
        "checked": sum(p["checked"] for p in parts),
        "failures": failures,
    }


# ---------------------------------------------------------------------------
# Stability-style near-structure search
# ---------------------------------------------------------------------------

DEFAULT_BLOCKS = (("XZ", RED), ("YW", RED), ("XW", BLUE), ("YZ", BLUE))


def verify_stability_structure(
    g: ColouredGraph,
    eps: Fraction | float,
    slack: Fraction | float,
    blocks: Sequence[tuple[str, int]] = DEFAULT_BLOCKS,
    seed: int = 0,
    restarts: int = 12,
) -> dict:
    """Near-structure search on a 3-coloured complete graph on 4m vertices
    without a monochromatic connected matching of size (1+eps)m: find the
    partition {X, Y, Z, W} with |X| = |Y| = m minimising the fraction of
    wrong-coloured edges in the four prescribed blocks.

    Exhaustive for m <= 2, seeded local search above (a heuristic: failure to
    reach the slack is not a disproof).  ``blocks`` assigns a role colour to
    each cross block, so both readings of the pattern are testable.
    """
    eps = Fraction(eps)
    slack = Fraction(slack)
    if g.k != 3 or g.n % 4 != 0:
        raise PreconditionError("expected a 3-coloured complete graph on 4m vertices")
    m = g.n // 4
    _require_single_coloured(g)
    if g.edge_count() != g.n * (g.n - 1) // 2:
        raise PreconditionError("graph is not complete")
    report = largest_mono_cm(g)
    for colour in range(3):
        if Fraction(report.best_cm[colour], 2) >= (1 + eps) * m:
            raise PreconditionError(
                f"colour {colour} has a connected matching of size {report.best_cm[colour] // 2}"
            )

    colour_of = {e: (mask & -mask).bit_length() - 1 for e, mask in g.edges.items()}

    def defect(partition: dict[str, tuple[int, ...]], roles: tuple[int, int, int]) -> tuple[int, int]:
        wrong = total = 0
        for name, role in blocks:
            aa, bb = partition[name[0]], partition[name[1]]
            want = roles[role]
            for a in aa:
                for b in bb:
                    total += 1
                    if colour_of[edge_key(a, b)] != want:
                        wrong += 1
        return wrong, total

    best = None  # (wrong, total, partition, roles)

    def consider(partition, roles):
        nonlocal best
        wrong, total = defect(partition, roles)
        if best is None or wrong * best[1] < best[0] * total:
            best = (wrong, total, {k: tuple(v) for k, v in partition.items()}, roles)

    verts = list(range(g.n))
    if m <= 2:
        for roles in itertools.permutations((0, 1, 2)):
            for X in itertools.combinations(verts, m):
                rest1 = [v for v in verts if v not in set(X)]
                for Y in itertools.combinations(rest1, m):
                    rest2 = [v for v in rest1 if v not in set(Y)]
                    for z_size in range(len(rest2) + 1):
                        Z = tuple(rest2[:z_size])
                        W = tuple(rest2[z_size:])
                        consider({"X": X, "Y": Y, "Z": Z, "W": W}, roles)
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        for roles in itertools.permutations((0, 1, 2)):
            for _ in range(restarts):
                perm = verts[:]
                rng.shuffle(perm)
                cells = {
                    "X": perm[:m],
                    "Y": perm[m : 2 * m],
                    "Z": perm[2 * m : 3 * m],
                    "W": perm[3 * m :],
                }
                improved = True
                while improved:
                    improved = False
                    current = defect(cells, roles)
                    for a_cell, b_cell in itertools.combinations("XYZW", 2):
                        for i in range(len(cells[a_cell])):
                            for j in range(len(cells[b_cell])):
                                cells[a_cell][i], cells[b_cell][j] = (
                                    cells[b_cell][j],
                                    cells[a_cell][i],
                                )
                                cand = defect(cells, roles)
                                if cand[0] * current[1] < current[0] * cand[1]:
                                    current = cand
                                    improved = True
                                else:
                                    cells[a_cell][i], cells[b_cell][j] = (
                                        cells[b_cell][j],
                                        cells[a_cell][i],
                                    )
                    # moving a vertex between the flexible cells Z and W
                    for src, dst in (("Z", "W"), ("W", "Z")):
                        k = 0
                        while k < len(cells[src]):
                            v = cells[src].pop(k)
                            cells[dst].append(v)
                            cand = defect(cells, roles)
                            if cand[0] * current[1] < current[0] * cand[1]:
                                current = cand
                                improved = True
                            else:
                                cells[dst].pop()
                                cells[src].insert(k, v)
                                k += 1
                consider(cells, roles)
        mode = "local-search"

    wrong, total, partition, roles = best
    fraction = Fraction(wrong, total) if total else Fraction(0)
    per_block = {}
    for name, role in blocks:
        aa, bb = partition[name[0]], partition[name[1]]
        want = roles[role]
        size = len(aa) * len(bb)
        bad = sum(
            1 for a in aa for b in bb if colour_of[edge_key(a, b)] != want
        )
        per_block[name] = f"{bad}/{size}" if size else "0/0"
    return {
        "m": m,
        "mode": mode,
        "seed": seed if mode == "local-search" else None,
        "slack": f"{slack.numerator}/{slack.denominator}",
        "defect": f"{fraction.numerator}/{fraction.denominator}",
        "within_slack": fraction <= slack,
        "block_defects": per_block,
        "partition": {k: sorted(v) for k, v in partition.items()},
        "colour_roles": list(roles),
    }


# ---------------------------------------------------------------------------
# Complement-matching filter diagnostic
# ---------------------------------------------------------------------------


def derive_complement_filter(
    g1: ColouredGraph, ground: Ground, params: ReductionParams
) -> dict:
    """Re-derive the complement-matching bound mechanics on a concrete graph.

    Takes the largest same-type-pair submatching of the complement's maximum
    matching, then filters it colour by colour: edges across distinct
    components (or shared isolation) survive unchanged; edges inside one
    component must join tail cliques, and a 2-partition of those cliques
    keeps at least a quarter of the submatching.  The final vertex sets must
    span no edges of the graph."""
    census = type_census(g1, ground, params.k0)
    structures = classify_components(g1, ground, params.k0)
    comp = complement_within(g1, ground)
    matching = max_matching(g1.n, comp.edges)
    bound = complement_matching_bound(params)
    base = {
        "lemma": "claim41",
        "t": len(census),
        "complement_matching_size": matching.size,
        "bound": bound,
        "bound_holds": matching.size <= bound,
    }
    if matching.size == 0:
        return {**base, "trivial": True, "steps": [], "final": None}

    sig_of: dict[int, TypeSignature] = {}
    for sig, vs in census.items():
        for v in vs:
            sig_of[v] = sig

    buckets: dict[tuple, list[tuple[int, int]]] = {}
    for (u, v) in sorted(matching.edges):
        key = tuple(sorted([sig_of[u].key(), sig_of[v].key()]))
        buckets.setdefault(key, []).append((u, v))
    bucket_key = min(buckets, key=lambda k: (-len(buckets[k]), k))
    m0 = buckets[bucket_key]
    t = len(census)
    if len(m0) * t * t < matching.size:
        raise InternalCheckError("largest type-pair bucket smaller than |M|/t^2")

    # orient each edge: X side gets the smaller type key (or smaller id on ties)
    tau_key, sigma_key = bucket_key
    oriented: list[tuple[int, int]] = []
    for u, v in m0:
        if sig_of[u].key() == tau_key and sig_of[v].key() == sigma_key:
            pass
        elif sig_of[v].key() == tau_key and sig_of[u].key() == sigma_key:
            u, v = v, u
        if tau_key == sigma_key and u > v:
            u, v = v, u
        oriented.append((u, v))
    tau = sig_of[oriented[0][0]]
    sigma = sig_of[oriented[0][1]]

    current = oriented
    steps = []
    for colour in range(params.k):
        comp_tau = tau.components[colour]
        comp_sigma = sigma.components[colour]
        role_tau = tau.roles[colour]
        role_sigma = sigma.roles[colour]
        if comp_tau != comp_sigma:
            case = "distinct-components"
        elif role_tau == "I":
            case = "both-isolated"
        elif {role_tau, role_sigma} <= {"L", "R"}:
            if role_tau != role_sigma:
                raise InternalCheckError(
                    f"colour {colour}: opposite bipartite sides are fully joined"
                )
            case = "same-side"
        elif "H" in (role_tau, role_sigma):
            raise InternalCheckError(
                f"colour {colour}: a head vertex cannot miss ground pairs in its component"
            )
        else:
            case = "tail-cliques"
            cert = structures[colour][comp_tau[2]]
            blob_of = {}
            for idx, blob in enumerate(cert.blobs):
                for v in blob:
                    blob_of[v] = idx
            for u, v in current:
                if blob_of[u] == blob_of[v]:
                    raise InternalCheckError(
                        f"colour {colour}: matching edge ({u}, {v}) inside one tail clique"
                    )
            clique_ids = sorted({blob_of[v] for e in current for v in e})
            before = len(current)
            current = _best_clique_split(current, blob_of, clique_ids)
            if 4 * len(current) < before:
                raise InternalCheckError(
                    f"colour {colour}: clique split kept under a quarter of the edges"
                )
        steps.append({"colour": colour + 1, "case": case, "size": len(current)})

    xs = [u for u, _ in current]
    ys = [v for _, v in current]
    for x in xs:
        for y in ys:
            if x != y and g1.has_edge(x, y):
                raise InternalCheckError(f"final sets joined by edge ({x}, {y})")
    return {
        **base,
        "trivial": False,
        "m0": len(m0),
        "steps": steps,
        "final": {"x": sorted(xs), "y": sorted(ys), "size": len(current)},
    }


def _best_clique_split(
    edges: list[tuple[int, int]], blob_of: dict[int, int], clique_ids: list[int]
) -> list[tuple[int, int]]:
    """Best 2-partition {A, B} of the cliques: keep edges with the X end in
    an A clique and the Y end in a B clique.  Exhaustive up to 16 cliques
    (first clique pinned to A), greedy hill-climb beyond."""
    if len(clique_ids) <= 16:
        best: list[tuple[int, int]] = []
        rest = clique_ids[1:]
        for bits in range(1 << len(rest)):
            in_a = {clique_ids[0]}
            for i, c in enumerate(rest):
                if bits >> i & 1:
                    in_a.add(c)
            kept = [
                (u, v)
                for u, v in edges
                if blob_of[u] in in_a and blob_of[v] not in in_a
            ]
            if len(kept) > len(best):
                best = kept
        return best
    in_a = set(clique_ids[::2])

    def kept_for(a: set[int]) -> list[tuple[int, int]]:
        return [(u, v) for u, v in edges if blob_of[u] in a and blob_of[v] not in a]

    best = kept_for(in_a)
    improved = True
    while improved:
        improved = False
        for c in clique_ids:
            candidate = in_a ^ {c}
            kept = kept_for(candidate)
            if len(kept) > len(best):
                in_a = candidate
                best = kept
                improved = True
    return best
