"""Edge-coloured graphs, blow-up ground graphs and the line-based file format.

Vertices are dense integer ids ``0..n-1``.  Colours are 0-based bit positions
in an integer mask; an edge is *present* exactly when its mask is non-empty,
and a single pair may carry several colours at once.  Ground graphs (the host
relative to which complements and degree deficits are measured) are either the
complete graph (the :data:`COMPLETE` sentinel) or a :class:`BlowupSpec`.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Iterator, Mapping, Sequence

MAX_COLOURS = 16

#: Sentinel ground graph: every vertex pair is a ground pair.
COMPLETE = "complete"


class GraphFormatError(ValueError):
    """A graph or blow-up spec file could not be parsed."""


class PreconditionError(ValueError):
    """A stated precondition of an operation was violated.

    ``witness`` optionally carries the offending object (a counterexample
    matching, an edge, ...) for diagnostics.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalCheckError(RuntimeError):
    """A structural property that must hold by construction failed.

    Signals either a bug or a parameter regime outside the supported one;
    ``diagnostics`` carries whatever context was available.
    """

    def __init__(self, message: str, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics


def full_mask(k: int) -> int:
    """All-ones colour mask for ``k`` colours."""
    return (1 << k) - 1


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Normalise a vertex pair to ``(min, max)``."""
    return (u, v) if u < v else (v, u)


def all_pairs(n: int) -> Iterator[tuple[int, int]]:
    """All vertex pairs ``(u, v)`` with ``u < v`` in lexicographic order."""
    for u in range(n):
        for v in range(u + 1, n):
            yield (u, v)


@dataclasses.dataclass(frozen=True)
class ColouredGraph:
    """A multicoloured graph: pair -> non-empty colour mask.

    Instances are treated as immutable after construction and are safe to
    share across workers.  ``part_of`` is present when the graph lives inside
    a blow-up ground graph; parts are contiguous, ascending id ranges.
    """

    n: int
    k: int
    edges: Mapping[tuple[int, int], int]
    part_of: tuple[int, ...] | None = None

    def __post_init__(self):
        if not 1 <= self.k <= MAX_COLOURS:
            raise PreconditionError(f"colour count {self.k} outside 1..{MAX_COLOURS}")
        if self.n < 0:
            raise PreconditionError("negative vertex count")
        full = full_mask(self.k)
        for (u, v), mask in self.edges.items():
            if not (0 <= u < v < self.n):
                raise PreconditionError(f"bad edge pair ({u}, {v}) for n={self.n}")
            if not 0 < mask <= full:
                raise PreconditionError(f"bad colour mask {mask} on edge ({u}, {v})")
        if self.part_of is not None and len(self.part_of) != self.n:
            raise PreconditionError("part_of length does not match vertex count")

    # -- basic accessors -------------------------------------------------

    def mask(self, u: int, v: int) -> int:
        return self.edges.get(edge_key(u, v), 0)

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edges

    def colours(self, u: int, v: int) -> tuple[int, ...]:
        m = self.mask(u, v)
        return tuple(c for c in range(self.k) if m >> c & 1)

    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, u: int) -> int:
        return sum(1 for (a, b) in self.edges if a == u or b == u)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for (a, b) in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def simple_edges(self) -> list[tuple[int, int]]:
        """Pairs with a non-empty mask (the underlying simple graph)."""
        return sorted(self.edges)

    def colour_edges(self, colour: int) -> list[tuple[int, int]]:
        """Pairs whose mask contains ``colour``."""
        if not 0 <= colour < self.k:
            raise PreconditionError(f"colour {colour} outside 0..{self.k - 1}")
        bit = 1 << colour
        return sorted(e for e, m in self.edges.items() if m & bit)

    def with_edges(self, edges: Mapping[tuple[int, int], int]) -> "ColouredGraph":
        return ColouredGraph(self.n, self.k, dict(edges), self.part_of)


def coloured_graph(
    n: int,
    k: int,
    edges: Iterable[tuple[int, int, Iterable[int] | int]] = (),
    part_of: Sequence[int] | None = None,
) -> ColouredGraph:
    """Build a :class:`ColouredGraph` from ``(u, v, colours-or-mask)`` triples.

    Colours given as an iterable are 0-based indices; an int is taken as a
    ready-made mask.  Repeated pairs merge their masks.
    """
    acc: dict[tuple[int, int], int] = {}
    for u, v, cols in edges:
        if u == v:
            raise PreconditionError(f"self-loop at vertex {u}")
        mask = cols if isinstance(cols, int) else sum(1 << c for c in set(cols))
        key = edge_key(u, v)
        acc[key] = acc.get(key, 0) | mask
    parts = tuple(part_of) if part_of is not None else None
    return ColouredGraph(n, k, acc, parts)


# ---------------------------------------------------------------------------
# Blow-up ground graphs
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class BlowupSpec:
    """Pattern graph on ``[s]`` (loops allowed) plus per-part sizes.

    The ground graph replaces pattern vertex ``i`` by ``sizes[i]`` vertices;
    a loop at ``i`` makes that part a clique, parts joined by a pattern edge
    are completely joined.  Empty parts are permitted and produce no vertices.
    """

    sizes: tuple[int, ...]
    pattern: frozenset[tuple[int, int]]

    def __post_init__(self):
        if any(m < 0 for m in self.sizes):
            raise PreconditionError("negative part size")
        s = self.s
        for (i, j) in self.pattern:
            if not (0 <= i <= j < s):
                raise PreconditionError(f"pattern edge ({i}, {j}) outside parts 0..{s - 1}")

    @property
    def s(self) -> int:
        return len(self.sizes)

    @property
    def vertex_count(self) -> int:
        return sum(self.sizes)

    def has_pattern_edge(self, i: int, j: int) -> bool:
        return ((i, j) if i <= j else (j, i)) in self.pattern

    def part_layout(self) -> tuple[int, ...]:
        """part index of each vertex under the canonical contiguous layout."""
        out: list[int] = []
        for i, m in enumerate(self.sizes):
            out.extend([i] * m)
        return tuple(out)

    def part_range(self, i: int) -> range:
        start = sum(self.sizes[:i])
        return range(start, start + self.sizes[i])

    def pattern_edge_count(self) -> int:
        """Number of pattern edges, loops included."""
        return len(self.pattern)


def blowup_spec(sizes: Sequence[int], pattern: Iterable[tuple[int, int]]) -> BlowupSpec:
    norm = frozenset((i, j) if i <= j else (j, i) for i, j in pattern)
    return BlowupSpec(tuple(sizes), norm)


def blowup_to_json(spec: BlowupSpec) -> dict:
    return {
        "sizes": list(spec.sizes),
        "edges": [list(e) for e in sorted(spec.pattern)],
    }


def blowup_from_json(obj: dict) -> BlowupSpec:
    try:
        sizes = [int(x) for x in obj["sizes"]]
        edges = [(int(i), int(j)) for i, j in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"bad blow-up spec JSON: {exc}") from exc
    return blowup_spec(sizes, edges)


def build_blowup(spec: BlowupSpec, k: int = 1) -> ColouredGraph:
    """The uncoloured ground graph of ``spec``: every ground pair carries the
    reserved all-ones mask."""
    layout = spec.part_layout()
    present = full_mask(k)
    edges: dict[tuple[int, int], int] = {}
    for i in range(spec.s):
        ri = spec.part_range(i)
        if spec.has_pattern_edge(i, i):
            for a in ri:
                for b in range(a + 1, ri.stop):
                    edges[(a, b)] = present
        for j in range(i + 1, spec.s):
            if spec.has_pattern_edge(i, j):
                for a in ri:
                    for b in spec.part_range(j):
                        edges[(a, b)] = present
    return ColouredGraph(spec.vertex_count, k, edges, layout)


Ground = BlowupSpec | str


def _check_ground(g: ColouredGraph, ground: Ground) -> None:
    if ground == COMPLETE:
        return
    if not isinstance(ground, BlowupSpec):
        raise PreconditionError(f"unknown ground {ground!r}")
    if g.n != ground.vertex_count:
        raise PreconditionError(
            f"graph has {g.n} vertices but ground has {ground.vertex_count}"
        )
    layout = ground.part_layout()
    if g.part_of is not None and g.part_of != layout:
        raise PreconditionError("graph part layout does not match the ground spec")
    for (u, v) in g.edges:
        if not ground.has_pattern_edge(layout[u], layout[v]):
            raise PreconditionError(f"edge ({u}, {v}) is not a ground pair", witness=(u, v))


def is_ground_pair(ground: Ground, u: int, v: int, layout: tuple[int, ...] | None = None) -> bool:
    if ground == COMPLETE:
        return u != v
    lay = layout if layout is not None else ground.part_layout()
    return u != v and ground.has_pattern_edge(lay[u], lay[v])


def ground_pairs(ground: Ground, n: int) -> Iterator[tuple[int, int]]:
    """Ground pairs in lexicographic order."""
    if ground == COMPLETE:
        yield from all_pairs(n)
        return
    layout = ground.part_layout()
    for u, v in all_pairs(n):
        if ground.has_pattern_edge(layout[u], layout[v]):
            yield (u, v)


def ground_degrees(ground: Ground, n: int) -> list[int]:
    if ground == COMPLETE:
        return [n - 1] * n
    layout = ground.part_layout()
    deg = [0] * n
    for i, size in enumerate(ground.sizes):
        d = 0
        if ground.has_pattern_edge(i, i):
            d += size - 1
        for j in range(ground.s):
            if j != i and ground.has_pattern_edge(i, j):
                d += ground.sizes[j]
        for v in ground.part_range(i):
            deg[v] = d
    return deg


@dataclasses.dataclass(frozen=True)
class GroundComplement:
    """Pairs that are ground edges but carry an empty mask in ``base``."""

    base: ColouredGraph
    ground: Ground
    edges: frozenset[tuple[int, int]]


def complement_within(g: ColouredGraph, ground: Ground) -> GroundComplement:
    """Ground pairs missing from ``g`` (mask empty)."""
    _check_ground(g, ground)
    missing = frozenset(p for p in ground_pairs(ground, g.n) if p not in g.edges)
    return GroundComplement(g, ground, missing)


def min_ground_degree_deficit(g: ColouredGraph, ground: Ground) -> int:
    """max over vertices of (ground degree - degree in g)."""
    _check_ground(g, ground)
    if g.n == 0:
        return 0
    gdeg = ground_degrees(ground, g.n)
    deg = g.degrees()
    return max(gdeg[u] - deg[u] for u in range(g.n))


def induced_subgraph(g: ColouredGraph, keep: Iterable[int]) -> ColouredGraph:
    """Induced subgraph on ``keep``, relabelled order-preservingly to dense ids."""
    kept = sorted(set(keep))
    for v in kept:
        if not 0 <= v < g.n:
            raise PreconditionError(f"vertex {v} outside 0..{g.n - 1}")
    relabel = {v: i for i, v in enumerate(kept)}
    edges = {
        (relabel[u], relabel[v]): m
        for (u, v), m in g.edges.items()
        if u in relabel and v in relabel
    }
    parts = tuple(g.part_of[v] for v in kept) if g.part_of is not None else None
    return ColouredGraph(len(kept), g.k, edges, parts)


def restrict_blowup(spec: BlowupSpec, keep: Iterable[int]) -> BlowupSpec:
    """The blow-up spec induced by keeping a vertex subset (same pattern)."""
    kept = set(keep)
    layout = spec.part_layout()
    sizes = [0] * spec.s
    for v in kept:
        sizes[layout[v]] += 1
    return BlowupSpec(tuple(sizes), spec.pattern)


# ---------------------------------------------------------------------------
# Plain-graph helpers shared across modules
# ---------------------------------------------------------------------------


def adjacency(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    """Sorted neighbour lists (deterministic iteration order)."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise PreconditionError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise PreconditionError(f"edge ({u}, {v}) outside 0..{n - 1}")
        adj[u].add(v)
        adj[v].add(u)
    return [sorted(s) for s in adj]


def connected_components(n: int, adj: list[list[int]]) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest vertex.

    Isolated vertices are singleton components.
    """
    seen = [False] * n
    comps: list[list[int]] = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def bipartition(n: int, adj: list[list[int]]) -> list[int] | None:
    """Two-colour the graph; returns side labels or None if an odd cycle exists.

    Each component's smallest vertex gets side 0.
    """
    side = [-1] * n
    for start in range(n):
        if side[start] != -1:
            continue
        side[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if side[w] == -1:
                    side[w] = side[v] ^ 1
                    stack.append(w)
                elif side[w] == side[v]:
                    return None
    return side


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------
#
#   v <n> <k>
#   p <part_index> <lo> <hi>        (optional; inclusive id range)
#   e <u> <v> <c1,c2,...>           (1-based colours; omit line for non-edge)
#
# Blank lines and '#' comments are ignored.  The writer emits edges sorted
# by (u, v).  Vertex ids and part indices are 0-based.


def write_graph(g: ColouredGraph) -> str:
    lines = [f"v {g.n} {g.k}"]
    if g.part_of is not None:
        start = 0
        while start < g.n:
            part = g.part_of[start]
            stop = start
            while stop + 1 < g.n and g.part_of[stop + 1] == part:
                stop += 1
            lines.append(f"p {part} {start} {stop}")
            start = stop + 1
        for i in range(1, g.n):
            if g.part_of[i] < g.part_of[i - 1]:
                raise GraphFormatError("part layout is not contiguous ascending")
    for (u, v) in sorted(g.edges):
        cols = ",".join(str(c + 1) for c in range(g.k) if g.edges[(u, v)] >> c & 1)
        lines.append(f"e {u} {v} {cols}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> ColouredGraph:
    n = k = None
    part_ranges: list[tuple[int, int, int]] = []
    edges: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        tag = fields[0]
        try:
            if tag == "v":
                if n is not None:
                    raise GraphFormatError(f"line {lineno}: duplicate v line")
                n, k = int(fields[1]), int(fields[2])
            elif tag == "p":
                part, lo, hi = int(fields[1]), int(fields[2]), int(fields[3])
                part_ranges.append((part, lo, hi))
            elif tag == "e":
                if n is None:
                    raise GraphFormatError(f"line {lineno}: edge before v line")
                u, v = int(fields[1]), int(fields[2])
                if len(fields) != 4:
                    raise GraphFormatError(f"line {lineno}: expected colour list")
                cols = [int(c) for c in fields[3].split(",")]
                if u == v:
                    raise GraphFormatError(f"line {lineno}: self-loop")
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphFormatError(f"line {lineno}: vertex id out of range")
                mask = 0
                for c in cols:
                    if not 1 <= c <= k:
                        raise GraphFormatError(f"line {lineno}: colour {c} outside 1..{k}")
                    mask |= 1 << (c - 1)
                key = edge_key(u, v)
                if key in edges:
                    raise GraphFormatError(f"line {lineno}: duplicate edge {key}")
                edges[key] = mask
            else:
                raise GraphFormatError(f"line {lineno}: unknown tag {tag!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"line {lineno}: malformed line {raw!r}") from exc
    if n is None:
        raise GraphFormatError("missing v line")
    part_of = None
    if part_ranges:
        labels = [-1] * n
        for part, lo, hi in part_ranges:
            if not (0 <= lo <= hi < n):
                raise GraphFormatError(f"part range ({lo}, {hi}) out of bounds")
            for v in range(lo, hi + 1):
                if labels[v] != -1:
                    raise GraphFormatError(f"vertex {v} in two parts")
                labels[v] = part
        if any(x == -1 for x in labels):
            raise GraphFormatError("part lines do not cover all vertices")
        part_of = tuple(labels)
    return ColouredGraph(n, k, edges, part_of)


def load_graph(path: str) -> ColouredGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def save_graph(g: ColouredGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_graph(g))
