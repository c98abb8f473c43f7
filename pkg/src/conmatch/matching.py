"""Maximum matchings in general graphs, 2-matchings and König covers.

All operations act on plain graph views ``(n, edges)`` and recompute from
scratch per call; ties are broken by scanning vertices in id order so repeated
runs return identical witnesses.  Exhaustive oracles guard input size and are
deliberately independent of the production algorithms they check.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Iterator

from .graphs import (
    InternalCheckError,
    PreconditionError,
    adjacency,
    bipartition,
    connected_components,
    edge_key,
)

BRUTE_FORCE_LIMIT = 14
ENUMERATION_LIMIT = 12


@dataclasses.dataclass(frozen=True)
class Matching:
    """A set of pairwise vertex-disjoint edges."""

    edges: frozenset[tuple[int, int]]

    @property
    def size(self) -> int:
        return len(self.edges)

    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def mate_array(self, n: int) -> list[int]:
        mate = [-1] * n
        for u, v in self.edges:
            mate[u] = v
            mate[v] = u
        return mate


@dataclasses.dataclass(frozen=True)
class TwoMatching:
    """Vertex-disjoint edges plus vertex-disjoint odd cycles.

    The order is the number of covered vertices.  Cycles are stored as vertex
    tuples starting at their smallest vertex, walking towards its smaller
    neighbour on the cycle.
    """

    edges: frozenset[tuple[int, int]]
    odd_cycles: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return 2 * len(self.edges) + sum(len(c) for c in self.odd_cycles)

    def vertices(self) -> frozenset[int]:
        vs = set(v for e in self.edges for v in e)
        for c in self.odd_cycles:
            vs.update(c)
        return frozenset(vs)


def _normalise(n: int, edges: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    out = set()
    for u, v in edges:
        if u == v:
            raise PreconditionError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise PreconditionError(f"edge ({u}, {v}) outside 0..{n - 1}")
        out.add(edge_key(u, v))
    return sorted(out)


# ---------------------------------------------------------------------------
# Blossom search
# ---------------------------------------------------------------------------


def max_matching(n: int, edges: Iterable[tuple[int, int]]) -> Matching:
    """Maximum-cardinality matching via blossom contraction, O(n^3)."""
    adj = adjacency(n, _normalise(n, edges))
    match = [-1] * n
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n

    def lowest_common_base(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = base[parent[match[a]]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = base[parent[match[b]]]

    def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_augmenting_path(root: int) -> bool:
        for i in range(n):
            used[i] = False
            parent[i] = -1
            base[i] = i
        used[root] = True
        queue = [root]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    # odd cycle found: contract the blossom
                    cur = lowest_common_base(v, to)
                    in_blossom = [False] * n
                    mark_path(v, cur, to, in_blossom)
                    mark_path(to, cur, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        # augment along the parent chain
                        w = to
                        while w != -1:
                            pv = parent[w]
                            nxt = match[pv]
                            match[w] = pv
                            match[pv] = w
                            w = nxt
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1:
            find_augmenting_path(v)
    out = frozenset((u, match[u]) for u in range(n) if match[u] > u)
    return Matching(out)


def matching_number(n: int, edges: Iterable[tuple[int, int]]) -> int:
    return max_matching(n, edges).size


def matching_number_without(
    n: int, edges: list[tuple[int, int]], removed: frozenset[int] | set[int]
) -> int:
    """Matching number after deleting a vertex set (no relabelling needed)."""
    kept = [(u, v) for u, v in edges if u not in removed and v not in removed]
    return matching_number(n, kept)


# ---------------------------------------------------------------------------
# 2-matchings via the bipartite double cover
# ---------------------------------------------------------------------------


def max_two_matching(n: int, edges: Iterable[tuple[int, int]]) -> TwoMatching:
    """Maximum-order 2-matching.

    The order equals the matching number of the bipartite double cover
    (copies ``v`` and ``v+n``, each edge doubled across the copies); the
    witness is rebuilt by decomposing the projected matching into isolated
    doubled edges, alternating paths/even cycles, and odd cycles.
    """
    es = _normalise(n, edges)
    if n == 0 or not es:
        return TwoMatching(frozenset(), ())
    double = []
    for u, v in es:
        double.append((u, n + v))
        double.append((v, n + u))
    cover_matching = max_matching(2 * n, double)
    target = cover_matching.size
    mate = cover_matching.mate_array(2 * n)

    mult: dict[tuple[int, int], int] = {}
    for u, v in es:
        c = (1 if mate[u] == n + v else 0) + (1 if mate[v] == n + u else 0)
        if c:
            mult[(u, v)] = c

    matched = set(e for e, c in mult.items() if c == 2)
    single = sorted(e for e, c in mult.items() if c == 1)
    adj1: dict[int, list[int]] = {}
    for u, v in single:
        adj1.setdefault(u, []).append(v)
        adj1.setdefault(v, []).append(u)
    for v in adj1:
        adj1[v].sort()

    used_edge: set[tuple[int, int]] = set()
    cycles: list[tuple[int, ...]] = []

    def walk(start: int, first: int) -> list[int]:
        path = [start, first]
        used_edge.add(edge_key(start, first))
        while True:
            cur = path[-1]
            nxt = None
            for w in adj1[cur]:
                if edge_key(cur, w) not in used_edge:
                    nxt = w
                    break
            if nxt is None:
                return path
            used_edge.add(edge_key(cur, nxt))
            path.append(nxt)

    def take_alternating(path: list[int]) -> None:
        for i in range(0, len(path) - 1, 2):
            matched.add(edge_key(path[i], path[i + 1]))

    # paths first (degree-1 endpoints), then the remaining cycles
    for v in sorted(adj1):
        if len(adj1[v]) == 1:
            e = edge_key(v, adj1[v][0])
            if e not in used_edge:
                take_alternating(walk(v, adj1[v][0]))
    for v in sorted(adj1):
        for w in adj1[v]:
            if edge_key(v, w) not in used_edge:
                cycle = walk(v, w)
                if cycle[0] != cycle[-1]:
                    raise InternalCheckError("support walk did not close into a cycle")
                cycle = cycle[:-1]
                if len(cycle) % 2 == 1:
                    cycles.append(tuple(cycle))
                else:
                    take_alternating(cycle + [cycle[0]])
                break

    witness = TwoMatching(frozenset(matched), tuple(sorted(cycles)))
    if witness.order != target:
        raise InternalCheckError(
            f"2-matching reconstruction has order {witness.order}, expected {target}"
        )
    return witness


def max_two_matching_order(n: int, edges: Iterable[tuple[int, int]]) -> int:
    return max_two_matching(n, edges).order


# ---------------------------------------------------------------------------
# König covers
# ---------------------------------------------------------------------------


def konig_cover(n: int, edges: Iterable[tuple[int, int]]) -> frozenset[int]:
    """Minimum vertex cover of a bipartite graph (size equals the matching
    number); raises on non-bipartite input."""
    es = _normalise(n, edges)
    adj = adjacency(n, es)
    side = bipartition(n, adj)
    if side is None:
        raise PreconditionError("graph is not bipartite")
    mate = max_matching(n, es).mate_array(n)

    # alternating reachability from unmatched side-0 vertices
    reached = [False] * n
    stack = [v for v in range(n) if side[v] == 0 and mate[v] == -1]
    for v in stack:
        reached[v] = True
    while stack:
        v = stack.pop()
        if side[v] == 0:
            for w in adj[v]:
                if mate[v] != w and not reached[w]:
                    reached[w] = True
                    stack.append(w)
        else:
            w = mate[v]
            if w != -1 and not reached[w]:
                reached[w] = True
                stack.append(w)
    cover = [v for v in range(n) if (side[v] == 0) != reached[v]]
    return frozenset(cover)


# ---------------------------------------------------------------------------
# Factor-critical test
# ---------------------------------------------------------------------------


def is_factor_critical(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    """True iff the graph is connected and every single-vertex deletion
    leaves a perfectly matchable graph."""
    es = _normalise(n, edges)
    adj = adjacency(n, es)
    if len(connected_components(n, adj)) != 1:
        raise PreconditionError("graph is not connected")
    if n % 2 == 0:
        return False
    return all(matching_number_without(n, es, {u}) == (n - 1) // 2 for u in range(n))


# ---------------------------------------------------------------------------
# Exhaustive oracles (independent of the algorithms above)
# ---------------------------------------------------------------------------


def _adj_masks(n: int, es: list[tuple[int, int]]) -> list[int]:
    masks = [0] * n
    for u, v in es:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def brute_matching_number(n: int, edges: Iterable[tuple[int, int]]) -> int:
    """Matching number by exhaustive search over matchings (n <= 14)."""
    if n > BRUTE_FORCE_LIMIT:
        raise PreconditionError(f"brute-force oracle limited to n <= {BRUTE_FORCE_LIMIT}")
    es = _normalise(n, edges)
    masks = _adj_masks(n, es)
    best = 0

    def rec(free: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        if size + free.bit_count() // 2 <= best or not free:
            return
        v = (free & -free).bit_length() - 1
        rest = free ^ (1 << v)
        for u in _bits(masks[v] & rest):
            rec(rest ^ (1 << u), size + 1)
        rec(rest, size)

    rec((1 << n) - 1, 0)
    return best


def _odd_cycle_branches(
    v: int, free: int, masks: list[int], max_len: int
) -> Iterator[tuple[int, ...]]:
    """Simple odd cycles through ``v`` using only free vertices.

    ``v`` is the smallest free vertex, so it is automatically the smallest on
    each cycle; direction duplicates are removed by requiring the second
    vertex to be smaller than the last.
    """
    candidates = free & ~(1 << v)

    def extend(path: list[int], used: int) -> Iterator[tuple[int, ...]]:
        last = path[-1]
        for w in _bits(masks[last] & candidates & ~used):
            path.append(w)
            if len(path) >= 3 and len(path) % 2 == 1 and masks[w] >> v & 1 and path[1] < w:
                yield tuple(path)
            if len(path) < max_len:
                yield from extend(path, used | (1 << w))
            path.pop()

    yield from extend([v], 0)


def brute_two_matching_order(n: int, edges: Iterable[tuple[int, int]]) -> int:
    """Maximum 2-matching order by exhaustive search (n <= 14)."""
    if n > BRUTE_FORCE_LIMIT:
        raise PreconditionError(f"brute-force oracle limited to n <= {BRUTE_FORCE_LIMIT}")
    es = _normalise(n, edges)
    masks = _adj_masks(n, es)
    best = 0

    def rec(free: int, covered: int) -> None:
        nonlocal best
        if covered > best:
            best = covered
        if not free or covered + free.bit_count() <= best:
            return
        v = (free & -free).bit_length() - 1
        bit = 1 << v
        for u in _bits(masks[v] & free & ~bit):
            rec(free ^ bit ^ (1 << u), covered + 2)
        if covered + free.bit_count() > best:
            for cycle in _odd_cycle_branches(v, free, masks, free.bit_count()):
                cyc_mask = 0
                for w in cycle:
                    cyc_mask |= 1 << w
                rec(free ^ cyc_mask, covered + len(cycle))
                if covered + free.bit_count() <= best:
                    break
        rec(free ^ bit, covered)

    rec((1 << n) - 1, 0)
    return best


def enumerate_maximum_matchings(
    n: int, edges: Iterable[tuple[int, int]]
) -> list[frozenset[tuple[int, int]]]:
    """All maximum matchings, by exhaustive enumeration (n <= 12)."""
    if n > ENUMERATION_LIMIT:
        raise PreconditionError(f"enumeration limited to n <= {ENUMERATION_LIMIT}")
    es = _normalise(n, edges)
    masks = _adj_masks(n, es)
    best_size = 0
    results: list[frozenset[tuple[int, int]]] = []

    def rec(free: int, current: list[tuple[int, int]]) -> None:
        nonlocal best_size, results
        if len(current) + free.bit_count() // 2 < best_size:
            return
        if not free:
            if len(current) > best_size:
                best_size = len(current)
                results = [frozenset(current)]
            elif len(current) == best_size:
                results.append(frozenset(current))
            return
        v = (free & -free).bit_length() - 1
        bit = 1 << v
        for u in _bits(masks[v] & free & ~bit):
            current.append((v, u))
            rec(free ^ bit ^ (1 << u), current)
            current.pop()
        rec(free ^ bit, current)

    rec((1 << n) - 1, [])
    return results
