from fractions import Fraction

import pytest

from conmatch.graphs import COMPLETE, PreconditionError, all_pairs, coloured_graph
from conmatch.mono import largest_mono_cm
from conmatch.reduction import maximalize, reduction_params
from conmatch.verify import (
    check_structure_b2,
    check_structure_c,
    derive_complement_filter,
    gen_structure_b2,
    gen_structure_c,
    verify_bipartite_structure,
    verify_ge_random,
    verify_mono_cm_guarantee,
    verify_pulleyblank,
    verify_pulleyblank_random,
    verify_stability_structure,
    verify_three_colour_structure,
)


# ---------------------------------------------------------------------------
# Generators and checkers
# ---------------------------------------------------------------------------


def test_gen_structure_c_round_trip():
    for m, z in [(1, 0), (1, 1), (2, 0), (2, 2)]:
        for seed in range(3):
            g = gen_structure_c(m, z, 2 * m + 1 - z, seed=seed)
            assert g.n == 4 * m + 1
            report = largest_mono_cm(g)
            assert max(report.best_cm) <= 2 * m
            found = check_structure_c(g, m)
            assert found is not None
            assert len(found.X) == len(found.Y) == m
            assert len(found.Z) <= m


def test_gen_structure_c_base_case():
    g = gen_structure_c(0, 0, 1)
    assert g.n == 1
    assert check_structure_c(g, 0) is not None


def test_gen_structure_c_all_green_inner_block():
    g = gen_structure_c(2, 0, 5, seed=1)
    # |W| = 5 >= m+2 forces the inner block green
    for u in range(4, 9):
        for v in range(u + 1, 9):
            assert g.colours(u, v) == (2,)
    assert max(largest_mono_cm(g).best_cm) <= 4


def test_gen_structure_c_validates_sizes():
    with pytest.raises(PreconditionError):
        gen_structure_c(1, 2, 1)
    with pytest.raises(PreconditionError):
        gen_structure_c(1, 0, 2)


def test_checker_rejects_monochromatic_clique():
    g = coloured_graph(5, 3, [(u, v, [0]) for u, v in all_pairs(5)])
    assert check_structure_c(g, 1) is None


def test_checker_finds_relabelled_colours():
    g = gen_structure_c(1, 1, 2, seed=2)
    # swap colours 0 and 2 everywhere; some relabelling must still match
    swapped = {}
    for e, mask in g.edges.items():
        new = (mask & 0b010) | (0b100 if mask & 1 else 0) | (0b001 if mask & 4 else 0)
        swapped[e] = new
    found = check_structure_c(g.with_edges(swapped), 1)
    assert found is not None
    assert len(found.X) == len(found.Y) == 1


def test_gen_structure_b2_round_trip():
    for m in (1, 2):
        for z in (0, m, 2 * m + 1):
            for seed in range(3):
                g = gen_structure_b2(m, z_size=z, seed=seed)
                report = largest_mono_cm(g)
                assert max(report.best_cm) <= 2 * m
                found = check_structure_b2(g, m)
                assert found is not None
                assert len(found.X) == len(found.Y) == m
                assert len(found.Z) + len(found.W) == 2 * m + 1


def test_b2_checker_rejects_all_red():
    edges = [(u, 2 + v, [0]) for u in range(2) for v in range(3)]
    g = coloured_graph(5, 2, edges, part_of=(0, 0, 1, 1, 1))
    assert check_structure_b2(g, 1) is None
    # the all-red colouring takes the other branch: a red 2-edge connected
    # matching exists, so the enumeration passes it without a split pattern
    assert largest_mono_cm(g).best_cm[0] == 4


# ---------------------------------------------------------------------------
# Exhaustive and sampled verifiers
# ---------------------------------------------------------------------------


def test_bipartite_verifier_m1_exhaustive():
    report = verify_bipartite_structure(1)
    assert report["mode"] == "exhaustive"
    assert report["space_size"] == 64
    assert report["checked"] == 64
    assert report["failures"] == []
    # split colourings: C(2,1) choices of X times 2^3 values, halved for the
    # role swap
    assert report["b2_hits"] == 8


def test_bipartite_verifier_chunks_merge_like_full_run():
    from conmatch.verify import _bipartite_chunk

    full = _bipartite_chunk((0, 64, 1))
    lo = _bipartite_chunk((0, 40, 1))
    hi = _bipartite_chunk((40, 64, 1))
    assert full["checked"] == lo["checked"] + hi["checked"]
    assert full["failures"] == lo["failures"] + hi["failures"]
    assert full["b2_hits"] == lo["b2_hits"] + hi["b2_hits"]


def test_bipartite_verifier_sampled_mode():
    report = verify_bipartite_structure(3, sample=30, seed=5)
    assert report["mode"] == "sampled"
    assert report["seed"] == 5
    assert report["failures"] == []
    again = verify_bipartite_structure(3, sample=30, seed=5)
    assert report == again


def test_bipartite_verifier_requires_sample_above_two():
    with pytest.raises(PreconditionError):
        verify_bipartite_structure(3)


def test_three_colour_verifier_chunk():
    from conmatch.verify import _three_colour_chunk

    part = _three_colour_chunk((0, 3000, False))
    assert part["checked"] == 3000
    assert part["failures"] == []


def test_three_colour_verifier_sampled():
    report = verify_three_colour_structure(2, sample=40, seed=9)
    assert report["mode"] == "sampled"
    assert report["failures"] == []
    assert report["checked"] == 40 + 3 * 3  # samples plus generated patterns
    assert report == verify_three_colour_structure(2, sample=40, seed=9)


def test_mono_cm_guarantee_sampled():
    report = verify_mono_cm_guarantee(2, sample=25, seed=14)
    assert report["failures"] == []


def test_ge_verifier_random():
    report = verify_ge_random(trials=60, seed=2, max_n=9)
    assert report["checked"] == 60
    assert report["failures"] == []
    assert report == verify_ge_random(trials=60, seed=2, max_n=9)


# ---------------------------------------------------------------------------
# Minimum-cycle 2-matching cover checks
# ---------------------------------------------------------------------------


def test_pulleyblank_five_cycle():
    report = verify_pulleyblank(5, [(i, (i + 1) % 5) for i in range(5)])
    assert report.d_prime == ()
    assert report.order == 5
    assert report.min_cycle_vertices == 5  # the cycle itself is the optimum
    assert report.existential and report.universal


def test_pulleyblank_claw():
    report = verify_pulleyblank(4, [(0, 1), (0, 2), (0, 3)])
    assert set(report.d_prime) == {1, 2, 3}
    assert report.neighbourhood == (0,)
    assert report.order == 2
    assert report.existential


def test_pulleyblank_even_cycle():
    report = verify_pulleyblank(6, [(i, (i + 1) % 6) for i in range(6)])
    assert report.d_prime == ()
    assert report.order == 6
    assert report.min_cycle_vertices == 0
    assert report.existential and report.universal


def _independent_min_cycle_enumeration(n, edges):
    """Count maximum 2-matchings with the fewest cycle vertices by combining
    every vertex-disjoint odd-cycle set with every compatible matching."""
    es = sorted(set(map(tuple, map(sorted, edges))))
    adj = {v: set() for v in range(n)}
    for u, v in es:
        adj[u].add(v)
        adj[v].add(u)
    cycles = []

    def extend(path, used):
        last = path[-1]
        for w in sorted(adj[last]):
            if w == path[0] and len(path) >= 3 and path[1] < path[-1]:
                cycles.append(tuple(path))
            if w > path[0] and w not in used:
                path.append(w)
                extend(path, used | {w})
                path.pop()

    for v in range(n):
        extend([v], {v})
    odd = [c for c in cycles if len(c) % 2 == 1]

    cycle_sets = [()]

    def build(i, used, chosen):
        for j in range(i, len(odd)):
            c = odd[j]
            if not (set(c) & used):
                chosen.append(c)
                cycle_sets.append(tuple(chosen))
                build(j + 1, used | set(c), chosen)
                chosen.pop()

    build(0, set(), [])
    stats = {}
    for cs in cycle_sets:
        used = set(v for c in cs for v in c)
        free_edges = [e for e in es if not (set(e) & used)]

        def matchings(i, used2, size):
            yield size
            for j in range(i, len(free_edges)):
                u, v = free_edges[j]
                if u not in used2 and v not in used2:
                    yield from matchings(j + 1, used2 | {u, v}, size + 1)

        for size in matchings(0, set(), 0):
            key = (len(used) + 2 * size, len(used))
            stats[key] = stats.get(key, 0) + 1
    max_order = max(k[0] for k in stats)
    min_cyc = min(k[1] for k in stats if k[0] == max_order)
    return max_order, min_cyc, stats[(max_order, min_cyc)]


def test_pulleyblank_enumeration_matches_independent_count():
    import random

    for trial in range(40):
        rng = random.Random(trial)
        n = rng.randint(3, 6)
        es = [e for e in all_pairs(n) if rng.random() < rng.uniform(0.3, 0.9)]
        if not es:
            continue
        rep = verify_pulleyblank(n, es)
        expected = _independent_min_cycle_enumeration(n, es)
        assert (rep.order, rep.min_cycle_vertices, rep.min_cycle_count) == expected


def test_pulleyblank_random_reports_universal_outcomes():
    report = verify_pulleyblank_random(trials=40, seed=8, max_n=10)
    assert report["checked"] == 40
    assert report["failures"] == []
    assert "universal_failures" in report
    assert report == verify_pulleyblank_random(trials=40, seed=8, max_n=10)


# ---------------------------------------------------------------------------
# Stability-style near-structure search
# ---------------------------------------------------------------------------


def _exact_stability_colouring(m, flip=None):
    # noisy non-block colours so no alternative partition can hide a flip
    n = 4 * m
    X = range(m)
    Y = range(m, 2 * m)
    Z = range(2 * m, 3 * m)
    W = range(3 * m, 4 * m)
    edges = {}
    for u, v in all_pairs(n):
        edges[(u, v)] = 1 << ((u * 2 + v) % 3)
    def paint(A, B, colour):
        for a in A:
            for b in B:
                edges[tuple(sorted((a, b)))] = 1 << colour
    paint(X, Z, 0)
    paint(Y, W, 0)
    paint(X, W, 1)
    paint(Y, Z, 1)
    if flip:
        edges[flip] = 1 << 1
    return coloured_graph(n, 3, [(u, v, m) for (u, v), m in edges.items()])


def test_stability_exact_structure_has_zero_defect():
    g = _exact_stability_colouring(2)
    report = verify_stability_structure(g, eps=Fraction(3, 2), slack=Fraction(0))
    assert report["defect"] == "0/1"
    assert report["within_slack"]


def test_stability_one_recoloured_edge():
    g = _exact_stability_colouring(2, flip=(0, 4))  # one [X, Z] edge turned blue
    report = verify_stability_structure(g, eps=Fraction(3, 2), slack=Fraction(1, 16))
    assert report["defect"] == "1/16"  # one bad edge over 4 blocks of 4
    assert report["partition"] == {"X": [0, 1], "Y": [2, 3], "Z": [4, 5], "W": [6, 7]}
    assert report["within_slack"]


def test_stability_rejects_large_connected_matching():
    g = coloured_graph(8, 3, [(u, v, [0]) for u, v in all_pairs(8)])
    with pytest.raises(PreconditionError):
        verify_stability_structure(g, eps=Fraction(1, 2), slack=Fraction(1))


def test_stability_local_search_above_exhaustive_range():
    g = _exact_stability_colouring(3)
    report = verify_stability_structure(g, eps=Fraction(2), slack=Fraction(1, 10), seed=4)
    assert report["mode"] == "local-search"
    assert report["defect"] == "0/1"

    flipped = dict(g.edges)
    flipped[(0, 6)] = 1 << 2  # two [X, Z] edges turned green
    flipped[(1, 7)] = 1 << 2
    g2 = g.with_edges(flipped)
    report = verify_stability_structure(g2, eps=Fraction(2), slack=Fraction(1, 10), seed=4)
    assert report["defect"] == "1/18"  # 2 bad edges over 4 blocks of 9
    assert report["within_slack"]


def test_verifier_error_paths():
    with pytest.raises(PreconditionError):
        verify_three_colour_structure(2)  # exhaustive only at m = 1
    with pytest.raises(PreconditionError):
        verify_mono_cm_guarantee(2, sample=10)  # sampled mode needs a seed
    g = coloured_graph(5, 3, [(0, 1, [0])])
    with pytest.raises(PreconditionError):
        check_structure_c(g, 1)  # not a complete colouring


def test_stability_alternate_block_reading():
    g = _exact_stability_colouring(2)
    blocks = (("XZ", 0), ("YW", 0), ("XW", 1), ("YW", 1))
    report = verify_stability_structure(g, eps=Fraction(3, 2), slack=Fraction(1, 4), blocks=blocks)
    # the [Y,W] block cannot be both red and blue, so a quarter of the
    # counted edges disagree under this reading
    assert report["defect"] == "1/4"


# ---------------------------------------------------------------------------
# Complement-filter diagnostic
# ---------------------------------------------------------------------------


def _k5_params():
    return reduction_params(k=3, k0=3, alphas=[Fraction(4, 5)] * 3, beta=Fraction(4, 5),
                            eps=Fraction(1, 5), n=5, N=4, delta=Fraction(1, 5))


def test_filter_trivial_on_complete_graph():
    params = _k5_params()
    g1 = maximalize(gen_structure_c(1, 1, 2, seed=1), COMPLETE, params)
    report = derive_complement_filter(g1, COMPLETE, params)
    assert report["trivial"]
    assert report["complement_matching_size"] == 0
    assert report["bound_holds"]


def test_filter_terminates_on_two_removed_pairs():
    params = _k5_params()
    g1 = maximalize(gen_structure_c(1, 1, 2, seed=1), COMPLETE, params)
    for pairs in (((0, 2), (1, 3)), ((0, 3), (1, 4))):
        edges = dict(g1.edges)
        for p in pairs:
            del edges[p]
        report = derive_complement_filter(g1.with_edges(edges), COMPLETE, params)
        assert not report["trivial"]
        assert report["complement_matching_size"] == 2
        assert report["final"]["size"] >= 1
        for step in report["steps"]:
            assert step["size"] >= 1


def test_filter_distinct_components_keep_everything():
    # two colours, both endpoints in different components of each colour:
    # every step keeps the submatching unchanged
    edges = [(0, 1, [0]), (2, 3, [0]), (0, 2, [1]), (1, 3, [1])]
    g = coloured_graph(4, 2, edges)
    params = reduction_params(k=2, k0=0, alphas=[Fraction(4, 4)] * 2, beta=Fraction(1),
                              eps=Fraction(1, 4), n=4, N=3, delta=Fraction(1, 2))
    report = derive_complement_filter(g, COMPLETE, params)
    assert not report["trivial"]
    sizes = [step["size"] for step in report["steps"]]
    assert sizes == [report["m0"]] * 2
