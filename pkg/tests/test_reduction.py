import json
import random
from fractions import Fraction

import pytest

from conmatch.graphs import (
    COMPLETE,
    InternalCheckError,
    PreconditionError,
    all_pairs,
    blowup_spec,
    coloured_graph,
    parse_graph,
)
from conmatch.mono import has_cm_at_least, largest_mono_cm
from conmatch.reduction import (
    classify_components,
    complement_matching_bound,
    delta_threshold,
    maximalize,
    params_from_json,
    reduce_blowup,
    reduce_complete,
    reduction_params,
    type_census,
    type_of,
)
from conmatch.verify import gen_structure_b2, gen_structure_c


def small_params(**overrides):
    kwargs = dict(
        k=3,
        k0=3,
        alphas=[Fraction(4, 5)] * 3,
        beta=Fraction(4, 5),
        eps=Fraction(1, 5),
        n=5,
        N=4,
        mode="matching",
        delta=Fraction(1, 5),
    )
    kwargs.update(overrides)
    return reduction_params(**kwargs)


# ---------------------------------------------------------------------------
# Thresholds and bounds
# ---------------------------------------------------------------------------


def test_delta_threshold_complete_formula():
    p = reduction_params(k=1, k0=1, alphas=[Fraction(1, 2)], beta=Fraction(1, 2),
                         eps=Fraction(1, 2), n=8, N=4)
    # eps/2 * (alpha/(16 beta))^2 with alpha = beta
    assert delta_threshold(p) == Fraction(1, 4) * Fraction(1, 16) ** 2 == Fraction(1, 1024)


def test_delta_threshold_monotone_in_alpha():
    last = Fraction(0)
    for num in (1, 2, 3, 4):
        p = reduction_params(k=2, k0=2, alphas=[Fraction(num, 8)] * 2, beta=Fraction(1, 2),
                             eps=Fraction(1, 2), n=16, N=8)
        value = delta_threshold(p)
        assert value > last
        last = value


def test_delta_threshold_two_colours():
    p = reduction_params(k=2, k0=2, alphas=[Fraction(1, 4)] * 2, beta=Fraction(1, 2),
                         eps=Fraction(1), n=8, N=4)
    assert delta_threshold(p) == Fraction(1, 2) * Fraction(1, 32) ** 4


def test_delta_threshold_blowup_formula():
    p = reduction_params(k=1, k0=1, alphas=[Fraction(1, 2)], beta=Fraction(1, 2),
                         eps=Fraction(1, 2), n=8, Ns=[4, 4], s=2)
    assert delta_threshold(p) == Fraction(1, 4) * (Fraction(1, 2) / (56 * 8 * Fraction(1, 2))) ** 2


def test_matching_bound_is_half_eps_n_at_default_delta():
    p = reduction_params(k=3, k0=3, alphas=[Fraction(1, 2)] * 3, beta=Fraction(3, 4),
                         eps=Fraction(1, 4), n=64, N=48)
    assert complement_matching_bound(p) == int(p.eps * p.n / 2) == 8


def test_matching_bound_arithmetic_k1():
    # (16)^2 * (1/4) * (1/16)^2 * 2048 = eps*n/2 = 512
    p = reduction_params(k=1, k0=1, alphas=[Fraction(1, 2)], beta=Fraction(1, 2),
                         eps=Fraction(1, 2), n=2048, N=1024)
    expected = Fraction(16) ** 2 * Fraction(1, 4) * Fraction(1, 16) ** 2 * 2048
    assert expected == 512
    assert complement_matching_bound(p) == 512


def test_matching_bound_zero_delta_limit():
    p = small_params(delta=Fraction(1, 10**9))
    assert complement_matching_bound(p) >= 0
    tiny = small_params(delta=Fraction(1, 16**6 * 10))
    assert complement_matching_bound(tiny) == int(Fraction(16, 1) ** 6 * tiny.delta * 5)


def test_params_validation():
    with pytest.raises(PreconditionError):
        reduction_params(k=1, k0=2, alphas=[1], beta=1, eps=1, n=4, N=2)
    with pytest.raises(PreconditionError):
        reduction_params(k=1, k0=1, alphas=[Fraction(1, 2)], beta=Fraction(1, 4),
                         eps=1, n=4, N=1)  # beta below alpha
    with pytest.raises(PreconditionError):
        reduction_params(k=1, k0=1, alphas=[1], beta=1, eps=1, n=4, N=8)  # N > beta n
    with pytest.raises(PreconditionError):
        reduction_params(k=1, k0=1, alphas=[1], beta=1, eps=1, n=4)  # neither N nor Ns
    with pytest.raises(PreconditionError):
        reduction_params(k=1, k0=1, alphas=[1], beta=1, eps=1, n=4, N=2, Ns=[2])


def test_params_json_round_trip():
    p = small_params()
    q = params_from_json(json.loads(json.dumps(p.to_json_dict())))
    assert q == p
    blow = reduction_params(k=2, k0=2, alphas=["2/3", "2/3"], beta="2/3", eps="1/9",
                            n=9, Ns=[3, 4], mode="matching")
    assert params_from_json(blow.to_json_dict()) == blow
    assert blow.thresholds == (6, 6)


# ---------------------------------------------------------------------------
# Maximalisation
# ---------------------------------------------------------------------------


def test_maximalize_fills_unreachable_thresholds():
    edges = [(u, v, [0]) for u, v in all_pairs(4) if (u, v) != (2, 3)]
    g = coloured_graph(4, 1, edges)
    p = reduction_params(k=1, k0=1, alphas=[Fraction(6, 4)], beta=Fraction(3, 2),
                         eps=Fraction(1, 4), n=4, N=3, delta=Fraction(1, 4))
    assert p.thresholds == (6,)
    g1 = maximalize(g, COMPLETE, p)
    assert g1.has_edge(2, 3)
    assert g1.edge_count() == 6


def test_maximalize_output_admits_no_further_addition():
    p = small_params()
    for seed in range(4):
        g = gen_structure_c(1, 1, 2, seed=seed)
        g1 = maximalize(g, COMPLETE, p)
        # exhaustive single-addition scan
        for (u, v) in all_pairs(5):
            mask = g1.mask(u, v)
            for colour in range(3):
                if mask >> colour & 1:
                    continue
                edges = dict(g1.edges)
                edges[(u, v)] = mask | (1 << colour)
                candidate = g1.with_edges(edges)
                met, _ = has_cm_at_least(candidate, p.thresholds, p.k0, p.mode)
                assert met, (seed, u, v, colour)


def test_maximalize_is_idempotent():
    p = small_params()
    g = gen_structure_c(1, 0, 3, seed=2)
    g1 = maximalize(g, COMPLETE, p)
    assert maximalize(g1, COMPLETE, p) == g1


def test_maximalize_rejects_violating_input():
    g = coloured_graph(6, 1, [(u, v, [0]) for u, v in all_pairs(6)])
    p = reduction_params(k=1, k0=1, alphas=[Fraction(1, 2)], beta=Fraction(5, 6),
                         eps=Fraction(1, 6), n=6, N=5, delta=Fraction(1, 6))
    with pytest.raises(PreconditionError) as err:
        maximalize(g, COMPLETE, p)
    assert err.value.witness is not None


# ---------------------------------------------------------------------------
# Structure detection and types
# ---------------------------------------------------------------------------


def test_classify_single_colour_clique_and_isolated():
    g = coloured_graph(5, 2, [(u, v, [0]) for u, v in all_pairs(5)])
    structures = classify_components(g, COMPLETE, k0=2)
    cert = structures[0][0]
    assert cert.kind == "star"
    assert cert.head == frozenset()  # cliques take the empty head
    assert cert.blobs == (frozenset(range(5)),)
    assert structures[1] == {}  # isolated vertices carry no certificate


def test_classify_star_blowup_head():
    # head {0} joined to everything, leaves {1,2} (clique) and {3}
    edges = [(0, 1, [0]), (0, 2, [0]), (0, 3, [0]), (1, 2, [0])]
    g = coloured_graph(4, 1, edges)
    cert = classify_components(g, COMPLETE, k0=1)[0][0]
    assert cert.kind == "star"
    assert cert.head == {0}
    assert sorted(map(sorted, cert.blobs)) == [[1, 2], [3]]


def test_classify_bipartite_only_above_k0():
    edges = [(u, 2 + v, [0]) for u in range(2) for v in range(2)]
    g = coloured_graph(4, 1, edges)
    # C4 is not a star blow-up; below k0 the bipartite template is off-limits
    with pytest.raises(InternalCheckError):
        classify_components(g, COMPLETE, k0=1)
    cert = classify_components(g, COMPLETE, k0=0)[0][0]
    assert cert.kind == "bipartite"
    assert cert.left == {0, 1} and cert.right == {2, 3}


def test_type_census_roles():
    edges = [(0, 1, [0]), (0, 2, [0]), (0, 3, [0]), (1, 2, [0])]
    g = coloured_graph(4, 2, edges)
    census = type_census(g, COMPLETE, k0=2)
    sig0 = type_of(g, 0, COMPLETE, k0=2)
    assert sig0.roles[0] == "H"
    assert sig0.roles[1] == "I"
    sig3 = type_of(g, 3, COMPLETE, k0=2)
    assert sig3.roles[0] == "T"
    assert sum(len(vs) for vs in census.values()) == 4


def test_type_census_bipartite_sides():
    edges = [(u, 2 + v, [0]) for u in range(2) for v in range(2)]
    g = coloured_graph(4, 1, edges)
    census = type_census(g, COMPLETE, k0=0)
    roles = {v: sig.roles[0] for sig, vs in census.items() for v in vs}
    assert roles == {0: "L", 1: "L", 2: "R", 3: "R"}


# ---------------------------------------------------------------------------
# reduce_complete / reduce_blowup
# ---------------------------------------------------------------------------


def test_reduce_complete_trim_only():
    g = gen_structure_c(1, 1, 2, seed=3)
    p = small_params()
    report = reduce_complete(g, p)
    assert report.complement_matching.size == 0
    assert report.g_prime.n == 4
    assert all(report.property_checks.values())
    met, _ = has_cm_at_least(report.g_prime, p.thresholds, p.k0, p.mode)
    assert not met


def test_reduce_complete_single_deleted_edge():
    g = gen_structure_c(1, 1, 2, seed=1)
    edges = dict(g.edges)
    del edges[(0, 3)]
    report = reduce_complete(g.with_edges(edges), small_params())
    out = report.g_prime
    assert out.n == 4
    assert out.edge_count() == 6  # complete colouring of the output
    assert max(largest_mono_cm(out).best_cm) < 4


def test_reduce_complete_output_extends_input_colours():
    g = gen_structure_c(1, 1, 2, seed=5)
    report = reduce_complete(g, small_params())
    relabel = {v: i for i, v in enumerate(report.kept_vertices)}
    for (u, v), mask in g.edges.items():
        if u in relabel and v in relabel:
            out_mask = report.g_prime.mask(relabel[u], relabel[v])
            assert out_mask & mask == out_mask  # output colour came from input


def test_reduce_complete_rejects_bad_inputs():
    p = small_params()
    g = gen_structure_c(1, 1, 2, seed=1)
    small = coloured_graph(4, 3, [(u, v, [0]) for u, v in all_pairs(4)])
    with pytest.raises(PreconditionError):
        reduce_complete(small, p)  # too few vertices
    edges = dict(g.edges)
    del edges[(0, 1)]
    del edges[(0, 2)]
    with pytest.raises(PreconditionError):
        reduce_complete(g.with_edges(edges), small_params(delta=Fraction(1, 10)))
    mono = coloured_graph(5, 3, [(u, v, [0]) for u, v in all_pairs(5)])
    with pytest.raises(PreconditionError):
        reduce_complete(mono, p)  # over-threshold connected matching
    with pytest.raises(PreconditionError):
        blow = reduction_params(k=3, k0=3, alphas=[Fraction(4, 5)] * 3, beta=Fraction(4, 5),
                                eps=Fraction(1, 5), n=5, Ns=[4], s=1)
        reduce_complete(g, blow)  # params for the wrong case


def test_reduce_complete_seeded_deletions_random_structure():
    # delete one seeded edge from larger pattern colourings and re-verify
    done = 0
    for seed in range(10):
        if done >= 4:
            break
        m = 3
        g = gen_structure_c(m, seed % (m + 1), 2 * m + 1 - seed % (m + 1), seed=seed)
        rng = random.Random(seed)
        pair = sorted(g.edges)[rng.randrange(g.edge_count())]
        edges = dict(g.edges)
        del edges[pair]
        n = 4 * m + 1
        p = reduction_params(k=3, k0=3, alphas=[Fraction(2 * (m + 1), n)] * 3,
                             beta=Fraction(n - 2, n), eps=Fraction(2, n), n=n,
                             N=n - 2, delta=Fraction(1, n))
        try:
            report = reduce_complete(g.with_edges(edges), p)
        except InternalCheckError:
            continue  # an unfillable pair can starve a part at this scale
        assert report.g_prime.n == n - 2
        met, _ = has_cm_at_least(report.g_prime, p.thresholds, p.k0, p.mode)
        assert not met
        done += 1
    assert done >= 4


def test_reduce_blowup_bipartite_case():
    ground = blowup_spec([4, 5], [(0, 1)])
    p = reduction_params(k=2, k0=2, alphas=[Fraction(2, 3)] * 2, beta=Fraction(2, 3),
                         eps=Fraction(1, 9), n=9, Ns=[3, 4], delta=Fraction(1, 9))
    for seed in range(3):
        g = gen_structure_b2(2, z_size=2, seed=seed)
        rng = random.Random(seed)
        pair = sorted(g.edges)[rng.randrange(g.edge_count())]
        edges = dict(g.edges)
        del edges[pair]
        report = reduce_blowup(g.with_edges(edges), ground, p)
        out = report.g_prime
        assert out.part_of == (0, 0, 0, 1, 1, 1, 1)
        assert out.edge_count() == 12  # complete bipartite output colouring
        met, _ = has_cm_at_least(out, p.thresholds, p.k0, p.mode)
        assert not met


def test_reduce_blowup_trim_only_full_ground():
    ground = blowup_spec([4, 5], [(0, 1)])
    p = reduction_params(k=2, k0=2, alphas=[Fraction(2, 3)] * 2, beta=Fraction(2, 3),
                         eps=Fraction(1, 9), n=9, Ns=[3, 4])
    g = gen_structure_b2(2, z_size=3, seed=11)
    report = reduce_blowup(g, ground, p)
    assert report.complement_matching.size == 0
    assert report.edges_added >= 0
    assert report.g_prime.n == 7


def test_reduce_blowup_single_looped_part_matches_complete():
    loop = blowup_spec([5], [(0, 0)])
    g = gen_structure_c(1, 1, 2, seed=3)
    g_parts = coloured_graph(5, 3, [], part_of=loop.part_layout()).with_edges(g.edges)
    p_blow = reduction_params(k=3, k0=3, alphas=[Fraction(4, 5)] * 3, beta=Fraction(4, 5),
                              eps=Fraction(1, 5), n=5, Ns=[4], s=1, delta=Fraction(1, 5))
    p_comp = small_params()
    blow = reduce_blowup(g_parts, loop, p_blow)
    comp = reduce_complete(g, p_comp)
    assert blow.kept_vertices == comp.kept_vertices
    assert blow.g_prime.edges == comp.g_prime.edges


def test_reduce_blowup_validates_ground_sizes():
    ground = blowup_spec([5, 5], [(0, 1)])
    p = reduction_params(k=2, k0=2, alphas=[Fraction(2, 3)] * 2, beta=Fraction(2, 3),
                         eps=Fraction(1, 9), n=9, Ns=[3, 4])
    g = gen_structure_b2(2, z_size=2, seed=0)
    with pytest.raises(PreconditionError):
        reduce_blowup(g, ground, p)  # sizes differ from targets + eps*n


def test_report_serialises_and_embedded_graph_parses():
    g = gen_structure_c(1, 0, 3, seed=9)
    report = reduce_complete(g, small_params())
    doc = json.loads(json.dumps(report.to_json_dict()))
    assert doc["complement_matching_bound"] == report.matching_bound
    assert doc["property_checks"]["output_below_thresholds"]
    assert parse_graph(doc["graph"]) == report.g_prime
    assert set(doc["audit"]) == {"input", "maximalized", "output"}


def test_reduce_complete_two_matching_mode():
    for seed in range(4):
        g = gen_structure_c(2, 1, 4, seed=seed)
        p = reduction_params(k=3, k0=3, alphas=[Fraction(2, 3)] * 3, beta=Fraction(7, 9),
                             eps=Fraction(2, 9), n=9, N=7, mode="two_matching")
        report = reduce_complete(g, p)
        assert report.g_prime.n == 7
        met, _ = has_cm_at_least(report.g_prime, p.thresholds, p.k0, "two_matching")
        assert not met


def test_reduce_blowup_loop_pattern():
    from conmatch.graphs import build_blowup

    ground = blowup_spec([4, 3], [(0, 0), (0, 1)])
    full = build_blowup(ground)
    layout = ground.part_layout()
    edges = {
        (u, v): 1 << (0 if layout[u] != layout[v] else 1) for (u, v) in full.edges
    }
    g = coloured_graph(7, 2, [], part_of=layout).with_edges(edges)
    p = reduction_params(k=2, k0=2, alphas=[Fraction(8, 7)] * 2, beta=Fraction(8, 7),
                         eps=Fraction(1, 7), n=7, Ns=[3, 2], s=2)
    report = reduce_blowup(g, ground, p)
    out = report.g_prime
    assert out.part_of == (0, 0, 0, 1, 1)
    # output colours the reduced ground completely: intra-part-0 pairs plus
    # the cross pairs
    assert out.edge_count() == 3 + 6
    assert all(report.property_checks.values())


def test_reduce_complete_bipartite_exempt_colour():
    # blue = complete bipartite block, exempt above k0 despite a large
    # connected matching; red components stay small
    A = set(range(4))
    edges = [(u, v, [1] if (u in A) != (v in A) else [0]) for u, v in all_pairs(9)]
    g = coloured_graph(9, 2, edges)
    p = reduction_params(k=2, k0=1, alphas=[Fraction(2, 3)] * 2, beta=Fraction(7, 9),
                         eps=Fraction(2, 9), n=9, N=7)
    report = reduce_complete(g, p)
    out = report.g_prime
    r = largest_mono_cm(out)
    assert r.best_cm[1] >= p.thresholds[1]  # over threshold unrestricted...
    assert r.best_nonbip_cm[1] == 0  # ...but inside a bipartite component
    met, _ = has_cm_at_least(out, p.thresholds, p.k0, p.mode)
    assert not met


def test_reduce_blowup_bipartite_exempt_colour():
    ground = blowup_spec([4, 5], [(0, 1)])
    g = gen_structure_b2(2, z_size=2, seed=0)
    p = reduction_params(k=2, k0=1, alphas=[Fraction(2, 3)] * 2, beta=Fraction(2, 3),
                         eps=Fraction(1, 9), n=9, Ns=[3, 4], delta=Fraction(1, 9))
    report = reduce_blowup(g, ground, p)
    out = report.g_prime
    assert largest_mono_cm(out).best_nonbip_cm[1] == 0
    met, _ = has_cm_at_least(out, p.thresholds, p.k0, p.mode)
    assert not met


def test_reduce_fails_loudly_outside_the_supported_regime():
    # a very lossy input with a huge deficit budget can starve the survivor
    # count; that surfaces as an internal check, not a silent wrong answer
    edges = [(2 * i, 2 * i + 1, [0]) for i in range(3)]
    g = coloured_graph(7, 2, edges)
    p = reduction_params(k=2, k0=1, alphas=[Fraction(4, 7)] * 2, beta=Fraction(5, 7),
                         eps=Fraction(2, 7), n=7, N=5, delta=Fraction(1))
    with pytest.raises(InternalCheckError):
        reduce_complete(g, p)


def test_small_component_count_after_maximalise():
    # complete case: at most one under-half-threshold component per colour
    p = small_params()
    for seed in (0, 4, 7):
        g1 = maximalize(gen_structure_c(1, 1, 2, seed=seed), COMPLETE, p)
        report = largest_mono_cm(g1)
        for c in range(3):
            small = [
                info for info in report.components[c] if 2 * info.size < p.thresholds[c]
            ]
            assert len(small) <= 1
