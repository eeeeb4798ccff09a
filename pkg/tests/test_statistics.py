import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from regseed.generators import half_graph, monochromatic, uniform_random
from regseed.graph import (ColoredGraph, Complex, PartitionwiseMap, TotalColor, WorkCapExceeded,
                           validate_graph)
from regseed.regularize import regularize
from regseed.statistics import (ErrorTable, SamplingPlan, ZeroSupport, bad_colors,
                                conditional_embed_probability, counting_check, default_probes,
                                delta_table, density_table, embed_probability, eta, eta_table,
                                regularity_report, sample_hit_masks)

from conftest import B, W

EXACT = SamplingPlan(mode="exhaustive")


def black_edge(h=1):
    return Complex.build(2, h, {(0, 0): 0, (1, 0): 0}, {(0, 0, 1, 0): B})


# ---------------------------------------------------------------- densities

def test_four_vertex_densities(four):
    dens = density_table(four)
    assert dens.fraction(TotalColor((0, 1), B, (0, 0))) == Fraction(3, 4)
    assert dens.fraction(TotalColor((0, 1), W, (0, 0))) == Fraction(1, 4)
    assert dens.fraction(TotalColor((0,), 0)) == 1


def test_monochromatic_densities_are_one():
    g = monochromatic([3, 4, 2])
    dens = density_table(g)
    for tc, _ in dens.occurring():
        assert dens.density(tc) == 1.0


def test_zero_support_frame():
    g = ColoredGraph([2, 2], [[0, 0], [0, 0]], {(0, 1): [[0, 1], [1, 0]]}, [2, 1], {(0, 1): 2}, (2, 2))
    dens = density_table(g)
    tc = TotalColor((0, 1), 0, (1, 0))
    assert dens.count(tc) == (0, 0)
    with pytest.raises(ZeroSupport):
        dens.density(tc)
    with pytest.raises(ZeroSupport):
        dens.distribution(0, 1, 1, 0)
    assert dens.density_or_zero(tc) == 0.0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=2, max_size=3), st.integers(1, 3), st.integers(1, 4),
       st.integers(0, 2 ** 32 - 1))
def test_distributions_sum_to_one(sizes, b1, b2, seed):
    g = uniform_random(sizes, b1, b2, seed)
    dens = density_table(g)
    for i in range(g.r):
        assert math.isclose(dens.vertex_distribution(i).sum(), 1.0, abs_tol=1e-12)
    for i, j in g.pairs:
        sup = dens.support[(i, j)]
        for a, b in np.argwhere(sup > 0):
            assert math.isclose(dens.distribution(i, j, a, b).sum(), 1.0, abs_tol=1e-12)


@pytest.mark.parametrize("tau", [0.1, 0.25, 0.5])
@pytest.mark.parametrize("seed", range(5))
def test_low_density_edges_are_rare(tau, seed):
    """P_e[d(G<e>) <= tau] <= |C_I| tau, by exact enumeration over edges; for
    two edge colors and tau < 1/2 the sharper bound tau holds."""
    g = uniform_random([6, 7], 2, 2 + seed % 2, seed)
    dens = density_table(g)
    for i, j in g.pairs:
        low = 0
        for vi, vj in itertools.product(range(g.part_sizes[i]), range(g.part_sizes[j])):
            tc = TotalColor((i, j), g.edge_color(i, vi, j, vj),
                            (int(g.vertex_colors[i][vi]), int(g.vertex_colors[j][vj])))
            low += dens.fraction(tc) <= Fraction(tau).limit_denominator()
        p = Fraction(low, g.part_sizes[i] * g.part_sizes[j])
        pal = g.edge_palettes[(i, j)]
        assert p <= pal * Fraction(tau).limit_denominator()
        if pal == 2 and tau < 0.5:
            assert p <= Fraction(tau).limit_denominator()


def test_tau_bound_without_palette_factor_can_fail():
    # two equally likely colors: every edge has density 1/2
    g = ColoredGraph([2, 1], [[0, 0], [0]], {(0, 1): [[0], [1]]}, [1, 1], {(0, 1): 2}, (1, 2))
    dens = density_table(g)
    edges = [(tc, n) for tc, n in dens.occurring() if not tc.is_vertex]
    p_low = sum(n for tc, n in edges if dens.density(tc) <= 0.5) / 2
    assert p_low == 1.0 > 0.5
    assert p_low <= g.edge_palettes[(0, 1)] * 0.5


# ---------------------------------------------------------------- embedding

def test_embed_black_edge_exact(four):
    est = embed_probability(four, black_edge(), EXACT)
    assert est.value == 0.75 and est.stderr == 0.0 and est.exact
    assert conditional_embed_probability(four, black_edge(), EXACT).value == 0.75


def test_embed_trivial_cases(four):
    assert embed_probability(four, Complex.build(2, 2), EXACT).value == 1.0
    g = ColoredGraph([2, 2], [[0, 0], [0, 0]], {(0, 1): [[0, 1], [1, 0]]}, [1, 1], {(0, 1): 3}, (1, 3))
    s = Complex.build(2, 1, {(0, 0): 0, (1, 0): 0}, {(0, 0, 1, 0): 2})
    assert embed_probability(g, s, EXACT).value == 0.0
    s = Complex.build(2, 2, {(0, 0): 0, (1, 1): 0})
    assert conditional_embed_probability(four, s, EXACT).value == 1.0


def test_conditional_zero_support():
    g = ColoredGraph([2, 2], [[0, 0], [0, 0]], {(0, 1): [[0, 1], [1, 0]]}, [2, 1], {(0, 1): 2}, (2, 2))
    s = Complex.build(2, 1, {(0, 0): 1, (1, 0): 0}, {(0, 0, 1, 0): 0})
    with pytest.raises(ZeroSupport):
        conditional_embed_probability(g, s, EXACT)


def test_exhaustive_work_cap(four):
    g = uniform_random([30, 30], 1, 2, 0)
    s = Complex.build(2, 3, {(i, a): 0 for i in range(2) for a in range(3)})
    with pytest.raises(WorkCapExceeded):
        embed_probability(g, s, SamplingPlan(mode="exhaustive", work_cap=1000))


def test_conditional_matches_density_product():
    g = uniform_random([300, 300, 300], 1, 2, seed=21)
    dens = density_table(g)
    s = Complex.build(3, 1, {(0, 0): 0, (1, 0): 0, (2, 0): 0},
                      {(0, 0, 1, 0): 0, (0, 0, 2, 0): 1, (1, 0, 2, 0): 0})
    est = conditional_embed_probability(g, s, SamplingPlan("monte_carlo", 40000, seed=3))
    prod = math.prod(dens.density(s.edge_total_color(k)) for k in s.edges)
    assert abs(est.value - prod) <= 3 * est.stderr


def test_monte_carlo_is_seeded(four):
    plan = SamplingPlan("monte_carlo", 500, seed=4)
    assert embed_probability(four, black_edge(), plan) == embed_probability(four, black_edge(), plan)


# ---------------------------------------------------------------- eta

def eta_brute(g, k, tc):
    """Independent exact eta: enumerate Phi(k), bucket edges by the classes of g/phi'."""
    i, j = tc.index
    a, b = tc.frame
    vc = [v.tolist() for v in g.vertex_colors]
    mat = g.matrix(i, j).tolist()
    in_frame = [(x, y) for x in range(g.part_sizes[i]) for y in range(g.part_sizes[j])
                if vc[i][x] == a and vc[j][y] == b]
    d = Fraction(sum(mat[x][y] == tc.color for x, y in in_frame), len(in_frame))
    maps = list(itertools.product(*[list(itertools.product(range(n), repeat=k)) for n in g.part_sizes]))
    total = Fraction(0)
    for phi in maps:
        def cls(part, v):
            return (vc[part][v],) + tuple(g.edge_color(part, v, q, u) for q in range(g.r) if q != part
                                          for u in phi[q])
        buckets = {}
        for x in range(g.part_sizes[i]):
            for y in range(g.part_sizes[j]):
                key = (cls(i, x), cls(j, y))
                hit, n = buckets.get(key, (0, 0))
                buckets[key] = (hit + (mat[x][y] == tc.color), n + 1)
        acc = Fraction(0)
        for x, y in in_frame:
            hit, n = buckets[(cls(i, x), cls(j, y))]
            acc += (Fraction(hit, n) - d) ** 2
        total += acc / len(in_frame)
    return total / len(maps)


@pytest.mark.parametrize("seed,k", [(0, 1), (1, 1), (2, 2), (3, 2)])
def test_eta_matches_brute_force(seed, k):
    g = uniform_random([3, 3], 2, 2, seed)
    table = eta_table(g, k, EXACT)
    assert table.exact
    for tc, _ in density_table(g).occurring():
        if not tc.is_vertex:
            assert math.isclose(table.get(tc)[0], float(eta_brute(g, k, tc)), abs_tol=1e-12)


def test_eta_three_parts_matches_brute_force():
    g = uniform_random([2, 3, 2], 1, 2, 8)
    table = eta_table(g, 1, EXACT)
    for tc, _ in density_table(g).occurring():
        if not tc.is_vertex:
            assert math.isclose(table.get(tc)[0], float(eta_brute(g, 1, tc)), abs_tol=1e-12)


def test_eta_monochromatic_zero():
    g = monochromatic([4, 4])
    assert eta(g, TotalColor((0, 1), 0, (0, 0)), 3, EXACT).value == 0.0


def test_eta_half_graph_positive():
    g = half_graph(8)
    est = eta(g, TotalColor((0, 1), B, (0, 0)), 1, EXACT)
    assert est.exact and est.value > 0.01
    assert math.isclose(est.value, float(eta_brute(g, 1, TotalColor((0, 1), B, (0, 0)))), abs_tol=1e-12)


def test_eta_random_graph_small():
    g = uniform_random([400, 400], 1, 2, seed=5)
    est = eta(g, TotalColor((0, 1), 0, (0, 0)), 1, SamplingPlan("monte_carlo", 300, seed=1), h=1)
    # one sampled vertex per part splits each side in two halves; the class-conditional
    # densities of a random graph then deviate from 1/2 by O(1/sqrt(n))
    assert est.value < 0.002
    assert est.stderr < est.value


def test_eta_vertex_rejected(four):
    with pytest.raises(ValueError):
        eta(four, TotalColor((0,), 0), 1, EXACT)


def test_hit_masks_coupon_path_matches_direct():
    rng = np.random.default_rng(2)
    n, k, reps = 6, 20, 40000
    direct = rng.integers(0, n, size=(reps, k))
    direct_hits = np.array([len(set(row)) for row in direct.tolist()])
    coupon = sample_hit_masks(n, k, reps, rng).sum(axis=1)
    expected = n * (1 - (1 - 1 / n) ** k)
    assert abs(direct_hits.mean() - expected) < 0.02
    assert abs(coupon.mean() - expected) < 0.02
    for h in range(1, n + 1):
        assert abs((coupon == h).mean() - (direct_hits == h).mean()) < 0.015


def test_hit_masks_huge_k_hits_everything():
    masks = sample_hit_masks(10, 10 ** 40, 5, np.random.default_rng(0))
    assert masks.all()


# ---------------------------------------------------------------- BAD and delta

def test_bad_monochromatic_empty():
    assert bad_colors(monochromatic([3, 3]), Fraction(1, 100)) == set()


def test_bad_small_vertex_class():
    colors = [0] * 99 + [1]
    g = ColoredGraph([100, 2], [colors, [0, 0]], {(0, 1): np.zeros((100, 2))}, [2, 1], {(0, 1): 1}, (2, 1))
    validate_graph(g)
    bad = bad_colors(g, Fraction(1, 4))
    assert TotalColor((0,), 1) in bad
    assert TotalColor((0, 1), 0, (1, 0)) in bad
    assert TotalColor((0, 1), 0, (0, 0)) not in bad


def test_bad_empty_for_tiny_eps1():
    g = uniform_random([5, 5], 2, 2, 3)
    assert bad_colors(g, Fraction(1, 10 ** 12)) == set()


def test_delta_monochromatic_zero():
    g = monochromatic([4, 3])
    errors = delta_table(g, 1, "0.25", EXACT, M=2)
    assert all(e.delta == 0.0 for e in errors.entries.values())
    assert regularity_report(g, 1, "0.25", [], EXACT, M=2).score == 0.0


@pytest.mark.parametrize("seed", range(4))
def test_delta_properties(seed):
    g = uniform_random([4, 4], 2, 2, seed)
    dens = density_table(g)
    errors = delta_table(g, 1, "0.5", EXACT, M=1, densities=dens)
    bad = bad_colors(g, errors.eps1, dens)
    for tc, entry in errors.entries.items():
        assert 0.0 <= entry.delta <= 1.0
        if tc.is_vertex:
            assert entry.delta == 0.0
        elif tc in bad:
            assert entry.delta == 1.0


def test_delta_clamps_at_one():
    g = half_graph(6)
    errors = delta_table(g, 2, "0.25", EXACT, M=1)
    assert max(e.delta for e in errors.entries.values()) == 1.0


# ---------------------------------------------------------------- counting check and report

def all_ones(eps1=Fraction(1, 4)):
    return ErrorTable({}, 1, eps1, 1.0, 1, True)


def test_counting_monochromatic_margin_zero():
    g = monochromatic([3, 3])
    dens = density_table(g)
    errors = delta_table(g, 2, "0.25", EXACT, M=1, densities=dens)
    s = Complex.build(2, 2, {(i, a): 0 for i in range(2) for a in range(2)},
                      {(0, a, 1, b): 0 for a in range(2) for b in range(2)})
    assert counting_check(g, s, dens, errors, EXACT).margin == 0.0


@pytest.mark.parametrize("seed", range(3))
def test_counting_trivial_delta_margin_zero(seed):
    g = uniform_random([4, 5], 2, 3, seed)
    dens = density_table(g)
    for s in default_probes(g, 2, 10, np.random.default_rng(seed), dens):
        assert counting_check(g, s, dens, all_ones(), EXACT).margin == 0.0


def test_counting_random_graph_probes():
    g = uniform_random([200, 200], 1, 2, seed=17)
    report = regularity_report(g, 2, "0.25", default_probes(g, 2, 100, np.random.default_rng(1)),
                               SamplingPlan("monte_carlo", 20000, seed=2, eta_samples=50), M=1)
    zero = sum(p.margin == 0.0 for p in report.probes)
    assert zero >= 0.99 * len(report.probes)


def test_counting_margin_zero_with_schedule_delta():
    """Exhaustive embeddings, delta from the proof's budget: every BAD-free probe has margin 0."""
    for seed in range(6):
        g = uniform_random([3, 3], 1, 2, seed)
        dens = density_table(g)
        errors = delta_table(g, 1, "0.5", SamplingPlan("auto", 2000, seed=seed), densities=dens)
        for s in default_probes(g, 1, 8, np.random.default_rng(seed), dens):
            if not any(errors.entries.get(s.edge_total_color(k)) is None or
                       errors.entries[s.edge_total_color(k)].is_bad for k in s.edges):
                assert counting_check(g, s, dens, errors, EXACT).margin == 0.0


def test_report_all_ones_score_is_palette():
    g = uniform_random([4, 4, 3], 1, 3, 2)
    report = regularity_report(g, 1, "0.25", [], EXACT, errors=all_ones())
    assert report.score == 3.0


def test_report_serializes(four):
    report = regularity_report(four, 1, "0.5", [black_edge()], EXACT, M=1)
    doc = report.to_dict()
    assert set(doc) >= {"score", "pairs", "probes", "plan", "probe_coverage"}
    assert doc["plan"]["mode"] == "exhaustive"
    assert doc["pairs"][0]["palette"] == 2


def test_half_graph_score_drops_with_m():
    g = half_graph(32)
    plan = SamplingPlan("monte_carlo", 2000, seed=0)
    means = []
    for m in (0, 4):
        scores = []
        for t in range(20):
            rng = np.random.default_rng([m, t])
            phi = PartitionwiseMap(tuple(tuple(rng.integers(0, 32, m).tolist()) for _ in range(2)))
            scores.append(regularity_report(regularize(g, phi), 2, "0.25", [], plan).score)
        means.append(np.mean(scores))
    assert means[0] == 2.0 and means[1] < means[0]


def test_auto_mode_switches(four):
    assert embed_probability(four, black_edge(), SamplingPlan("auto")).exact
    g = uniform_random([50, 50], 1, 2, 0)
    s = Complex.build(2, 4, {(i, a): 0 for i in range(2) for a in range(4)})
    assert not embed_probability(g, s, SamplingPlan("auto", 100)).exact
