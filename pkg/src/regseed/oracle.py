"""Brute-force reference computations and machine checks of the lemmas.

Everything here is exact rational arithmetic over full enumerations and
deliberately shares no code with the numpy paths in ``statistics`` (only the
data model), so the two can be checked against each other.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

from .graph import ColoredGraph, Complex, GraphError, WorkCapExceeded, validate_complex

DEFAULT_WORK_CAP = 1_000_000


@dataclass(frozen=True)
class LemmaCheckResult:
    """One inequality ``lhs <= rhs`` evaluated on one instance."""

    lemma: str
    instance: dict
    lhs: Fraction
    rhs: Fraction
    tolerance: Fraction = Fraction(0)

    @property
    def slack(self):
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.slack >= -self.tolerance

    def to_dict(self) -> dict:
        return {"lemma": self.lemma, "instance": self.instance, "lhs": str(self.lhs),
                "rhs": str(self.rhs), "slack": str(self.slack), "holds": self.holds}


class _Lists:
    """Plain-list copy of a graph for fast scalar lookups."""

    def __init__(self, g: ColoredGraph):
        self.g = g
        self.r = g.r
        self.sizes = list(g.part_sizes)
        self.vc = [v.tolist() for v in g.vertex_colors]
        self.ec = {k: m.tolist() for k, m in g.edge_colors.items()}

    def edge(self, i, vi, j, vj):
        return self.ec[(i, j)][vi][vj] if i < j else self.ec[(j, i)][vj][vi]


def _all_maps(sizes: Sequence[int], per_part: int, cap: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    work = 1
    for n in sizes:
        work *= n ** per_part
        if work > cap:
            raise WorkCapExceeded(work, cap)
    per = [list(itertools.product(range(n), repeat=per_part)) for n in sizes]
    return itertools.product(*per)


def exact_densities(g: ColoredGraph):
    """(vertex densities {(i, c): Fraction}, pair densities {(i, j, c, a, b): Fraction})."""
    L = _Lists(g)
    vd = {}
    for i, colors in enumerate(L.vc):
        for c in set(colors):
            vd[(i, c)] = Fraction(colors.count(c), len(colors))
    pd = {}
    for (i, j), rows in L.ec.items():
        frame_count, color_count = {}, {}
        for vi, row in enumerate(rows):
            for vj, c in enumerate(row):
                f = (L.vc[i][vi], L.vc[j][vj])
                frame_count[f] = frame_count.get(f, 0) + 1
                color_count[(c,) + f] = color_count.get((c,) + f, 0) + 1
        for (c, a, b), n in color_count.items():
            pd[(i, j, c, a, b)] = Fraction(n, frame_count[(a, b)])
    return vd, pd


def _vertex_density(vd, i, c) -> Fraction:
    return vd.get((i, c), Fraction(0))


def _edge_density(pd, vd, i, j, c, a, b) -> Fraction:
    if (i, a) not in vd or (j, b) not in vd:
        raise GraphError(f"frame ({a}, {b}) of pair ({i}, {j}) has no edges")
    return pd.get((i, j, c, a, b), Fraction(0))


def exhaustive_embed(g: ColoredGraph, s: Complex, work_cap: int = DEFAULT_WORK_CAP) -> Fraction:
    """P over all |Omega|^(r h) maps that the visible part of s matches g."""
    validate_complex(s, g)
    L = _Lists(g)
    verts = s.visible_vertices()
    edges = s.visible_edges()
    hits = total = 0
    for phi in _all_maps(L.sizes, s.h, work_cap):
        total += 1
        if all(L.vc[i][phi[i][a]] == c for i, a, c in verts) and \
                all(L.edge(i, phi[i][a], j, phi[j][b]) == c for i, a, j, b, c in edges):
            hits += 1
    return Fraction(hits, total)


# ----------------------------------------------------------------------------
# counting lemma
# ----------------------------------------------------------------------------

def check_counting_lemma(g: ColoredGraph, s: Complex, work_cap: int = DEFAULT_WORK_CAP,
                         instance: Optional[dict] = None) -> LemmaCheckResult:
    """|P[edges | vertices] - prod d| <= |V2| max_D |E[prod_{e in D}(1[match e] - d_e) | vertices]|."""
    validate_complex(s, g)
    L = _Lists(g)
    vd, pd = exact_densities(g)
    verts = s.visible_vertices()
    edges = s.visible_edges()
    d = [_edge_density(pd, vd, i, j, c, s.vertices[i][a], s.vertices[j][b])
         for i, a, j, b, c in edges]
    # tally of edge-match patterns among maps matching all visible vertices
    patterns: dict[tuple[bool, ...], int] = {}
    n_cond = 0
    for phi in _all_maps(L.sizes, s.h, work_cap):
        if not all(L.vc[i][phi[i][a]] == c for i, a, c in verts):
            continue
        n_cond += 1
        pat = tuple(L.edge(i, phi[i][a], j, phi[j][b]) == c for i, a, j, b, c in edges)
        patterns[pat] = patterns.get(pat, 0) + 1
    if n_cond == 0:
        raise GraphError("conditioning event has probability zero")
    all_match = Fraction(patterns.get((True,) * len(edges), 0), n_cond)
    lhs = abs(all_match - math.prod(d, start=Fraction(1)))
    worst = Fraction(0)
    for size in range(1, len(edges) + 1):
        for D in itertools.combinations(range(len(edges)), size):
            acc = Fraction(0)
            for pat, n in patterns.items():
                acc += n * math.prod((int(pat[k]) - d[k] for k in D), start=Fraction(1))
            worst = max(worst, abs(acc / n_cond))
    rhs = len(edges) * worst
    return LemmaCheckResult("counting", instance or {"complex": s.to_dict()}, lhs, rhs)


# ----------------------------------------------------------------------------
# Cauchy-Schwarz under refinement
# ----------------------------------------------------------------------------

def mean_square_of_class_means(X: Sequence, labels: Sequence) -> Fraction:
    """E over w0 of (E[X | class of w0])**2, uniform measure."""
    sums, sizes = {}, {}
    for x, lab in zip(X, labels):
        sums[lab] = sums.get(lab, Fraction(0)) + Fraction(x)
        sizes[lab] = sizes.get(lab, 0) + 1
    n = len(X)
    return sum((sums[k] ** 2 / sizes[k] for k in sums), Fraction(0)) / n


def check_cauchy_refinement(space_size: int, X: Sequence, coarse: Sequence, fine: Sequence,
                            instance: Optional[dict] = None) -> LemmaCheckResult:
    """lhs = coarse mean square of class means, rhs = fine one; refinement must not decrease it."""
    if not (len(X) == len(coarse) == len(fine) == space_size):
        raise ValueError("X, coarse and fine must all have space_size entries")
    owner = {}
    for c, f in zip(coarse, fine):
        if owner.setdefault(f, c) != c:
            raise ValueError(f"fine class {f!r} straddles coarse classes")
    lhs = mean_square_of_class_means(X, coarse)
    rhs = mean_square_of_class_means(X, fine)
    return LemmaCheckResult("cauchy", instance or {"space_size": space_size}, lhs, rhs)


# ----------------------------------------------------------------------------
# mean-square lemma
# ----------------------------------------------------------------------------

def _regularized_classes(L: _Lists, phi: tuple[tuple[int, ...], ...], part: int) -> list:
    """Color of every vertex of ``part`` in G/phi, as a raw tuple."""
    out = []
    for v in range(L.sizes[part]):
        sig = [L.vc[part][v]]
        for j in range(L.r):
            if j != part:
                sig.extend(L.edge(part, v, j, u) for u in phi[j])
        out.append(tuple(sig))
    return out


def _class_mean_square(L: _Lists, i: int, j: int, phi, value, restrict=None) -> Fraction:
    """E over e* (uniform on Omega_I, or on ``restrict`` edges) of
    (E[value(e) | e ~ e* under dG/phi])**2."""
    ci = _regularized_classes(L, phi, i)
    cj = _regularized_classes(L, phi, j)
    sums, sizes = {}, {}
    n_edges = 0
    for vi in range(L.sizes[i]):
        for vj in range(L.sizes[j]):
            key = (ci[vi], cj[vj])
            sums[key] = sums.get(key, Fraction(0)) + value(vi, vj)
            sizes[key] = sizes.get(key, 0) + 1
    acc = Fraction(0)
    for key, tot in sums.items():
        if restrict is not None and not restrict(key):
            continue
        n_edges += sizes[key]
        acc += tot * tot / sizes[key]
    if n_edges == 0:
        raise GraphError("no edge satisfies the conditioning frame")
    return acc / n_edges


def _mean_square_parts(g, s, e0, m, F, work_cap):
    validate_complex(s, g)
    if e0 not in s.edges:
        raise GraphError(f"e0={e0} is not a visible edge of the complex")
    if m < 1:
        raise ValueError("m must be positive")
    L = _Lists(g)
    vd, _ = exact_densities(g)
    verts = s.visible_vertices()
    edges = s.visible_edges()
    i0, a0, j0, b0 = e0
    frame0 = (s.vertices[i0][a0], s.vertices[j0][b0])
    # E over Phi(h) of prod F * prod vertex indicators
    acc = Fraction(0)
    total = 0
    for phi in _all_maps(L.sizes, s.h, work_cap):
        total += 1
        if not all(L.vc[i][phi[i][a]] == c for i, a, c in verts):
            continue
        prod = Fraction(1)
        for i, a, j, b, _ in edges:
            prod *= F[(i, a, j, b)][L.edge(i, phi[i][a], j, phi[j][b])]
            if prod == 0:
                break
        acc += prod
    e_prod = acc / total
    p_vertices = math.prod((_vertex_density(vd, i, c) for i, a, c in verts), start=Fraction(1))
    p_outside = math.prod((_vertex_density(vd, i, c) for i, a, c in verts
                           if (i, a) not in ((i0, a0), (j0, b0))), start=Fraction(1))
    f0 = F[e0]

    def plain(vi, vj):
        return Fraction(f0[L.edge(i0, vi, j0, vj)])

    def framed(vi, vj):
        if (L.vc[i0][vi], L.vc[j0][vj]) != frame0:
            return Fraction(0)
        return plain(vi, vj)

    def in_frame(key):
        return (key[0][0], key[1][0]) == frame0

    ms_framed = Fraction(0)
    ms_cond = Fraction(0)
    n_outer = 0
    for phi in _all_maps(L.sizes, m * s.h, work_cap):
        n_outer += 1
        ms_framed += _class_mean_square(L, i0, j0, phi, framed)
        if p_vertices:
            ms_cond += _class_mean_square(L, i0, j0, phi, plain, in_frame)
    return e_prod, p_vertices, p_outside, ms_framed / n_outer, ms_cond / n_outer


def check_mean_square_lemma(g: ColoredGraph, s: Complex, e0, m: int,
                            F: Mapping[tuple, Sequence], work_cap: int = DEFAULT_WORK_CAP,
                            instance: Optional[dict] = None) -> LemmaCheckResult:
    """The unconditioned mean-square bound at edge ``e0``.

    ``F[e][c]`` gives F_e on edge color c, values in [-1, 1].
    """
    e_prod, p_v, p_out, ms_framed, _ = _mean_square_parts(g, s, e0, m, F, work_cap)
    lhs = e_prod ** 2
    rhs = ms_framed * p_v * (p_out + Fraction(1, m))
    return LemmaCheckResult("meansquare", instance or {"e0": list(e0), "m": m}, lhs, rhs)


def check_mean_square_conditional(g: ColoredGraph, s: Complex, e0, m: int,
                                  F: Mapping[tuple, Sequence], work_cap: int = DEFAULT_WORK_CAP,
                                  instance: Optional[dict] = None) -> Optional[LemmaCheckResult]:
    """The conditional form (factor 2), or None when 1/m exceeds the outside-vertex density product."""
    e_prod, p_v, p_out, _, ms_cond = _mean_square_parts(g, s, e0, m, F, work_cap)
    if Fraction(1, m) > p_out or p_v == 0:
        return None
    lhs = (e_prod / p_v) ** 2
    rhs = 2 * ms_cond
    return LemmaCheckResult("meansquare_conditional", instance or {"e0": list(e0), "m": m}, lhs, rhs)


# ----------------------------------------------------------------------------
# energy
# ----------------------------------------------------------------------------

def energy(g: ColoredGraph, m: int, work_cap: int = DEFAULT_WORK_CAP) -> dict:
    """{(i, j, c): E over phi in Phi(m), e~ in Omega_I of P[G(e) = c | e ~ e~ under dG/phi]**2},
    for every pair color c that occurs."""
    L = _Lists(g)
    colors = {(i, j): sorted({c for row in rows for c in row}) for (i, j), rows in L.ec.items()}
    acc = {(i, j, c): Fraction(0) for (i, j), cs in colors.items() for c in cs}
    n = 0
    for phi in _all_maps(L.sizes, m, work_cap):
        n += 1
        for (i, j), cs in colors.items():
            for c in cs:
                acc[(i, j, c)] += _class_mean_square(
                    L, i, j, phi, lambda vi, vj, i=i, j=j, c=c: Fraction(int(L.edge(i, vi, j, vj) == c)))
    return {k: v / n for k, v in acc.items()}


# ----------------------------------------------------------------------------
# random instances and suites
# ----------------------------------------------------------------------------

def random_graph(rng: random.Random, sizes: Sequence[int], b1: int, b2: int) -> ColoredGraph:
    """Uniform random colors; palettes are the full b1 / b2."""
    r = len(sizes)
    vertex = [[rng.randrange(b1) for _ in range(n)] for n in sizes]
    edges = {(i, j): [[rng.randrange(b2) for _ in range(sizes[j])] for _ in range(sizes[i])]
             for i, j in itertools.combinations(range(r), 2)}
    return ColoredGraph(sizes, vertex, edges, [b1] * r, {k: b2 for k in edges}, (b1, b2))


def random_complex(rng: random.Random, g: ColoredGraph, h: int, p_vertex: float = 0.9,
                   p_edge: float = 0.85, full: bool = False) -> Complex:
    """Visible vertex colors are copied from random graph vertices so the
    vertex event has positive probability; edges between visible endpoints
    are visible with probability ``p_edge``."""
    verts, edges = {}, {}
    for i in range(g.r):
        for a in range(h):
            if full or rng.random() < p_vertex:
                verts[(i, a)] = int(g.vertex_colors[i][rng.randrange(g.part_sizes[i])])
    for i, j in g.pairs:
        for a in range(h):
            for b in range(h):
                if (i, a) in verts and (j, b) in verts and (full or rng.random() < p_edge):
                    edges[(i, a, j, b)] = rng.randrange(g.edge_palettes[(i, j)])
    return Complex.build(g.r, h, verts, edges)


def counting_suite(instances: int, seed: int, work_cap: int = DEFAULT_WORK_CAP) -> list[LemmaCheckResult]:
    """r = 2, h = 2, |Omega_i| in {2, 3}, random 2-colorings."""
    out = []
    for k in range(instances):
        rng = random.Random(f"counting:{seed}:{k}")
        sizes = [rng.choice((2, 3)), rng.choice((2, 3))]
        g = random_graph(rng, sizes, rng.choice((1, 2)), 2)
        s = random_complex(rng, g, 2)
        out.append(check_counting_lemma(g, s, work_cap, {"seed": seed, "index": k, "sizes": sizes,
                                                          "complex": s.to_dict()}))
    return out


def meansquare_suite(instances: int, seed: int, work_cap: int = DEFAULT_WORK_CAP) -> list[LemmaCheckResult]:
    """h = 1, m in {1, 2}; r = 2 with |Omega_i| <= 3, every third instance r = 3
    with |Omega_i| <= 2. Both forms are checked at every visible edge. F is
    centered (1[color] - d) on every fourth instance, random otherwise."""
    out = []
    for k in range(instances):
        rng = random.Random(f"meansquare:{seed}:{k}")
        if k % 3 == 2:
            sizes = [rng.choice((1, 2)) for _ in range(3)]
        else:
            sizes = [rng.choice((1, 2, 3)), rng.choice((2, 3))]
        g = random_graph(rng, sizes, rng.choice((1, 2)), rng.choice((2, 3)))
        s = random_complex(rng, g, 1, full=True)
        m = rng.choice((1, 2))
        vd, pd = exact_densities(g)
        F = {}
        for key, c in s.edges.items():
            i, a, j, b = key
            pal = g.edge_palettes[(i, j)]
            if k % 4 == 0:
                d = _edge_density(pd, vd, i, j, c, s.vertices[i][a], s.vertices[j][b])
                F[key] = [int(x == c) - d for x in range(pal)]
            else:
                F[key] = [Fraction(rng.randint(-4, 4), 4) for _ in range(pal)]
        info = {"seed": seed, "index": k, "sizes": sizes, "m": m, "complex": s.to_dict()}
        for e0 in s.edges:
            out.append(check_mean_square_lemma(g, s, e0, m, F, work_cap, dict(info, e0=list(e0))))
            cond = check_mean_square_conditional(g, s, e0, m, F, work_cap, dict(info, e0=list(e0)))
            if cond is not None:
                out.append(cond)
    return out


def cauchy_suite(instances: int, seed: int) -> list[LemmaCheckResult]:
    """Random X in [0, 1] (rational) over 8 points with random nested partitions."""
    out = []
    for k in range(instances):
        rng = random.Random(f"cauchy:{seed}:{k}")
        n = 8
        X = [Fraction(rng.randint(0, 16), 16) for _ in range(n)]
        fine = [rng.randrange(rng.randint(1, n)) for _ in range(n)]
        merge = {f: rng.randrange(rng.randint(1, 4)) for f in set(fine)}
        coarse = [merge[f] for f in fine]
        out.append(check_cauchy_refinement(n, X, coarse, fine, {"seed": seed, "index": k}))
    return out


def energy_suite(instances: int, seed: int, ms: Sequence[int] = (0, 1, 2),
                 work_cap: int = DEFAULT_WORK_CAP) -> list[LemmaCheckResult]:
    """Monotonicity energy(m) <= energy(m') along ``ms`` for every occurring pair
    color, plus the telescoped total increment <= 1."""
    out = []
    for k in range(instances):
        rng = random.Random(f"energy:{seed}:{k}")
        sizes = [rng.choice((2, 3, 4)), rng.choice((2, 3, 4))]
        g = random_graph(rng, sizes, rng.choice((1, 2)), rng.choice((2, 3)))
        levels = [energy(g, m, work_cap) for m in ms]
        for key in levels[0]:
            info = {"seed": seed, "index": k, "sizes": sizes, "pair_color": list(key)}
            for (m1, e1), (m2, e2) in zip(zip(ms, levels), zip(ms[1:], levels[1:])):
                out.append(LemmaCheckResult("energy_monotone", dict(info, m=[m1, m2]), e1[key], e2[key]))
            increments = sum((b[key] - a[key] for a, b in zip(levels, levels[1:])), Fraction(0))
            out.append(LemmaCheckResult("energy_telescope", info, increments, Fraction(1)))
            out.append(LemmaCheckResult("energy_bounded", info, levels[-1][key], Fraction(1)))
    return out


LEMMAS = ("counting", "meansquare", "cauchy", "energy")


def verify(lemma: str = "all", instances: int = 100, seed: int = 1,
           work_cap: int = DEFAULT_WORK_CAP) -> dict:
    """Run lemma suites; mean-square uses instances // 2 graphs and energy
    instances // 5, matching the default acceptance sizes (100/50/100/20)."""
    chosen = LEMMAS if lemma == "all" else (lemma,)
    if any(x not in LEMMAS for x in chosen):
        raise ValueError(f"unknown lemma {lemma!r}")
    results = []
    for name in chosen:
        if name == "counting":
            results += counting_suite(instances, seed, work_cap)
        elif name == "meansquare":
            results += meansquare_suite(max(1, instances // 2), seed, work_cap)
        elif name == "cauchy":
            results += cauchy_suite(instances, seed)
        else:
            results += energy_suite(max(1, instances // 5), seed, work_cap=work_cap)
    violations = [r for r in results if not r.holds]
    summary = {}
    for r in results:
        entry = summary.setdefault(r.lemma, {"checks": 0, "violations": 0})
        entry["checks"] += 1
        entry["violations"] += not r.holds
    return {"lemma": lemma, "instances": instances, "seed": seed, "work_cap": work_cap,
            "summary": summary, "violations": len(violations),
            "results": [r.to_dict() for r in results]}


# ----------------------------------------------------------------------------
# the main theorem, empirically
# ----------------------------------------------------------------------------

@dataclass
class TheoremEstimate:
    mean: float
    stderr: float
    scores: list
    draws: list
    markov_fraction: float
    markov_stderr: float

    @property
    def markov_holds(self) -> bool:
        """fraction(score > sqrt(mean)) <= sqrt(mean) + 3 stderr."""
        return self.markov_fraction <= math.sqrt(self.mean) + 3 * self.markov_stderr


def markov_check(scores: Sequence[float]) -> tuple[float, float, float]:
    """(mean, fraction of scores above sqrt(mean), stderr of that fraction)."""
    t = len(scores)
    mean = sum(scores) / t
    frac = sum(x > math.sqrt(mean) for x in scores) / t
    return mean, frac, math.sqrt(frac * (1 - frac) / t)


def main_theorem_estimate(g: ColoredGraph, schedule, h: int, eps, trials: int, seed: int = 0,
                          plan=None, M: Optional[int] = None, probes: int = 0) -> TheoremEstimate:
    """Draw (n, phi) ``trials`` times as in the theorem and average the score of G/phi."""
    from .regularize import regularize
    from .schedule import choose_n_and_sample
    from .statistics import SamplingPlan, default_probes, regularity_report

    plan = plan or SamplingPlan()
    scores, draws = [], []
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        n, phi = choose_n_and_sample(schedule, g.part_sizes, rng)
        gstar = regularize(g, phi)
        sub = SamplingPlan(plan.mode, plan.sample_count, plan.work_cap, seed * 1_000_003 + t, plan.eta_samples)
        suite = default_probes(gstar, h, probes, rng) if probes else []
        report = regularity_report(gstar, h, eps, suite, sub, M)
        scores.append(report.score)
        draws.append((n, schedule.m(n)))
    mean, frac, fse = markov_check(scores)
    se = float(np.std(scores, ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return TheoremEstimate(mean, se, scores, draws, frac, fse)
