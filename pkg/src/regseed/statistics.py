"""Densities, embedding probabilities, the eta/delta error machinery and
certified regularity scores.

Expectations over edges are exact (full enumeration of each pair of parts).
Expectations over random partitionwise maps are exact when the enumeration
fits the plan's work cap and Monte Carlo otherwise.
"""

from __future__ import annotations

import math
import zlib
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .graph import (ColoredGraph, Complex, TotalColor, WorkCapExceeded,
                    count_maps, enumerate_maps, validate_complex)
from .regularize import intern_rows
from .schedule import (Number, as_fraction, constant_c, constant_c_squared, epsilon1,
                       sample_budget, sqrt_epsilon1)

MODES = ("exhaustive", "monte_carlo", "auto")


class ZeroSupport(ValueError):
    """A conditional probability was requested on an event of probability zero."""


@dataclass(frozen=True)
class SamplingPlan:
    """How to evaluate expectations over random maps.

    ``exhaustive`` enumerates and fails past ``work_cap``; ``monte_carlo``
    draws ``sample_count`` maps; ``auto`` enumerates when it fits the cap.
    ``eta_samples`` overrides the Monte Carlo count for the outer
    expectation of eta.
    """

    mode: str = "auto"
    sample_count: int = 20000
    work_cap: int = 1_000_000
    seed: int = 0
    eta_samples: Optional[int] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown sampling mode {self.mode!r}")
        if self.sample_count < 1 or self.work_cap < 1:
            raise ValueError("sample_count and work_cap must be positive")

    def rng(self, *keys) -> np.random.Generator:
        """Generator derived from (seed, keys); independent of call order."""
        words = [self.seed]
        for k in keys:
            words.append(zlib.crc32(k.encode()) if isinstance(k, str) else int(k))
        return np.random.default_rng(words)

    def use_exhaustive(self, work: int) -> bool:
        if self.mode == "exhaustive":
            if work > self.work_cap:
                raise WorkCapExceeded(work, self.work_cap)
            return True
        return self.mode == "auto" and work <= self.work_cap

    def to_dict(self) -> dict:
        return {"mode": self.mode, "N": self.sample_count, "work_cap": self.work_cap,
                "seed": self.seed, "eta_samples": self.eta_samples}


class Estimate(NamedTuple):
    value: float
    stderr: float
    samples: int
    exact: bool


# ----------------------------------------------------------------------------
# densities
# ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DensityTable:
    """Exact color counts of a graph.

    ``vertex_counts[i][c]`` counts color-c vertices of part i.
    ``pair_counts[(i, j)][a, b, c]`` counts edges of color c whose endpoints
    have colors a (part i) and b (part j); ``support[(i, j)][a, b]`` sums
    over c.
    """

    part_sizes: tuple[int, ...]
    vertex_counts: tuple[np.ndarray, ...]
    pair_counts: dict
    support: dict

    def vertex_distribution(self, i: int) -> np.ndarray:
        return self.vertex_counts[i] / self.part_sizes[i]

    def distribution(self, i: int, j: int, a: int, b: int) -> np.ndarray:
        sup = self.support[(i, j)][a, b]
        if sup == 0:
            raise ZeroSupport(f"frame ({a}, {b}) of pair ({i}, {j}) has no edges")
        return self.pair_counts[(i, j)][a, b] / sup

    def count(self, tc: TotalColor) -> tuple[int, int]:
        """(numerator, denominator) of the relative density; denominator may be 0."""
        if tc.is_vertex:
            (i,) = tc.index
            counts = self.vertex_counts[i]
            num = int(counts[tc.color]) if 0 <= tc.color < len(counts) else 0
            return num, self.part_sizes[i]
        i, j = tc.index
        a, b = tc.frame
        pc = self.pair_counts[(i, j)]
        if not (0 <= a < pc.shape[0] and 0 <= b < pc.shape[1]):
            return 0, 0
        sup = int(self.support[(i, j)][a, b])
        num = int(pc[a, b, tc.color]) if 0 <= tc.color < pc.shape[2] else 0
        return num, sup

    def fraction(self, tc: TotalColor) -> Fraction:
        num, den = self.count(tc)
        if den == 0:
            raise ZeroSupport(f"total color {tc} has a frame with no edges")
        return Fraction(num, den)

    def density(self, tc: TotalColor) -> float:
        num, den = self.count(tc)
        if den == 0:
            raise ZeroSupport(f"total color {tc} has a frame with no edges")
        return num / den

    def density_or_zero(self, tc: TotalColor) -> float:
        num, den = self.count(tc)
        return num / den if den else 0.0

    def occurring(self) -> list[tuple[TotalColor, int]]:
        """Total colors that occur, with their edge (or vertex) counts."""
        out = []
        for i, counts in enumerate(self.vertex_counts):
            out.extend((TotalColor((i,), int(c)), int(counts[c])) for c in np.flatnonzero(counts))
        for (i, j), pc in self.pair_counts.items():
            for a, b, c in np.argwhere(pc > 0):
                out.append((TotalColor((i, j), int(c), (int(a), int(b))), int(pc[a, b, c])))
        return out


def density_table(g: ColoredGraph) -> DensityTable:
    vertex_counts = tuple(np.bincount(vc, minlength=p)
                          for vc, p in zip(g.vertex_colors, g.vertex_palettes))
    pair_counts, support = {}, {}
    for i, j in g.pairs:
        pa, pb, pc = g.vertex_palettes[i], g.vertex_palettes[j], g.edge_palettes[(i, j)]
        idx = (g.vertex_colors[i][:, None] * pb + g.vertex_colors[j][None, :]) * pc + g.edge_colors[(i, j)]
        counts = np.bincount(idx.ravel(), minlength=pa * pb * pc).reshape(pa, pb, pc)
        pair_counts[(i, j)] = counts
        support[(i, j)] = counts.sum(axis=2)
    return DensityTable(g.part_sizes, vertex_counts, pair_counts, support)


# ----------------------------------------------------------------------------
# embedding probabilities
# ----------------------------------------------------------------------------

_CHUNK = 1 << 18


def _match_counts(g: ColoredGraph, s: Complex, plan: SamplingPlan,
                  rng: Optional[np.random.Generator]) -> tuple[int, int, int, bool]:
    """(maps, maps matching all visible vertices, maps matching everything, exact).

    Only template vertices touched by a visible vertex or edge are drawn;
    the remaining slots are unconstrained and integrate out.
    """
    validate_complex(s, g)
    active = s.active_slots()
    pos = {slot: k for k, slot in enumerate(active)}
    dims = [g.part_sizes[i] for i, _ in active]
    work = math.prod(dims)
    exact = plan.use_exhaustive(work)
    vertex_checks = [(pos[(i, a)], g.vertex_colors[i], c) for i, a, c in s.visible_vertices()]
    edge_checks = [(pos[(i, a)], pos[(j, b)], g.edge_colors[(i, j)], c)
                   for i, a, j, b, c in s.visible_edges()]

    def tally(cols, size):
        ok = np.ones(size, dtype=bool)
        for k, colors, c in vertex_checks:
            ok &= colors[cols[k]] == c
        nv = int(ok.sum())
        for k1, k2, mat, c in edge_checks:
            ok &= mat[cols[k1], cols[k2]] == c
        return nv, int(ok.sum())

    if not active:
        n = 1 if exact else plan.sample_count
        return n, n, n, exact
    total = nv = na = 0
    if exact:
        for start in range(0, work, _CHUNK):
            idx = np.arange(start, min(work, start + _CHUNK))
            cols = np.unravel_index(idx, dims)
            a, b = tally(cols, len(idx))
            nv += a
            na += b
        return work, nv, na, True
    rng = rng if rng is not None else plan.rng("embed")
    remaining = plan.sample_count
    while remaining:
        size = min(remaining, _CHUNK)
        cols = [rng.integers(0, n, size) for n in dims]
        a, b = tally(cols, size)
        nv += a
        na += b
        total += size
        remaining -= size
    return total, nv, na, False


def _binomial_estimate(hits: int, n: int, exact: bool) -> Estimate:
    p = hits / n
    se = 0.0 if exact else math.sqrt(p * (1 - p) / n)
    return Estimate(p, se, n, exact)


def embed_probability(g: ColoredGraph, s: Complex, plan: SamplingPlan,
                      rng: Optional[np.random.Generator] = None) -> Estimate:
    """P over random maps that every visible vertex and edge of s matches g."""
    total, _, na, exact = _match_counts(g, s, plan, rng)
    return _binomial_estimate(na, total, exact)


def conditional_embed_probability(g: ColoredGraph, s: Complex, plan: SamplingPlan,
                                  rng: Optional[np.random.Generator] = None) -> Estimate:
    """P[all visible pair edges match | all visible vertices match]."""
    _, nv, na, exact = _match_counts(g, s, plan, rng)
    if nv == 0:
        raise ZeroSupport("no sampled map matches the visible vertices of the complex")
    return _binomial_estimate(na, nv, exact)


# ----------------------------------------------------------------------------
# eta: mean-square deviation after a further random regularization
# ----------------------------------------------------------------------------

def sample_hit_masks(n: int, k: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Which of n vertices are hit by k uniform draws, for ``count`` independent runs.

    For large k the number of distinct hits is simulated with geometric
    waiting times (coupon collector) and the hit set is a uniform subset of
    that size; this is exact and costs O(n) per run.
    """
    mask = np.zeros((count, n), dtype=bool)
    if k == 0:
        return mask
    if k <= 2 * n:
        draws = rng.integers(0, n, size=(count, k))
        mask[np.arange(count)[:, None], draws] = True
        return mask
    p = (n - np.arange(n)) / n
    waits = np.cumsum(rng.geometric(p, size=(count, n)), axis=1)
    hits = (waits <= min(k, 1 << 62)).sum(axis=1)
    rank = np.argsort(np.argsort(rng.random((count, n)), axis=1), axis=1)
    return rank < hits[:, None]


def _class_labels(g: ColoredGraph, masks: Sequence[np.ndarray]) -> list[tuple[np.ndarray, np.ndarray]]:
    """Per part: (class id per vertex, g-color of each class) under g/phi' where
    phi' hits exactly the masked vertices."""
    out = []
    for i in range(g.r):
        cols = [g.vertex_colors[i][:, None]]
        for j in range(g.r):
            if j != i and masks[j].any():
                cols.append(g.matrix(i, j)[:, masks[j]])
        ids, distinct = intern_rows(np.hstack(cols))
        out.append((ids, distinct[:, 0]))
    return out


def _inner_table(g: ColoredGraph, dens: DensityTable, labels, i: int, j: int) -> np.ndarray:
    """For one phi': E over e* with frame (a, b) of (P[color c | class of e*] - d(c; a, b))**2,
    for every (a, b, c) with positive support."""
    li, ai = labels[i]
    lj, aj = labels[j]
    P, Q = len(ai), len(aj)
    C = g.edge_palettes[(i, j)]
    counts = np.bincount(((li[:, None] * Q + lj[None, :]) * C + g.edge_colors[(i, j)]).ravel(),
                         minlength=P * Q * C).reshape(P, Q, C)
    sizes = np.outer(np.bincount(li, minlength=P), np.bincount(lj, minlength=Q))
    sup = dens.support[(i, j)]
    with np.errstate(invalid="ignore", divide="ignore"):
        d = dens.pair_counts[(i, j)] / sup[..., None]
    frac = counts / sizes[..., None]
    diff2 = (frac - d[ai][:, aj]) ** 2 * sizes[..., None]
    out = np.zeros(d.shape)
    np.add.at(out, (ai[:, None], aj[None, :]), diff2)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = out / sup[..., None]
    out[sup == 0] = 0.0
    return out


@dataclass
class EtaTable:
    """eta per pair as arrays indexed [a, b, c] (frame a, b; edge color c)."""

    samples_per_part: int
    values: dict
    stderr: dict
    outer_samples: int
    exact: bool

    def get(self, tc: TotalColor) -> tuple[float, float]:
        a, b = tc.frame
        key = tc.index
        return float(self.values[key][a, b, tc.color]), float(self.stderr[key][a, b, tc.color])


def eta_table(gstar: ColoredGraph, samples_per_part: int, plan: SamplingPlan,
              densities: Optional[DensityTable] = None) -> EtaTable:
    """eta for every pair total color of ``gstar``, with phi' in Phi(samples_per_part)."""
    dens = densities or density_table(gstar)
    k = int(samples_per_part)
    work = count_maps(gstar.part_sizes, [k] * gstar.r, plan.work_cap)
    groups: Counter = Counter()
    masks_of = {}

    def add(masks):
        key = b"".join(np.packbits(m).tobytes() for m in masks)
        groups[key] += 1
        masks_of.setdefault(key, masks)

    if plan.use_exhaustive(work):
        for phi in enumerate_maps(gstar.part_sizes, [k] * gstar.r, plan.work_cap):
            masks = []
            for n, row in zip(gstar.part_sizes, phi.slots):
                m = np.zeros(n, dtype=bool)
                m[list(row)] = True
                masks.append(m)
            add(masks)
        exact = True
    else:
        n_outer = plan.eta_samples or plan.sample_count
        rng = plan.rng("eta")
        per_part = [sample_hit_masks(n, k, n_outer, rng) for n in gstar.part_sizes]
        for t in range(n_outer):
            add([pm[t] for pm in per_part])
        exact = False
    total = sum(groups.values())
    s1 = {I: np.zeros(dens.pair_counts[I].shape) for I in gstar.pairs}
    s2 = {I: np.zeros(dens.pair_counts[I].shape) for I in gstar.pairs}
    for key, w in groups.items():
        labels = _class_labels(gstar, masks_of[key])
        for i, j in gstar.pairs:
            x = _inner_table(gstar, dens, labels, i, j)
            s1[(i, j)] += w * x
            s2[(i, j)] += w * x * x
    values, stderr = {}, {}
    for I in gstar.pairs:
        mean = s1[I] / total
        values[I] = mean
        if exact or total < 2:
            stderr[I] = np.zeros_like(mean)
        else:
            var = np.maximum(s2[I] / total - mean ** 2, 0.0) * total / (total - 1)
            stderr[I] = np.sqrt(var / total)
    return EtaTable(k, values, stderr, total, exact)


def eta(gstar: ColoredGraph, tc: TotalColor, M: int, plan: SamplingPlan, h: int = 1,
        densities: Optional[DensityTable] = None) -> Estimate:
    """eta(tc) with phi' in Phi(M h)."""
    if tc.is_vertex:
        raise ValueError("eta is defined for pair total colors only")
    dens = densities or density_table(gstar)
    num, sup = dens.count(TotalColor(tc.index, 0, tc.frame))
    if sup == 0:
        raise ZeroSupport(f"frame {tc.frame} of pair {tc.index} has no edges")
    table = eta_table(gstar, M * h, plan, dens)
    value, se = table.get(tc)
    return Estimate(value, se, table.outer_samples, table.exact)


# ----------------------------------------------------------------------------
# BAD colors and the error function
# ----------------------------------------------------------------------------

def _below_threshold(num: int, den: int, palette: int, eps1: Fraction) -> bool:
    # num/den <= sqrt(eps1)/palette, squared and cleared of denominators
    return num * num * palette * palette * eps1.denominator <= eps1.numerator * den * den


def is_bad(g: ColoredGraph, dens: DensityTable, tc: TotalColor, eps1: Fraction) -> bool:
    """Whether some sub-total-color of ``tc`` has density <= sqrt(eps1)/|C|."""
    eps1 = as_fraction(eps1)
    if tc.is_vertex:
        num, den = dens.count(tc)
        return _below_threshold(num, den, g.palette(tc.index), eps1)
    for part, color in zip(tc.index, tc.frame):
        if is_bad(g, dens, TotalColor((part,), color), eps1):
            return True
    num, den = dens.count(tc)
    return _below_threshold(num, den, g.palette(tc.index), eps1)


def bad_colors(gstar: ColoredGraph, eps1: Number,
               densities: Optional[DensityTable] = None) -> set[TotalColor]:
    """BAD among the total colors occurring in ``gstar``."""
    dens = densities or density_table(gstar)
    eps1 = as_fraction(eps1)
    return {tc for tc, _ in dens.occurring() if is_bad(gstar, dens, tc, eps1)}


@dataclass(frozen=True)
class ErrorEntry:
    eta: float
    eta_stderr: float
    delta: float
    is_bad: bool


@dataclass
class ErrorTable:
    """The constructed error function delta over occurring total colors.

    Total colors not listed have density 0 (they never occur), hence are
    BAD and get delta = 1; vertex total colors always get delta = 0.
    """

    entries: dict
    M: int
    eps1: Fraction
    C: float
    samples_per_part: int
    eta_exact: bool

    def delta(self, tc: TotalColor) -> float:
        if tc.is_vertex:
            return 0.0
        entry = self.entries.get(tc)
        return 1.0 if entry is None else entry.delta


def delta_from_eta(c_squared: Fraction, eta_value: float) -> float:
    """min(1, C sqrt(eta)) evaluated in log space (C can be astronomically large)."""
    if eta_value <= 0.0:
        return 0.0
    log_c2 = math.log(c_squared.numerator) - math.log(c_squared.denominator)
    log_delta = 0.5 * (log_c2 + math.log(eta_value))
    return 1.0 if log_delta >= 0.0 else math.exp(log_delta)


def delta_table(gstar: ColoredGraph, h: int, eps: Number, plan: SamplingPlan,
                M: Optional[int] = None, densities: Optional[DensityTable] = None) -> ErrorTable:
    """Error function of ``gstar`` for templates with h vertices per part.

    Without ``M`` the proof's budget (b1' / sqrt(eps1))**(r h) is used, with
    b1' = gstar.b[0], the vertex-palette bound of the regularized graph.
    """
    dens = densities or density_table(gstar)
    r, b2 = gstar.r, gstar.b[1]
    eps1 = epsilon1(r, b2, eps)
    c2 = constant_c_squared(r, h, b2, eps1)
    if M is None:
        M = sample_budget(r, h, gstar.b[0], sqrt_epsilon1(r, b2, eps))
    table = eta_table(gstar, M * h, plan, dens)
    entries = {}
    for tc, _ in dens.occurring():
        bad = is_bad(gstar, dens, tc, eps1)
        if tc.is_vertex:
            entries[tc] = ErrorEntry(0.0, 0.0, 0.0, bad)
            continue
        value, se = table.get(tc)
        entries[tc] = ErrorEntry(value, se, 1.0 if bad else delta_from_eta(c2, value), bad)
    c = constant_c(r, h, b2, eps1)
    c_float = float(c.hi) if c.hi < 10 ** 300 else math.inf
    return ErrorTable(entries, int(M), eps1, c_float, M * h, table.exact)


# ----------------------------------------------------------------------------
# counting check and the regularity report
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ProbeResult:
    complex: Complex
    measured: float
    stderr: float
    lower: float
    upper: float
    margin: float
    exact: bool

    def to_dict(self) -> dict:
        return {"complex": self.complex.to_dict(), "measured": self.measured, "stderr": self.stderr,
                "interval": [self.lower, self.upper], "margin": self.margin, "exact": self.exact}


def counting_interval(s: Complex, densities: DensityTable, errors: ErrorTable) -> tuple[float, float]:
    """prod of vertex densities times prod over visible edges of [d - delta, d + delta] clamped."""
    lo = hi = 1.0
    for i, a, c in s.visible_vertices():
        d = densities.density_or_zero(TotalColor((i,), c))
        lo *= d
        hi *= d
    for key in s.edges:
        tc = s.edge_total_color(key)
        d = densities.density_or_zero(tc)
        delta = errors.delta(tc)
        lo *= max(0.0, d - delta)
        hi *= min(1.0, d + delta)
    return lo, hi


def counting_check(g: ColoredGraph, s: Complex, densities: DensityTable, errors: ErrorTable,
                   plan: SamplingPlan, rng: Optional[np.random.Generator] = None,
                   z: float = 3.0) -> ProbeResult:
    """Distance from the measured embedding probability to the counting interval.

    Monte Carlo estimates get ``z`` standard errors of slack; exact ones none.
    """
    est = embed_probability(g, s, plan, rng)
    lo, hi = counting_interval(s, densities, errors)
    dist = max(0.0, lo - est.value, est.value - hi)
    margin = max(0.0, dist - z * est.stderr)
    return ProbeResult(s, est.value, est.stderr, lo, hi, margin, est.exact)


def default_probes(g: ColoredGraph, h: int, count: int, rng: np.random.Generator,
                   densities: Optional[DensityTable] = None, max_edge_probes: int = 256) -> list[Complex]:
    """Single-edge complexes over occurring pair total colors, then ``count``
    random fully visible complexes with colors read off random vertices and edges."""
    dens = densities or density_table(g)
    singles = [tc for tc, _ in dens.occurring() if not tc.is_vertex]
    if len(singles) > max_edge_probes:
        keep = np.sort(rng.choice(len(singles), max_edge_probes, replace=False))
        singles = [singles[k] for k in keep]
    probes = []
    for tc in singles:
        (i, j), (a, b) = tc.index, tc.frame
        probes.append(Complex.build(g.r, h, {(i, 0): a, (j, 0): b}, {(i, 0, j, 0): tc.color}))
    for _ in range(count):
        verts = {}
        for i in range(g.r):
            for a in range(h):
                verts[(i, a)] = int(g.vertex_colors[i][rng.integers(g.part_sizes[i])])
        edges = {}
        for i, j in g.pairs:
            mat = g.edge_colors[(i, j)]
            for a in range(h):
                for b in range(h):
                    edges[(i, a, j, b)] = int(mat[rng.integers(mat.shape[0]), rng.integers(mat.shape[1])])
        probes.append(Complex.build(g.r, h, verts, edges))
    return probes


@dataclass(frozen=True)
class PairSummary:
    mean_delta: float
    palette: int
    bad_fraction: float


@dataclass
class RegularityReport:
    """Certified upper bound ``score`` on reg_h plus per-probe counting margins.

    The average-error bound is certified for the constructed delta; the
    counting condition is only checked on the listed probes.
    """

    score: float
    pairs: dict
    probes: list
    plan: SamplingPlan
    h: int
    eps: str
    M: int
    eps1: Fraction
    C: float
    eta_exact: bool

    @property
    def max_margin(self) -> float:
        return max((p.margin for p in self.probes), default=0.0)

    def to_dict(self) -> dict:
        return {
            "score": self.score,
            "h": self.h,
            "eps": self.eps,
            "pairs": [{"i": i, "j": j, "mean_delta": ps.mean_delta, "palette": ps.palette,
                       "bad_fraction": ps.bad_fraction} for (i, j), ps in sorted(self.pairs.items())],
            "constants": {"M": str(self.M), "eps1": str(self.eps1), "C": self.C},
            "eta_exact": self.eta_exact,
            "probe_coverage": f"{len(self.probes)} probe complexes; the counting condition is "
                              "not checked over all templates",
            "probes": [p.to_dict() for p in self.probes],
            "plan": self.plan.to_dict(),
        }


def regularity_report(gstar: ColoredGraph, h: int, eps: Number, probes: Iterable[Complex],
                      plan: SamplingPlan, M: Optional[int] = None,
                      errors: Optional[ErrorTable] = None,
                      palette_weight: Optional[Callable[[int], float]] = None) -> RegularityReport:
    """score = max over pairs I of E_e[delta(G*<e>)] / w(|C_I|), w(x) = 1/x by default."""
    dens = density_table(gstar)
    errors = errors or delta_table(gstar, h, eps, plan, M, dens)
    weight = palette_weight or (lambda x: 1.0 / x)
    sums = {I: [0.0, 0.0] for I in gstar.pairs}
    for tc, cnt in dens.occurring():
        if tc.is_vertex:
            continue
        entry = errors.entries.get(tc)
        sums[tc.index][0] += cnt * errors.delta(tc)
        sums[tc.index][1] += cnt * (entry is None or entry.is_bad)
    pairs, score = {}, 0.0
    for (i, j), (sd, sb) in sums.items():
        n_edges = gstar.part_sizes[i] * gstar.part_sizes[j]
        mean_delta = sd / n_edges
        pal = gstar.edge_palettes[(i, j)]
        pairs[(i, j)] = PairSummary(mean_delta, pal, sb / n_edges)
        score = max(score, mean_delta / weight(pal))
    results = [counting_check(gstar, s, dens, errors, plan, plan.rng("probe", k))
               for k, s in enumerate(probes)]
    return RegularityReport(score, pairs, results, plan, h, str(as_fraction(eps)), errors.M,
                            errors.eps1, errors.C, errors.eta_exact)
