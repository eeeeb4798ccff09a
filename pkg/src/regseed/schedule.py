"""Sample-size schedules.

:class:`TheoreticalSchedule` carries the constants of the existence proof in
exact arithmetic. They are rational except for a sqrt(2) factor in ``C``,
which is kept as a rational interval; ``C**2`` is rational, so ``n_tilde``
is exact. The m(n) recursion takes equality where the proof only needs
``>=``, and rounds the (rational) budget M(n) up to an integer.

:class:`PracticalSchedule` is an explicit short list of sample sizes used
for experiments, since the theoretical m(2) already has hundreds of digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt
from typing import Sequence, Union

import numpy as np

from .graph import PartitionwiseMap, random_partitionwise_map

Number = Union[int, float, str, Fraction]

DEFAULT_DIGIT_CAP = 10 ** 6


class ScheduleOverflow(ArithmeticError):
    """m(n) would exceed the digit cap; carries a guaranteed lower bound."""

    def __init__(self, n: int, digits: float, cap: int, log2_lower_bound: int):
        super().__init__(f"m({n}) has about {digits:.4g} decimal digits, over the cap of {cap}; "
                         f"m({n}) > 2**{log2_lower_bound}")
        self.n = n
        self.digits = digits
        self.cap = cap
        self.log2_lower_bound = log2_lower_bound


def as_fraction(x: Number) -> Fraction:
    """Exact rational from an int, a decimal string or a float (via its repr)."""
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def sqrt_epsilon1(r: int, b2: int, eps: Number) -> Fraction:
    return as_fraction(eps) / (6 * b2 * comb(r, 2))


def epsilon1(r: int, b2: int, eps: Number) -> Fraction:
    """eps1 = (eps / (6 * b2 * C(r, 2)))**2."""
    if as_fraction(eps) <= 0:
        raise ValueError("eps must be positive")
    return sqrt_epsilon1(r, b2, eps) ** 2


def _exact_sqrt(q: Fraction) -> Fraction | None:
    p, d = q.numerator, q.denominator
    sp, sd = isqrt(p), isqrt(d)
    if sp * sp == p and sd * sd == d:
        return Fraction(sp, sd)
    return None


def constant_c_squared(r: int, h: int, b2: int, eps1: Number) -> Fraction:
    """C**2 = 2 * (C(r,2) h^2)**2 * (b2**2 / eps1)**(C(r,2) h^2 - 1), exactly."""
    eps1 = as_fraction(eps1)
    if not 0 < eps1 <= 1:
        raise ValueError("eps1 must lie in (0, 1]")
    k = comb(r, 2) * h * h
    return 2 * k * k * (Fraction(b2 * b2) / eps1) ** (k - 1)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)


def _sqrt_interval(q: Fraction, width: Fraction) -> Interval:
    exact = _exact_sqrt(q)
    if exact is not None:
        return Interval(exact, exact)
    # sqrt(q) in [floor(sqrt(q D^2)) / D, (floor(...) + 1) / D]
    scale = 1
    while Fraction(1, scale) >= width:
        scale *= 10 ** 6
    s = isqrt(q.numerator * scale * scale // q.denominator)
    while Fraction((s + 1) ** 2, scale * scale) <= q:
        s += 1
    return Interval(Fraction(s, scale), Fraction(s + 1, scale))


def constant_c(r: int, h: int, b2: int, eps1: Number, width: Fraction = Fraction(1, 10 ** 12)) -> Interval:
    """C = sqrt(2) C(r,2) h^2 (b2 / sqrt(eps1))**(C(r,2) h^2 - 1), as a rational interval."""
    return _sqrt_interval(constant_c_squared(r, h, b2, eps1), width)


def _ceil_sqrt(q: Fraction) -> int:
    """Smallest integer k with k**2 >= q."""
    k = isqrt(q.numerator // q.denominator)
    while Fraction(k * k) < q:
        k += 1
    return k


def n_tilde(c_squared: Fraction, b2: int, r: int, eps: Number) -> int:
    """Least n with C b2 sqrt(b2 / n) <= eps / (2 C(r, 2)).

    Squared: n >= b2**3 (2 C(r,2) C / eps)**2, all rational given C**2.
    """
    eps = as_fraction(eps)
    bound = Fraction(b2) ** 3 * 4 * comb(r, 2) ** 2 * as_fraction(c_squared) / eps ** 2
    n = bound.numerator // bound.denominator
    return n if Fraction(n) >= bound and n >= 1 else n + 1


def n_tilde_holds(c_squared: Fraction, b2: int, r: int, eps: Number, n: int) -> bool:
    """Whether the n_tilde inequality holds at ``n`` (squared, exact)."""
    eps = as_fraction(eps)
    return as_fraction(c_squared) * b2 ** 3 / n <= eps ** 2 / (4 * comb(r, 2) ** 2)


def sample_budget_exact(r: int, h: int, b1_eff: int, sqrt_eps1: Fraction) -> Fraction:
    """M = (b1_eff / sqrt(eps1))**(r h) as an exact rational.

    ``b1_eff`` is b1 * b2**((r-1) m(n)), i.e. the vertex-palette bound of the
    regularized graph.
    """
    return (Fraction(b1_eff) / sqrt_eps1) ** (r * h)


def sample_budget(r: int, h: int, b1_eff: int, sqrt_eps1: Fraction) -> int:
    q = sample_budget_exact(r, h, b1_eff, sqrt_eps1)
    return -(-q.numerator // q.denominator)


def _log10_int(x: int) -> float:
    if x <= 0:
        return float("-inf")
    bits = x.bit_length()
    if bits < 1000:
        return math.log10(x)
    shift = bits - 64
    return math.log10(x >> shift) + shift * math.log10(2)


@dataclass
class TheoreticalSchedule:
    """The proof's schedule for given (r, h, b, eps).

    ``m(n)`` is memoized. Values whose decimal length would exceed
    ``digit_cap`` are refused with :class:`ScheduleOverflow`.
    """

    r: int
    h: int
    b: tuple[int, int]
    eps: Fraction
    digit_cap: int = DEFAULT_DIGIT_CAP
    _m: list[int] = field(default_factory=lambda: [0], repr=False)

    def __post_init__(self):
        self.eps = as_fraction(self.eps)
        if self.r < 2 or self.h < 1 or self.b[0] < 1 or self.b[1] < 1:
            raise ValueError("need r >= 2, h >= 1, b1, b2 >= 1")

    @property
    def eps1(self) -> Fraction:
        return epsilon1(self.r, self.b[1], self.eps)

    @property
    def sqrt_eps1(self) -> Fraction:
        return sqrt_epsilon1(self.r, self.b[1], self.eps)

    @property
    def c_squared(self) -> Fraction:
        return constant_c_squared(self.r, self.h, self.b[1], self.eps1)

    @property
    def C(self) -> Interval:
        return constant_c(self.r, self.h, self.b[1], self.eps1)

    @property
    def n_tilde(self) -> int:
        return n_tilde(self.c_squared, self.b[1], self.r, self.eps)

    def _budget_log10(self, m_n: int) -> float:
        b1, b2 = self.b
        rest = math.log10(b1) - math.log10(self.sqrt_eps1)
        if b2 == 1:
            return self.r * self.h * rest
        # r h ((r-1) m log10 b2 + rest), computed in log space for huge m
        inner = _log10_int(m_n) + math.log10((self.r - 1) * math.log10(b2)) if m_n else float("-inf")
        return self.r * self.h * (10 ** inner + rest) if inner < 300 else float("inf")

    def _budget_log2_floor(self, m_n: int) -> int:
        b1, b2 = self.b
        q = Fraction(b1) / self.sqrt_eps1
        rest = max(0, (q.numerator // q.denominator).bit_length() - 1)
        return self.r * self.h * ((self.r - 1) * m_n * (b2.bit_length() - 1) + rest)

    def M(self, n: int) -> int:
        """Integer sample budget M(n) = ceil((b1 b2**((r-1) m(n)) / sqrt(eps1))**(r h))."""
        m_n = self.m(n)
        digits = self._budget_log10(m_n) + math.log10(self.h)
        if digits > self.digit_cap:
            raise ScheduleOverflow(n + 1, digits, self.digit_cap, self._budget_log2_floor(m_n))
        b1_eff = self.b[0] * self.b[1] ** ((self.r - 1) * m_n)
        return sample_budget(self.r, self.h, b1_eff, self.sqrt_eps1)

    def m(self, n: int) -> int:
        """m(0) = 0, m(n+1) = m(n) + M(n) h."""
        if n < 0:
            raise ValueError("n must be non-negative")
        while len(self._m) <= n:
            k = len(self._m) - 1
            self._m.append(self._m[k] + self.M(k) * self.h)
        return self._m[n]

    def to_dict(self, n_max: int | None = None) -> dict:
        """JSON-ready summary; m(n) listed until n_max or the digit cap."""
        c = self.C
        doc = {
            "r": self.r, "h": self.h, "b": list(self.b), "eps": str(self.eps),
            "eps1": str(self.eps1), "eps1_float": float(self.eps1),
            "C": f"{float(c):.12g}", "C_interval": [str(c.lo), str(c.hi)],
            "n_tilde": self.n_tilde,
            "m_recursion": "equality (minimal schedule), M(n) rounded up",
            "m": [],
        }
        limit = self.n_tilde if n_max is None else min(n_max, self.n_tilde)
        for n in range(limit + 1):
            try:
                doc["m"].append(str(self.m(n)))
            except ScheduleOverflow as exc:
                doc["overflow"] = {"n": exc.n, "approx_digits": exc.digits,
                                   "digit_cap": exc.cap, "log2_lower_bound": exc.log2_lower_bound}
                break
        return doc


def m_of(sched: TheoreticalSchedule, n: int) -> int:
    if n > sched.n_tilde:
        raise ValueError(f"n={n} beyond n_tilde={sched.n_tilde}")
    return sched.m(n)


@dataclass(frozen=True)
class PracticalSchedule:
    """A short explicit schedule ``m_list`` with ``m_list[0] == 0``."""

    m_list: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "m_list", tuple(int(x) for x in self.m_list))
        if not self.m_list or self.m_list[0] != 0:
            raise ValueError("a schedule must start at m = 0")
        if any(a > b for a, b in zip(self.m_list, self.m_list[1:])):
            raise ValueError("a schedule must be non-decreasing")

    @property
    def n_tilde(self) -> int:
        return len(self.m_list)

    def m(self, n: int) -> int:
        return self.m_list[n]


def choose_n_and_sample(sched: PracticalSchedule, part_sizes: Sequence[int],
                        rng: np.random.Generator) -> tuple[int, PartitionwiseMap]:
    """Draw n uniformly from [0, n_tilde) and a random map in Phi(m(n))."""
    n = int(rng.integers(0, sched.n_tilde))
    m = sched.m(n)
    return n, random_partitionwise_map(part_sizes, [m] * len(part_sizes), rng)
