"""Recompute the schedule constants with mpmath, independently of the package.

The numbers printed here are frozen into tests/test_schedule.py.
"""
import mpmath as mp

mp.mp.dps = 60


def eps1(r, b2, eps):
    return (mp.mpf(eps) / (6 * b2 * mp.binomial(r, 2))) ** 2


def const_c(r, h, b2, e1):
    k = mp.binomial(r, 2) * h * h
    return mp.sqrt(2) * k * (b2 / mp.sqrt(e1)) ** (k - 1)


def n_tilde(c, b2, r, eps):
    rhs = mp.mpf(eps) / (2 * mp.binomial(r, 2))
    n = 1
    while c * b2 * mp.sqrt(mp.mpf(b2) / n) > rhs:
        n += 1
    return n


if __name__ == "__main__":
    e1 = eps1(2, 2, "0.6")
    print("eps1(2,2,0.6) =", e1)
    print("C(r=2,h=1,b2=2) =", const_c(2, 1, 2, e1))
    print("C(r=2,h=2,b2=2) =", const_c(2, 2, 2, e1), "=", const_c(2, 2, 2, e1) / mp.sqrt(2), "* sqrt2")
    c = const_c(2, 1, 2, e1)
    nt = n_tilde(c, 2, 2, "0.6")
    print("n_tilde =", nt)
    print("  lhs at n_tilde  :", c * 2 * mp.sqrt(mp.mpf(2) / nt))
    print("  lhs at n_tilde-1:", c * 2 * mp.sqrt(mp.mpf(2) / (nt - 1)))
    # M(0) with b1=1, m(0)=0, r=2, h=1
    big_m0 = (1 / mp.sqrt(e1)) ** 2
    print("M(0) =", big_m0, " m(1) =", big_m0 * 1)
    mp.mp.dps = 400
    e1 = eps1(2, 2, "0.6")
    big_m1 = (mp.mpf(2) ** 400 / mp.sqrt(e1)) ** 2
    m2 = 400 + big_m1
    print("log2 m(2) =", mp.nstr(mp.log(m2, 2), 20), " digits =", int(mp.floor(mp.log10(m2))) + 1)
