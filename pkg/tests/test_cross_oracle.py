"""Cross-checks of the interval pipeline against mpmath high-precision
floats.  mpmath is used here purely as an independent oracle: every rigorous
enclosure must contain the 60-digit float estimate of the same expression."""

from fractions import Fraction

import mpmath

from triwise.claims import alpha_at_p0, beta, p0
from triwise.stability import compute_constants
from triwise.walks import alpha

mpmath.mp.dps = 60

F = Fraction


def mpf_of(fr: Fraction):
    return mpmath.mpf(fr.numerator) / mpmath.mpf(fr.denominator)


def assert_encloses(interval, value, slack=mpmath.mpf("1e-40")):
    assert mpf_of(interval.lo) - slack <= value <= mpf_of(interval.hi) + slack


def mp_p0(t):
    return 2 / (mpmath.sqrt(4 * t + 9) - 1)


def mp_alpha(p):
    return (mpmath.sqrt((1 + 3 * p) / (1 - p)) - 1) / 2


def test_p0_against_mpmath():
    for t in (1, 9, 15, 43, 200, 500):
        assert_encloses(p0(t, 128), mp_p0(t))


def test_alpha_against_mpmath():
    for p in (F(1, 10), F(1, 4), F(1, 3), F(1, 2), F(3, 5), F(13, 20)):
        assert_encloses(alpha(p, 128), mp_alpha(mpf_of(p)))


def test_beta_against_mpmath():
    for t in (9, 13, 20, 43, 100):
        ref = mpmath.log(mp_p0(t)) + (t + 1) * mp_p0(t) ** 2
        assert_encloses(beta(t, 128), ref)


def test_power_margin_against_mpmath():
    # the A3-style margin p^t - (alpha^(t+2) + alpha^(t+1)) at p = p0(t)
    for t in (15, 20, 43):
        p = mp_p0(t)
        a = mp_alpha(p)
        ref = p**t - (a ** (t + 2) + a ** (t + 1))
        P = p0(t, 160)
        A = alpha_at_p0(t, 160)
        margin = P**t - (A ** (t + 2) + A ** (t + 1))
        assert mpf_of(margin.lo) <= ref <= mpf_of(margin.hi)
        assert margin.lo > 0


def test_stability_constants_against_mpmath():
    for t, p in ((15, F(1, 10)), (20, F(1, 5)), (18, F(1, 4))):
        sc = compute_constants(t, p)
        pm = mpf_of(p)
        q = 1 - pm
        a = mp_alpha(pm)
        eps1 = pm**t - (a ** (t + 2) + a ** (t + 1))
        assert_encloses(sc.eps1, eps1)
        delta1 = 1 - (a / q) * a ** (t + 1) / (pm**t * q * (1 - a**2))
        assert_encloses(sc.delta1, delta1)
        delta2 = 1 - (a / q) ** 2 * a**t / (t * pm ** (t + 2) * q * (1 - a**2))
        assert_encloses(sc.delta2, delta2)
        assert_encloses(sc.c1, 2 / delta1)
