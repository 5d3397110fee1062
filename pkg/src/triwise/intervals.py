"""Dyadic interval arithmetic with outward rounding.

Every :class:`IntervalValue` is a pair of dyadic rationals ``lo <= hi``
(denominators are powers of two) guaranteed to enclose the exact real number
the expression denotes.  Field operations are computed exactly on the
endpoints and then rounded outward to the working precision, so enclosures
never silently lose rigor; square roots use directed integer square roots,
and logarithms use an argument-reduced atanh series with an explicit tail
bound.  A comparison between two enclosures is only ever reported when the
intervals separate strictly.

Precision is a mantissa bit count carried by each value.  Binary operations
work at the larger of the two operand precisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence, Union

Rat = Union[int, Fraction]

DEFAULT_PRECISION = 128


class RigorError(ArithmeticError):
    """Two independent evaluation routes produced incompatible enclosures."""


class PrecisionExhausted(ArithmeticError):
    """A verdict stayed indeterminate at the precision cap."""


def round_down(x: Fraction, prec: int) -> Fraction:
    """Largest dyadic rational with a ~prec-bit mantissa that is <= x."""
    num = x.numerator
    if num == 0:
        return Fraction(0)
    den = x.denominator
    if den & (den - 1) == 0 and abs(num).bit_length() <= prec:
        return x
    shift = prec - (abs(num).bit_length() - den.bit_length())
    if shift >= 0:
        return Fraction((num << shift) // den, 1 << shift)
    return Fraction((num // (den << -shift)) << -shift)


def round_up(x: Fraction, prec: int) -> Fraction:
    """Smallest dyadic rational with a ~prec-bit mantissa that is >= x."""
    return -round_down(-x, prec)


@dataclass(frozen=True)
class IntervalValue:
    """A rigorous enclosure [lo, hi] of a real number."""

    lo: Fraction
    hi: Fraction
    prec: int = DEFAULT_PRECISION

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def exact(x: Rat, prec: int = DEFAULT_PRECISION) -> "IntervalValue":
        """Enclose a rational number (exactly when it is a short dyadic)."""
        x = Fraction(x)
        return IntervalValue(round_down(x, prec), round_up(x, prec), prec)

    @staticmethod
    def from_endpoints(lo: Rat, hi: Rat, prec: int = DEFAULT_PRECISION) -> "IntervalValue":
        return IntervalValue(round_down(Fraction(lo), prec), round_up(Fraction(hi), prec), prec)

    # -- queries -----------------------------------------------------------

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def approx(self) -> float:
        return float(self.mid())

    def contains(self, x: Rat) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def is_positive(self) -> bool:
        """Strictly positive, rigorously."""
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def strictly_below(self, other: "IntervalValue | Rat") -> bool:
        """True only when the enclosures separate strictly."""
        if isinstance(other, IntervalValue):
            return self.hi < other.lo
        return self.hi < other

    def strictly_above(self, other: "IntervalValue | Rat") -> bool:
        if isinstance(other, IntervalValue):
            return self.lo > other.hi
        return self.lo > other

    def intersect(self, other: "IntervalValue") -> "IntervalValue":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise RigorError(
                f"disjoint enclosures [{self.lo},{self.hi}] and [{other.lo},{other.hi}]"
            )
        return IntervalValue(lo, hi, max(self.prec, other.prec))

    def to_dict(self) -> dict:
        return {
            "lo": f"{self.lo.numerator}/{self.lo.denominator}",
            "hi": f"{self.hi.numerator}/{self.hi.denominator}",
            "approx": self.approx(),
            "prec": self.prec,
        }

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other: "IntervalValue | Rat") -> "IntervalValue":
        if isinstance(other, IntervalValue):
            return other
        return IntervalValue.exact(other, self.prec)

    def __neg__(self) -> "IntervalValue":
        return IntervalValue(-self.hi, -self.lo, self.prec)

    def __add__(self, other: "IntervalValue | Rat") -> "IntervalValue":
        o = self._coerce(other)
        prec = max(self.prec, o.prec)
        return IntervalValue(round_down(self.lo + o.lo, prec), round_up(self.hi + o.hi, prec), prec)

    __radd__ = __add__

    def __sub__(self, other: "IntervalValue | Rat") -> "IntervalValue":
        return self + (-self._coerce(other))

    def __rsub__(self, other: "IntervalValue | Rat") -> "IntervalValue":
        return (-self) + other

    def __mul__(self, other: "IntervalValue | Rat") -> "IntervalValue":
        o = self._coerce(other)
        prec = max(self.prec, o.prec)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return IntervalValue(round_down(min(products), prec), round_up(max(products), prec), prec)

    __rmul__ = __mul__

    def __truediv__(self, other: "IntervalValue | Rat") -> "IntervalValue":
        o = self._coerce(other)
        if o.contains_zero():
            raise ZeroDivisionError("interval divisor contains zero")
        prec = max(self.prec, o.prec)
        quotients = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return IntervalValue(round_down(min(quotients), prec), round_up(max(quotients), prec), prec)

    def __rtruediv__(self, other: "IntervalValue | Rat") -> "IntervalValue":
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "IntervalValue":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        if k == 0:
            return IntervalValue.exact(1, self.prec)
        lo, hi, prec = self.lo, self.hi, self.prec
        if lo >= 0:
            return IntervalValue(round_down(lo**k, prec), round_up(hi**k, prec), prec)
        if hi <= 0:
            a, b = lo**k, hi**k
            if k % 2 == 0:
                a, b = b, a
            return IntervalValue(round_down(a, prec), round_up(b, prec), prec)
        if k % 2 == 1:
            return IntervalValue(round_down(lo**k, prec), round_up(hi**k, prec), prec)
        return IntervalValue(Fraction(0), round_up(max(lo**k, hi**k), prec), prec)

    def min_with(self, other: "IntervalValue") -> "IntervalValue":
        return IntervalValue(min(self.lo, other.lo), min(self.hi, other.hi), max(self.prec, other.prec))

    def max_with(self, other: "IntervalValue") -> "IntervalValue":
        return IntervalValue(max(self.lo, other.lo), max(self.hi, other.hi), max(self.prec, other.prec))

    def sqrt(self) -> "IntervalValue":
        if self.lo < 0:
            raise ValueError("square root of an interval with negative lower end")
        return IntervalValue(_sqrt_down(self.lo, self.prec), _sqrt_up(self.hi, self.prec), self.prec)

    def log(self) -> "IntervalValue":
        if self.lo <= 0:
            raise ValueError("log of an interval touching (-inf, 0]")
        lo, _ = _ln_enclosure(self.lo, self.prec)
        _, hi = _ln_enclosure(self.hi, self.prec)
        return IntervalValue(lo, hi, self.prec)


# -- directed square root ---------------------------------------------------


def _sqrt_down(x: Fraction, prec: int) -> Fraction:
    """Dyadic rational <= sqrt(x), exact for dyadic perfect squares."""
    if x == 0:
        return Fraction(0)
    num, den = x.numerator, x.denominator
    k = max(prec - (num.bit_length() - den.bit_length()) // 2, 0)
    scaled = (num << (2 * k)) // den
    return Fraction(isqrt(scaled), 1 << k)


def _sqrt_up(x: Fraction, prec: int) -> Fraction:
    if x == 0:
        return Fraction(0)
    num, den = x.numerator, x.denominator
    k = max(prec - (num.bit_length() - den.bit_length()) // 2, 0)
    scaled = -((-(num << (2 * k))) // den)
    r = isqrt(scaled)
    if r * r < scaled:
        r += 1
    return Fraction(r, 1 << k)


# -- logarithm ---------------------------------------------------------------

_LN2_CACHE: dict[int, tuple[Fraction, Fraction]] = {}


def _atanh_enclosure(z: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Enclosure of atanh(z) for rational 0 <= z < 1/2 via the odd series."""
    if z == 0:
        return Fraction(0), Fraction(0)
    wp = prec + 32
    tol = Fraction(1, 1 << wp)
    Z = IntervalValue.exact(z, wp)
    Z2 = Z * Z
    total = IntervalValue.exact(0, wp)
    power = Z
    j = 0
    one_minus_z2 = 1 - z * z
    while True:
        total = total + power / (2 * j + 1)
        j += 1
        power = power * Z2
        tail = power.hi / ((2 * j + 1) * one_minus_z2)
        if tail < tol:
            total = total + IntervalValue(Fraction(0), round_up(tail, wp), wp)
            break
    return round_down(total.lo, prec + 8), round_up(total.hi, prec + 8)


def _ln2(prec: int) -> tuple[Fraction, Fraction]:
    if prec not in _LN2_CACHE:
        lo, hi = _atanh_enclosure(Fraction(1, 3), prec)
        _LN2_CACHE[prec] = (2 * lo, 2 * hi)
    return _LN2_CACHE[prec]


def _ln_enclosure(x: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Enclosure of ln(x) for a positive rational x."""
    if x <= 0:
        raise ValueError("log of non-positive value")
    e = x.numerator.bit_length() - x.denominator.bit_length()
    y = x / Fraction(1 << e) if e >= 0 else x * Fraction(1 << -e)
    while y >= 2:
        y /= 2
        e += 1
    while y < 1:
        y *= 2
        e -= 1
    z = (y - 1) / (y + 1)
    alo, ahi = _atanh_enclosure(z, prec)
    l2lo, l2hi = _ln2(prec)
    if e >= 0:
        lo = 2 * alo + e * l2lo
        hi = 2 * ahi + e * l2hi
    else:
        lo = 2 * alo + e * l2hi
        hi = 2 * ahi + e * l2lo
    return round_down(lo, prec), round_up(hi, prec)


# -- polynomials and root enclosures ----------------------------------------


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    """Exact Horner evaluation; coeffs[i] multiplies x**i."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_eval_interval(coeffs: Sequence[Fraction], x: IntervalValue) -> IntervalValue:
    acc = IntervalValue.exact(0, x.prec)
    for c in reversed(coeffs):
        acc = acc * x + IntervalValue.exact(c, x.prec)
    return acc


def refine_polynomial_root(
    coeffs: Sequence[Fraction],
    lo: Fraction,
    hi: Fraction,
    prec: int = DEFAULT_PRECISION,
) -> IntervalValue:
    """Enclose the root of a rational polynomial inside a sign-change bracket.

    ``lo`` and ``hi`` must be dyadic with f(lo) and f(hi) of strictly opposite
    signs (a zero endpoint collapses immediately).  Bisection steps, which keep
    the exact sign bracket, are interleaved with interval Newton steps that are
    only accepted when they preserve the bracket, so the returned interval
    always contains the root.
    """
    coeffs = [Fraction(c) for c in coeffs]
    deriv = [i * coeffs[i] for i in range(1, len(coeffs))]
    flo = poly_eval(coeffs, lo)
    fhi = poly_eval(coeffs, hi)
    if flo == 0:
        return IntervalValue(lo, lo, prec)
    if fhi == 0:
        return IntervalValue(hi, hi, prec)
    if (flo > 0) == (fhi > 0):
        raise ValueError("bracket endpoints do not have opposite signs")
    target = Fraction(1, 1 << (prec - 2)) if prec > 2 else Fraction(1, 4)
    max_iter = 4 * prec + 64
    for _ in range(max_iter):
        if hi - lo <= target:
            break
        mid = round_down((lo + hi) / 2, prec + 8)
        if not lo < mid < hi:
            break
        fmid = poly_eval(coeffs, mid)
        if fmid == 0:
            return IntervalValue(mid, mid, prec)
        stepped = False
        fprime = poly_eval_interval(deriv, IntervalValue(lo, hi, prec))
        if not fprime.contains_zero():
            newton = IntervalValue.exact(mid, prec) - IntervalValue.exact(fmid, prec) / fprime
            nlo = max(lo, newton.lo)
            nhi = min(hi, newton.hi)
            if nlo <= nhi and (nhi - nlo) < (hi - lo) / 2:
                fnlo = poly_eval(coeffs, nlo)
                fnhi = poly_eval(coeffs, nhi)
                if fnlo == 0:
                    return IntervalValue(nlo, nlo, prec)
                if fnhi == 0:
                    return IntervalValue(nhi, nhi, prec)
                if (fnlo > 0) != (fnhi > 0):
                    lo, hi, flo, fhi = nlo, nhi, fnlo, fnhi
                    stepped = True
        if not stepped:
            if (fmid > 0) == (flo > 0):
                lo, flo = mid, fmid
            else:
                hi, fhi = mid, fmid
    return IntervalValue(lo, hi, prec)
