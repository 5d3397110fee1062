"""Stability constants and near-extremal family audits.

The constants quantify how far below p^t a shifted 3-wise t-intersecting
family must fall once it is not one of the two frontier families, and how the
measure deficit controls the symmetric difference to the nearest frontier.
All of them are rigorous enclosures built from the hitting rate; the frontier
measure gap eps3 is an exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from .claims import is_at_most_p0, is_exactly_p0
from .families import (
    DomainError,
    SetFamily,
    frontier_family,
    frontier_measure,
    interval3_mask,
    is_r_wise_t_intersecting,
    is_up_closed,
    p_measure,
    symmetric_difference_measure,
)
from .intervals import DEFAULT_PRECISION, IntervalValue, PrecisionExhausted
from .shifting import is_shifted
from .walks import alpha

F = Fraction

MIN_T = 15
DEFAULT_PRECISION_CAP = 4096


@dataclass(frozen=True)
class StabilityConstants:
    """The full constant set at one (t, p)."""

    t: int
    p: Fraction
    at_threshold: bool  # p equals the crossing threshold exactly
    precision: int
    eps1: IntervalValue
    eps2: IntervalValue
    eps3: IntervalValue
    eps3_exact: Fraction
    eps0: IntervalValue
    eps0_prime: IntervalValue
    delta1: IntervalValue
    delta2: IntervalValue
    c1: IntervalValue
    c2: IntervalValue
    c: IntervalValue

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "p": f"{self.p.numerator}/{self.p.denominator}",
            "at_threshold": self.at_threshold,
            "precision": self.precision,
            "eps1": self.eps1.to_dict(),
            "eps2": self.eps2.to_dict(),
            "eps3": self.eps3.to_dict(),
            "eps3_exact": str(self.eps3_exact),
            "eps0": self.eps0.to_dict(),
            "eps0_prime": self.eps0_prime.to_dict(),
            "delta1": self.delta1.to_dict(),
            "delta2": self.delta2.to_dict(),
            "C1": self.c1.to_dict(),
            "C2": self.c2.to_dict(),
            "C": self.c.to_dict(),
        }


def frontier_gap_exact(t: int, p: Fraction) -> Fraction:
    """mu(s=0 frontier) - mu(s=1 frontier), exactly (independent of n)."""
    gap = p**t * (1 - p) * (1 + p - (t + 2) * p * p)
    if t + 3 <= 62:
        n = t + 3
        assert gap == frontier_measure(0, t, p, n) - frontier_measure(1, t, p, n)
    return gap


def compute_constants(
    t: int,
    p: Fraction,
    precision: int = DEFAULT_PRECISION,
    precision_cap: int = DEFAULT_PRECISION_CAP,
) -> StabilityConstants:
    """All stability constants at (t, p), with precision escalation.

    Requires t >= 15 and p at most the crossing threshold (tested exactly via
    the quadratic).  Raises PrecisionExhausted if some enclosure still
    straddles its required sign at the precision cap.
    """
    if t < MIN_T:
        raise DomainError(f"stability constants require t >= {MIN_T}, got {t}")
    if not isinstance(p, Fraction) or not 0 < p < 1:
        raise DomainError("p must be a Fraction in (0, 1)")
    if not is_at_most_p0(p, t):
        raise DomainError(f"p={p} exceeds the crossing threshold for t={t}")
    at_threshold = is_exactly_p0(p, t)
    q = 1 - p
    pt = p**t
    eps3_exact = frontier_gap_exact(t, p)

    prec = precision
    while True:
        a = alpha(p, prec)
        pt_iv = IntervalValue.exact(pt, prec)
        eps1 = pt_iv - (a ** (t + 2) + a ** (t + 1))
        rhs7 = a ** (t + 2) + IntervalValue.exact(
            (comb(t + 3, 2) + 2 * (t + 2)) * p ** (t + 4) * q**2, prec
        )
        rhs8 = a ** (t + 1) + IntervalValue.exact(
            F((t + 1) * (t + 8) * (t + 9), 6) * p ** (t + 6) * q**3, prec
        )
        eps2 = (pt_iv - rhs7).min_with(pt_iv - rhs8)
        eps3 = IntervalValue.exact(eps3_exact, prec)
        one_minus_a2 = 1 - a**2
        ratio1 = (a / q) * a ** (t + 1) / IntervalValue.exact(pt * q, prec) / one_minus_a2
        ratio2 = (
            (a / q) ** 2 * a**t / IntervalValue.exact(t * p ** (t + 2) * q, prec) / one_minus_a2
        )
        delta1 = 1 - ratio1
        delta2 = 1 - ratio2
        eps0 = eps1.min_with(eps2)
        eps0_prime = eps0 if at_threshold else eps0.min_with(eps3)
        needed = [eps1, eps2, delta1, delta2, eps0, eps0_prime]
        if all(v.is_positive() for v in needed) and delta1.hi < 1 and delta2.hi < 1:
            c1 = 2 / delta1
            c2 = 2 / delta2
            return StabilityConstants(
                t=t,
                p=p,
                at_threshold=at_threshold,
                precision=prec,
                eps1=eps1,
                eps2=eps2,
                eps3=eps3,
                eps3_exact=eps3_exact,
                eps0=eps0,
                eps0_prime=eps0_prime,
                delta1=delta1,
                delta2=delta2,
                c1=c1,
                c2=c2,
                c=c1.max_with(c2),
            )
        if prec >= precision_cap:
            raise PrecisionExhausted(
                f"stability constants inconclusive at precision {prec} for t={t}, p={p}"
            )
        prec = min(2 * prec, precision_cap)


# -- audits -------------------------------------------------------------------------


@dataclass
class StabilityAudit:
    n: int
    t: int
    p: Fraction
    shifted: bool
    up_closed: bool
    intersecting: bool
    measure: Fraction
    epsilon: Optional[Fraction]
    d0: Optional[Fraction]
    d1: Optional[Fraction]
    applicable: Optional[bool]
    verdict: str
    shift_index: Optional[int]

    def to_dict(self) -> dict:
        frac = lambda x: None if x is None else f"{x.numerator}/{x.denominator}"
        return {
            "n": self.n,
            "t": self.t,
            "p": f"{self.p.numerator}/{self.p.denominator}",
            "preconditions": {
                "shifted": self.shifted,
                "up_closed": self.up_closed,
                "intersecting": self.intersecting,
            },
            "measure": frac(self.measure),
            "epsilon": frac(self.epsilon),
            "sym_diff_s0": frac(self.d0),
            "sym_diff_s1": frac(self.d1),
            "applicable": self.applicable,
            "verdict": self.verdict,
            "shift_index": self.shift_index,
        }


def locate_shift_index(family: SetFamily, t: int) -> Optional[int]:
    """max i with the s=0 single-hit witness walk W_i inside the family,
    provided W_1 is a member."""
    n = family.n

    def w(i: int) -> Optional[int]:
        if t + i + 1 > n:
            return None
        return ((1 << t) - 1) | (1 << (t + i)) | interval3_mask(t + i + 3, n)

    w1 = w(1)
    if w1 is None or w1 not in family.members:
        return None
    best = 1
    i = 2
    while True:
        wi = w(i)
        if wi is None:
            break
        if wi in family.members:
            best = i
        i += 1
    return best


def stability_audit(
    family: SetFamily,
    t: int,
    p: Fraction,
    precision: int = DEFAULT_PRECISION,
    constants: Optional[StabilityConstants] = None,
) -> StabilityAudit:
    """Audit one family against the deficit-to-distance bound.

    Precondition failures are reported in the record rather than raised.  A
    family with measure deficit epsilon >= eps0 is labeled not-applicable
    (outside the bound's hypothesis); the equality case epsilon = 0 is
    reported as such.
    """
    n = family.n
    ok_int, _ = is_r_wise_t_intersecting(family, 3, t) if len(family) else (True, None)
    mu = p_measure(family, p)
    audit = StabilityAudit(
        n=n,
        t=t,
        p=p,
        shifted=is_shifted(family),
        up_closed=is_up_closed(family),
        intersecting=ok_int,
        measure=mu,
        epsilon=None,
        d0=None,
        d1=None,
        applicable=None,
        verdict="precondition-failed",
        shift_index=locate_shift_index(family, t),
    )
    if not (audit.shifted and audit.up_closed and audit.intersecting):
        return audit
    epsilon = p**t - mu
    audit.epsilon = epsilon
    if epsilon < 0:
        return audit
    if t + 3 <= n:
        audit.d0 = symmetric_difference_measure(family, frontier_family(0, t, n), p)
        audit.d1 = symmetric_difference_measure(family, frontier_family(1, t, n), p)
    elif t <= n:
        audit.d0 = symmetric_difference_measure(family, frontier_family(0, t, n), p)
    if epsilon == 0:
        audit.verdict = "equality-case"
        audit.applicable = True
        return audit
    if constants is None:
        try:
            constants = compute_constants(t, p, precision)
        except DomainError as exc:
            audit.verdict = f"constants-unavailable: {exc}"
            return audit
        except PrecisionExhausted:
            audit.verdict = "inconclusive"
            return audit
    if epsilon < constants.eps0.lo:
        audit.applicable = True
    elif epsilon >= constants.eps0.hi:
        audit.applicable = False
        audit.verdict = "not-applicable"
        return audit
    else:
        audit.verdict = "inconclusive"
        return audit
    distances = [d for d in (audit.d0, audit.d1) if d is not None]
    if not distances:
        audit.verdict = "inconclusive"
        return audit
    dmin = min(distances)
    if dmin < constants.c.lo * epsilon:
        audit.verdict = "bound-satisfied"
    elif dmin >= constants.c.hi * epsilon:
        audit.verdict = "bound-violated"
    else:
        audit.verdict = "inconclusive"
    return audit


# -- deficit chain on prefix subfamilies -----------------------------------------------


def prefix_subfamily(t: int, n: int, tail_family: SetFamily) -> SetFamily:
    """Lift a family over [n-t] to a subfamily of the s=0 frontier on [n]:
    each member becomes [t] joined with the tail member moved past position t.

    The lift preserves shiftedness and up-closedness of the tail family.
    """
    if tail_family.n != n - t:
        raise DomainError(f"tail family must live on [{n - t}]")
    prefix = (1 << t) - 1
    out = SetFamily(n, (prefix | (m << t) for m in tail_family.members))
    out._shifted = tail_family._shifted
    out._up_closed = tail_family._up_closed
    return out


@dataclass(frozen=True)
class DeficitChain:
    """The quantities of the deficit-controls-distance argument for a
    subfamily of the s=0 frontier."""

    a: Fraction  # measure of the family outside the frontier (zero here)
    b: Fraction  # measure of the frontier outside the family
    epsilon: Fraction
    holds: bool


def deficit_chain(family: SetFamily, t: int, p: Fraction, constants: StabilityConstants) -> DeficitChain:
    """Check epsilon >= b - a, b - a > delta1 * b, and a + b < (2/delta1) epsilon
    conservatively through the delta1 enclosure."""
    n = family.n
    frontier = frontier_family(0, t, n)
    outside = SetFamily(n, family.members - frontier.members)
    missing = SetFamily(n, frontier.members - family.members)
    a = p_measure(outside, p)
    b = p_measure(missing, p)
    epsilon = p**t - p_measure(family, p)
    ok = (
        epsilon >= b - a
        and b - a > constants.delta1.hi * b
        and a + b < (2 / constants.delta1.hi) * epsilon
    )
    return DeficitChain(a=a, b=b, epsilon=epsilon, holds=ok)
