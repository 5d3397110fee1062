"""Rigorous verification registry for the threshold and margin inequalities.

Each registered claim is decomposed into points; a point is either an exact
rational comparison (decided outright) or an interval comparison evaluated at
increasing precision until the enclosures separate strictly.  A "holds" or
"fails" verdict is only ever issued on strict separation; when the precision
cap is reached first, the point is reported as inconclusive, never silently
passed.

The central quantities: the crossing threshold p0(t) = 2/(sqrt(4t+9)-1) where
the s=0 and s=1 frontier measures meet (equivalently the positive root of
(t+2)p^2 - p - 1), the hitting rate alpha(p), and the decreasing majorant
beta(t) = log p0(t) + (t+1) p0(t)^2 that powers the tail arguments for large t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt
from typing import Callable, NamedTuple, Optional, Sequence

from .families import DomainError, frontier_measure
from .intervals import DEFAULT_PRECISION, IntervalValue, refine_polynomial_root
from .walks import alpha, alpha_from_interval, f_closed

F = Fraction

DEFAULT_T_MAX = 500
DEFAULT_GRID = 512
DEFAULT_PRECISION_CAP = 1024


# -- threshold algebra ---------------------------------------------------------


def p0_exact(t: int) -> Optional[Fraction]:
    """Exact rational value of the crossing threshold, when 4t+9 is a square."""
    if t < 1:
        raise DomainError("t must be >= 1")
    d = 4 * t + 9
    r = isqrt(d)
    if r * r == d:
        return Fraction(2, r - 1)
    return None


_P0_CACHE: dict[tuple[int, int], IntervalValue] = {}


def p0(t: int, precision: int = DEFAULT_PRECISION) -> IntervalValue:
    """Enclosure of the crossing threshold 2/(sqrt(4t+9)-1).

    Also enclosed independently as the positive root of (t+2)p^2 - p - 1;
    the returned interval is the intersection of the two routes.
    """
    if t < 1:
        raise DomainError("t must be >= 1")
    key = (t, precision)
    if key not in _P0_CACHE:
        surd = 2 / (IntervalValue.exact(4 * t + 9, precision).sqrt() - 1)
        quad = refine_polynomial_root([F(-1), F(-1), F(t + 2)], F(0), F(1), precision)
        _P0_CACHE[key] = surd.intersect(quad)
    return _P0_CACHE[key]


def t0(p: Fraction) -> Fraction:
    """Largest admissible t for a given p: q(1+2p)/p^2, exactly."""
    if not isinstance(p, Fraction):
        raise DomainError("p must be an exact Fraction")
    if not 0 < p < 1:
        raise DomainError(f"p={p} outside (0, 1)")
    return (1 - p) * (1 + 2 * p) / (p * p)


_BETA_CACHE: dict[tuple[int, int], IntervalValue] = {}


def beta(t: int, precision: int = DEFAULT_PRECISION) -> IntervalValue:
    """log p0(t) + (t+1) p0(t)^2, strictly decreasing in t."""
    key = (t, precision)
    if key not in _BETA_CACHE:
        P = p0(t, precision)
        _BETA_CACHE[key] = P.log() + (t + 1) * P**2
    return _BETA_CACHE[key]


_ALPHA_P0_CACHE: dict[tuple[int, int], IntervalValue] = {}


def alpha_at_p0(t: int, precision: int = DEFAULT_PRECISION) -> IntervalValue:
    key = (t, precision)
    if key not in _ALPHA_P0_CACHE:
        _ALPHA_P0_CACHE[key] = alpha_from_interval(p0(t, precision))
    return _ALPHA_P0_CACHE[key]


@dataclass(frozen=True)
class ThresholdParams:
    """The threshold bundle for one t."""

    t: int
    p0: IntervalValue
    p0_rational: Optional[Fraction]
    beta: IntervalValue
    t0_of_p0: IntervalValue  # encloses t itself; a built-in consistency check

    @staticmethod
    def compute(t: int, precision: int = DEFAULT_PRECISION) -> "ThresholdParams":
        P = p0(t, precision)
        tt = (1 - P) * (1 + 2 * P) / P**2
        params = ThresholdParams(t, P, p0_exact(t), beta(t, precision), tt)
        if not (0 < P.lo and P.hi < 1):
            raise DomainError("threshold enclosure escaped (0, 1)")
        if not tt.contains(F(t)):
            raise DomainError("t0(p0(t)) enclosure does not contain t")
        return params


def is_at_most_p0(p: Fraction, t: int) -> bool:
    """Exact test p <= p0(t) via the sign of (t+2)p^2 - p - 1."""
    return (t + 2) * p * p - p - 1 <= 0


def is_exactly_p0(p: Fraction, t: int) -> bool:
    return (t + 2) * p * p - p - 1 == 0


# -- claim report plumbing --------------------------------------------------------


@dataclass(frozen=True)
class PointResult:
    label: str
    verdict: str  # "holds" | "fails" | "inconclusive"
    margin: Optional[Fraction]
    precision: int

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "verdict": self.verdict,
            "margin": None if self.margin is None else str(self.margin),
            "margin_approx": None if self.margin is None else float(self.margin),
            "precision": self.precision,
        }


@dataclass
class ClaimReport:
    claim_id: str
    description: str
    domain: str
    points: list[PointResult] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if any(p.verdict == "fails" for p in self.points):
            return "fails"
        if any(p.verdict == "inconclusive" for p in self.points):
            return "inconclusive"
        return "holds"

    @property
    def max_precision(self) -> int:
        return max((p.precision for p in self.points), default=0)

    @property
    def min_margin(self) -> Optional[Fraction]:
        margins = [p.margin for p in self.points if p.margin is not None]
        return min(margins, default=None)

    def counts(self) -> dict[str, int]:
        out = {"holds": 0, "fails": 0, "inconclusive": 0}
        for p in self.points:
            out[p.verdict] += 1
        return out

    def to_dict(self, include_points: bool = True) -> dict:
        d = {
            "claim_id": self.claim_id,
            "description": self.description,
            "domain": self.domain,
            "verdict": self.verdict,
            "counts": self.counts(),
            "max_precision": self.max_precision,
            "min_margin": None if self.min_margin is None else str(self.min_margin),
            "min_margin_approx": None if self.min_margin is None else float(self.min_margin),
        }
        if include_points:
            d["points"] = [p.to_dict() for p in self.points]
        return d


class IntervalPoint(NamedTuple):
    label: str
    diff: Callable[[int], IntervalValue]  # claim holds iff strictly positive


class ExactPoint(NamedTuple):
    label: str
    check: Callable[[], tuple[bool, Optional[Fraction]]]


Point = IntervalPoint | ExactPoint


def _decide(point: Point, precision: int, cap: int) -> PointResult:
    if isinstance(point, ExactPoint):
        ok, margin = point.check()
        return PointResult(point.label, "holds" if ok else "fails", margin, 0)
    prec = precision
    while True:
        diff = point.diff(prec)
        if diff.lo > 0:
            return PointResult(point.label, "holds", diff.lo, prec)
        if diff.hi < 0:
            return PointResult(point.label, "fails", -diff.hi, prec)
        if prec >= cap:
            return PointResult(point.label, "inconclusive", None, prec)
        prec = min(2 * prec, cap)


# -- grids -------------------------------------------------------------------------


def rational_grid(upper: Fraction, count: int, include_upper: bool = True) -> list[Fraction]:
    """count evenly spaced rationals in (0, upper], or (0, upper) when open."""
    last = count if include_upper else count - 1
    return [upper * k / count for k in range(1, last + 1)]


# -- claim builders -----------------------------------------------------------------


def _build_a1(t_range, grid) -> list[Point]:
    points: list[Point] = []
    for p in rational_grid(F(56, 100), grid, include_upper=False):
        points.append(
            IntervalPoint(
                f"alpha({p}) < p+p^3",
                lambda prec, p=p: IntervalValue.exact(p + p**3, prec) - alpha(p, prec),
            )
        )
    return points


def _build_a1_5(t_range, grid) -> list[Point]:
    points: list[Point] = [
        IntervalPoint("beta(13) < 0", lambda prec: -beta(13, prec)),
        IntervalPoint(
            "beta(20) < -log(1.29)",
            lambda prec: -IntervalValue.exact(F(129, 100), prec).log() - beta(20, prec),
        ),
        IntervalPoint(
            "beta(43) < -log(2)",
            lambda prec: -IntervalValue.exact(2, prec).log() - beta(43, prec),
        ),
    ]
    lo, hi = t_range
    for t in range(lo, hi):
        points.append(
            IntervalPoint(
                f"beta({t}) > beta({t + 1})",
                lambda prec, t=t: beta(t, prec) - beta(t + 1, prec),
            )
        )
    return points


def _power_claim(label_fmt: str, t_range, rhs) -> list[Point]:
    """Points of the form p0^t - rhs(t, P, A, Q) > 0 swept over integer t."""
    points: list[Point] = []
    for t in range(t_range[0], t_range[1] + 1):
        def diff(prec, t=t):
            P = p0(t, prec)
            A = alpha_at_p0(t, prec)
            Q = 1 - P
            return P**t - rhs(t, P, A, Q)

        points.append(IntervalPoint(label_fmt.format(t=t), diff))
    return points


def _build_a2(t_range, grid) -> list[Point]:
    return _power_claim("alpha^(t+1) < p^t at t={t}", t_range, lambda t, P, A, Q: A ** (t + 1))


def _build_a2_5(t_range, grid) -> list[Point]:
    return _power_claim(
        "1.29 alpha^(t+1) < p^t at t={t}",
        t_range,
        lambda t, P, A, Q: F(129, 100) * A ** (t + 1),
    )


def _build_a3(t_range, grid) -> list[Point]:
    return _power_claim(
        "alpha^(t+2)+alpha^(t+1) < p^t at t={t}",
        t_range,
        lambda t, P, A, Q: A ** (t + 2) + A ** (t + 1),
    )


def _s2_tail(m_of_t: Callable[[int], int]):
    def rhs(t, P, A, Q):
        m = m_of_t(t)
        total = A ** (t + 1)
        for i in range(3):
            total = total + comb(m, i) * P ** (t + 6 - i) * Q**i
        return total

    return rhs


def _g_of(p: Fraction, t: Fraction) -> Fraction:
    q = 1 - p
    return F(1, 2) * p**4 * (q * q * t * t - (p - 3) * q * t + 2)


def _g_tilde(p: Fraction) -> Fraction:
    return F(1, 2) * (p**3 - p**2 + p + 1) * (2 * p**3 - p**2 - p + 1)


_SAMPLE_PS = [F(1, 7), F(1, 5), F(1, 4), F(3, 10), F(2, 5), F(1, 2), F(3, 5), F(7, 10)]
_SAMPLE_TS = [1, 2, 5, 8, 15, 43, 100, 500]


def _build_a4(t_range, grid) -> list[Point]:
    points = _power_claim(
        "sum C(t+2,i) p^(t+6-i) q^i + alpha^(t+1) < p^t at t={t}",
        t_range,
        _s2_tail(lambda t: t + 2),
    )
    for p in _SAMPLE_PS:
        for t in _SAMPLE_TS:
            def ident(p=p, t=t):
                q = 1 - p
                lhs = sum(comb(t + 2, i) * p ** (6 - i) * q**i for i in range(3))
                return lhs == _g_of(p, F(t)), None

            points.append(ExactPoint(f"g closed form at p={p}, t={t}", ident))

            def increasing(p=p, t=t):
                gap = _g_of(p, F(t + 1)) - _g_of(p, F(t))
                return gap > 0, gap

            points.append(ExactPoint(f"g increasing in t at p={p}, t={t}", increasing))
    for p in _SAMPLE_PS:
        def at_t0(p=p):
            return _g_of(p, t0(p)) == _g_tilde(p), None

        points.append(ExactPoint(f"g(p, t0(p)) = gtilde(p) at p={p}", at_t0))
    for p in rational_grid(F(8, 10), grid):
        def below_half(p=p):
            gap = F(1, 2) - _g_tilde(p)
            return gap > 0, gap

        points.append(ExactPoint(f"gtilde({p}) < 1/2", below_half))
    return points


def _build_a4_t6(t_range, grid) -> list[Point]:
    return _power_claim(
        "sum C(t+6,i) p^(t+6-i) q^i + alpha^(t+1) < p^t at t={t}",
        t_range,
        _s2_tail(lambda t: t + 6),
    )


def _h5_tilde(p: Fraction) -> Fraction:
    return F(1, 2) * (5 * p**5 - 4 * p**4 - 3 * p**3 + 3 * p**2 + 2 * p + 1)


def _build_a5(t_range, grid) -> list[Point]:
    points = _power_claim(
        "alpha^(t+2) + (C(t+3,2)+2(t+2)) p^(t+4) q^2 < p^t at t={t}",
        t_range,
        lambda t, P, A, Q: A ** (t + 2) + (comb(t + 3, 2) + 2 * (t + 2)) * P ** (t + 4) * Q**2,
    )
    for t in _SAMPLE_TS:
        def coeff_ident(t=t):
            lhs = 2 * (comb(t + 3, 2) + 2 * (t + 2))
            return lhs == t * t + 9 * t + 14, None

        points.append(ExactPoint(f"coefficient identity at t={t}", coeff_ident))
    for p in _SAMPLE_PS:
        def at_t0(p=p):
            tt = t0(p)
            h = (p + p**3) + F(1, 2) * (tt * tt + 9 * tt + 14) * p**4 * (1 - p) ** 2
            return h == _h5_tilde(p), None

        points.append(ExactPoint(f"h(p, t0(p)) = htilde(p) at p={p}", at_t0))
    # htilde < 1 on (0, p0(9)]: rational grid strictly below, plus the endpoint
    lo9 = p0(9, 128).lo
    for p in rational_grid(lo9, grid):
        def below_one(p=p):
            gap = 1 - _h5_tilde(p)
            return gap > 0, gap

        points.append(ExactPoint(f"htilde({p}) < 1", below_one))
    points.append(
        IntervalPoint(
            "htilde(p0(9)) < 1",
            lambda prec: 1
            - (
                lambda P: F(1, 2) * (5 * P**5 - 4 * P**4 - 3 * P**3 + 3 * P**2 + 2 * P + 1)
            )(p0(9, prec)),
        )
    )
    return points


def _h6_tilde(p: Fraction) -> Fraction:
    q = 1 - p
    return F(1, 6) * q**3 * (1 + p * q) * (1 + p + 6 * p**2) * (1 + p + 7 * p**2)


def _build_a6(t_range, grid) -> list[Point]:
    points = _power_claim(
        "alpha^(t+1) + (t+1)(t+8)(t+9)/6 p^(t+6) q^3 < p^t at t={t}",
        t_range,
        lambda t, P, A, Q: A ** (t + 1) + F((t + 1) * (t + 8) * (t + 9), 6) * P ** (t + 6) * Q**3,
    )
    for p in _SAMPLE_PS:
        def at_t0(p=p):
            tt = t0(p)
            h = F(1, 6) * (tt + 1) * (tt + 8) * (tt + 9) * p**6 * (1 - p) ** 3
            return h == _h6_tilde(p), None

        points.append(ExactPoint(f"htilde6 factorization at p={p}", at_t0))

    def h6_interval(P: IntervalValue) -> IntervalValue:
        Q = 1 - P
        return (
            F(1, 6)
            * Q**3
            * (1 + P * Q)
            * (1 + P + 6 * P**2)
            * (1 + P + 7 * P**2)
        )

    points.append(
        IntervalPoint(
            "htilde6(p0(20)) < 0.2244",
            lambda prec: F(2244, 10000) - h6_interval(p0(20, prec)),
        )
    )
    points.append(
        ExactPoint("1/1.29 < 0.7752", lambda: (F(100, 129) < F(7752, 10000), F(7752, 10000) - F(100, 129)))
    )
    points.append(
        ExactPoint("0.7752 + 0.2244 < 1", lambda: (True, 1 - F(7752 + 2244, 10000)))
    )
    lo20 = p0(20, 128).lo
    ps = rational_grid(lo20, grid // 4)
    for pa, pb in zip(ps, ps[1:]):
        def increasing(pa=pa, pb=pb):
            gap = _h6_tilde(pb) - _h6_tilde(pa)
            return gap > 0, gap

        points.append(ExactPoint(f"htilde6 increasing at {pa}..{pb}", increasing))
    return points


def _hs0(p: Fraction, prec: int) -> IntervalValue:
    A = alpha_from_interval(IntervalValue.exact(p, prec))
    Q = IntervalValue.exact(1 - p, prec)
    return A * (Q / A) ** 2 * (1 - A**2)


def _build_s0(t_range, grid) -> list[Point]:
    points: list[Point] = []
    ps = rational_grid(F(1, 3), grid)
    for p in ps:
        points.append(
            IntervalPoint(f"h({p}) > 1", lambda prec, p=p: _hs0(p, prec) - 1)
        )
    for pa, pb in zip(ps, ps[1:]):
        points.append(
            IntervalPoint(
                f"h decreasing at {pa}..{pb}",
                lambda prec, pa=pa, pb=pb: _hs0(pa, prec) - _hs0(pb, prec),
            )
        )
    # alpha/q increasing in p, and < 1 below 0.45
    qs = rational_grid(F(45, 100), grid // 2, include_upper=False)

    def aq(p, prec):
        A = alpha_from_interval(IntervalValue.exact(p, prec))
        return A / (1 - p)

    for p in qs:
        points.append(IntervalPoint(f"alpha/q < 1 at p={p}", lambda prec, p=p: 1 - aq(p, prec)))
    for pa, pb in zip(qs, qs[1:]):
        points.append(
            IntervalPoint(
                f"alpha/q increasing at {pa}..{pb}",
                lambda prec, pa=pa, pb=pb: aq(pb, prec) - aq(pa, prec),
            )
        )
    return points


def _s1_main(t: int, prec: int) -> IntervalValue:
    P = p0(t, prec)
    A = alpha_at_p0(t, prec)
    Q = 1 - P
    return t * (P / A) ** (t + 2) * Q**3 * (1 - A**2)


def _s1_g(t: int, prec: int) -> IntervalValue:
    P = p0(t, prec)
    return t * (1 - P**2) ** (t + 2) * (1 - 3 * P + 2 * P**2)


def _build_s1(t_range, grid) -> list[Point]:
    points: list[Point] = []
    for t in range(t_range[0], t_range[1] + 1):
        points.append(
            IntervalPoint(
                f"t (p/alpha)^(t+2) q^3 (1-alpha^2) > 1 at t={t}",
                lambda prec, t=t: _s1_main(t, prec) - 1,
            )
        )
    g_lo = max(t_range[0], 14)
    for t in range(g_lo, t_range[1] + 1):
        points.append(
            IntervalPoint(
                f"t (1-p^2)^(t+2) (1-3p+2p^2) > 1 at t={t}",
                lambda prec, t=t: _s1_g(t, prec) - 1,
            )
        )
    for t in range(g_lo, t_range[1]):
        points.append(
            IntervalPoint(
                f"g(p0(t)) increasing at t={t}",
                lambda prec, t=t: _s1_g(t + 1, prec) - _s1_g(t, prec),
            )
        )
    ps = rational_grid(F(1, 3), grid // 2)
    for p in ps:
        def premise1(prec, p=p):
            A = alpha_from_interval(IntervalValue.exact(p, prec))
            return p / A - (1 - p * p)

        points.append(IntervalPoint(f"p/alpha > 1-p^2 at p={p}", premise1))

        def premise2(prec, p=p):
            A = alpha_from_interval(IntervalValue.exact(p, prec))
            q = 1 - p
            return q**3 * (1 - A**2) - (1 - 3 * p + 2 * p * p)

        points.append(IntervalPoint(f"q^3(1-alpha^2) > 1-3p+2p^2 at p={p}", premise2))
    return points


def _build_mono_g(t_range, grid) -> list[Point]:
    points: list[Point] = []
    for t in range(t_range[0], t_range[1] + 1):
        points.append(
            IntervalPoint(
                f"(t+12) p0^2 q0 < 16/9 at t={t}",
                lambda prec, t=t: F(16, 9) - (t + 12) * p0(t, prec) ** 2 * (1 - p0(t, prec)),
            )
        )
    for t in range(t_range[0], t_range[1]):
        points.append(
            IntervalPoint(
                f"(t+12) p0^2 q0 decreasing at t={t}",
                lambda prec, t=t: (t + 12) * p0(t, prec) ** 2 * (1 - p0(t, prec))
                - (t + 13) * p0(t + 1, prec) ** 2 * (1 - p0(t + 1, prec)),
            )
        )
    # exact path-count ratio: f(s,t)/f(s+1,t) > 16/(9(t+12)) for s >= 3
    for t in range(max(t_range[0], 15), t_range[1] + 1):
        def ratio(t=t):
            worst: Optional[Fraction] = None
            for s in range(3, 41):
                lhs = 9 * (t + 12) * f_closed(s, t)
                rhs = 16 * f_closed(s + 1, t)
                margin = Fraction(lhs - rhs, 9 * (t + 12) * f_closed(s + 1, t))
                if worst is None or margin < worst:
                    worst = margin
                if margin <= 0:
                    return False, margin
            return True, worst

        points.append(ExactPoint(f"f-ratio above 16/(9(t+12)) for s in [3,40], t={t}", ratio))
    ps = rational_grid(F(2, 3), grid // 2, include_upper=False)
    for pa, pb in zip(ps, ps[1:]):
        def p2q_inc(pa=pa, pb=pb):
            gap = pb * pb * (1 - pb) - pa * pa * (1 - pa)
            return gap > 0, gap

        points.append(ExactPoint(f"p^2 q increasing at {pa}..{pb}", p2q_inc))
    return points


def _build_thresh(t_range, grid) -> list[Point]:
    points: list[Point] = []
    for t in range(t_range[0], t_range[1] + 1):
        def crossing(t=t):
            def gap(p: Fraction) -> Fraction:
                # n-independent measure difference of the s=0 and s=1 frontiers
                q = 1 - p
                g = p**t - (p ** (t + 3) + (t + 3) * p ** (t + 2) * q)
                if t + 3 <= 62:
                    n = t + 3
                    if g != frontier_measure(0, t, p, n) - frontier_measure(1, t, p, n):
                        raise ArithmeticError("closed form disagrees with frontier measures")
                return g

            exact = p0_exact(t)
            if exact is not None:
                step = min(exact, 1 - exact) / 8
                below, above = exact - step, exact + step
                if gap(exact) != 0:
                    return False, abs(gap(exact))
            else:
                enclosure = p0(t, 128)
                below, above = enclosure.lo, enclosure.hi
                # the dyadic endpoints must straddle the quadratic root
                if not ((t + 2) * below**2 - below - 1 < 0 < (t + 2) * above**2 - above - 1):
                    return False, None
            gb, ga = gap(below), gap(above)
            if gb > 0 > ga:
                return True, min(gb, -ga)
            return False, None

        points.append(ExactPoint(f"measures cross exactly at p0({t})", crossing))
    return points


@dataclass(frozen=True)
class ClaimSpec:
    claim_id: str
    description: str
    default_t_range: Optional[tuple[int, int]]
    build: Callable[[Optional[tuple[int, int]], int], list[Point]]


CLAIM_REGISTRY: dict[str, ClaimSpec] = {
    spec.claim_id: spec
    for spec in [
        ClaimSpec("A1", "alpha < p + p^3 on (0, 0.56)", None, _build_a1),
        ClaimSpec(
            "A1.5",
            "beta decreasing; beta(13)<0, beta(20)<-log 1.29, beta(43)<-log 2",
            (1, DEFAULT_T_MAX),
            _build_a1_5,
        ),
        ClaimSpec("A2", "alpha^(t+1) < p^t at p=p0(t), t >= 9", (9, DEFAULT_T_MAX), _build_a2),
        ClaimSpec(
            "A2.5", "1.29 alpha^(t+1) < p^t at p=p0(t), t >= 20", (20, DEFAULT_T_MAX), _build_a2_5
        ),
        ClaimSpec(
            "A3",
            "alpha^(t+2) + alpha^(t+1) < p^t at p=p0(t), t >= 15",
            (15, DEFAULT_T_MAX),
            _build_a3,
        ),
        ClaimSpec(
            "A4",
            "s=2 tail bound with C(t+2,i) coefficients, t >= 43, plus g closed form",
            (43, DEFAULT_T_MAX),
            _build_a4,
        ),
        ClaimSpec(
            "A4-t6",
            "s=2 tail bound variant with C(t+6,i) coefficients, t >= 43",
            (43, DEFAULT_T_MAX),
            _build_a4_t6,
        ),
        ClaimSpec(
            "A5",
            "alpha^(t+2) + (C(t+3,2)+2(t+2)) p^(t+4) q^2 < p^t, t >= 8",
            (8, DEFAULT_T_MAX),
            _build_a5,
        ),
        ClaimSpec(
            "A6",
            "alpha^(t+1) + (t+1)(t+8)(t+9)/6 p^(t+6) q^3 < p^t, t >= 15",
            (15, DEFAULT_T_MAX),
            _build_a6,
        ),
        ClaimSpec("S0", "alpha (q/alpha)^2 (1-alpha^2) > 1 for p <= 1/3", None, _build_s0),
        ClaimSpec(
            "S1",
            "t (p/alpha)^(t+2) q^3 (1-alpha^2) > 1 at p=p0(t), t >= 11",
            (11, DEFAULT_T_MAX),
            _build_s1,
        ),
        ClaimSpec(
            "MONO-G",
            "(t+12) p^2 q < 16/9 at p=p0(t) and the path-count ratio bound",
            (8, DEFAULT_T_MAX),
            _build_mono_g,
        ),
        ClaimSpec(
            "THRESH",
            "frontier measures cross exactly at p0(t)",
            (1, DEFAULT_T_MAX),
            _build_thresh,
        ),
    ]
}

CLAIM_IDS = list(CLAIM_REGISTRY)

_ALIASES = {"A4-variant-t6": "A4-t6", "A1_5": "A1.5", "A2_5": "A2.5"}


def run_check(
    claim_id: str,
    t_range: Optional[tuple[int, int]] = None,
    precision: int = DEFAULT_PRECISION,
    precision_cap: int = DEFAULT_PRECISION_CAP,
    grid: int = DEFAULT_GRID,
) -> ClaimReport:
    """Evaluate one registered claim over its (possibly overridden) domain."""
    claim_id = _ALIASES.get(claim_id, claim_id)
    if claim_id not in CLAIM_REGISTRY:
        raise DomainError(f"unknown claim id {claim_id!r}; known: {', '.join(CLAIM_IDS)}")
    spec = CLAIM_REGISTRY[claim_id]
    rng = t_range or spec.default_t_range
    if spec.default_t_range is None:
        domain = f"p grid ({grid} points)"
    else:
        lo, hi = rng
        if lo > hi:
            raise DomainError("empty t range")
        domain = f"t in [{lo}, {hi}]"
    report = ClaimReport(claim_id, spec.description, domain)
    for point in spec.build(rng, grid):
        report.points.append(_decide(point, precision, precision_cap))
    return report


def run_all(
    claim_ids: Optional[Sequence[str]] = None,
    precision: int = DEFAULT_PRECISION,
    precision_cap: int = DEFAULT_PRECISION_CAP,
    grid: int = DEFAULT_GRID,
    t_range: Optional[tuple[int, int]] = None,
    workers: int = 1,
) -> list[ClaimReport]:
    """Run several claims, optionally in parallel, merged in registry order."""
    ids = [_ALIASES.get(c, c) for c in (claim_ids or CLAIM_IDS)]
    for c in ids:
        if c not in CLAIM_REGISTRY:
            raise DomainError(f"unknown claim id {c!r}")
    if workers > 1 and len(ids) > 1:
        import concurrent.futures as cf

        with cf.ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {
                c: pool.submit(run_check, c, t_range, precision, precision_cap, grid)
                for c in ids
            }
            results = {c: f.result() for c, f in futures.items()}
    else:
        results = {c: run_check(c, t_range, precision, precision_cap, grid) for c in ids}
    return [results[c] for c in ids]
