"""The subset-to-lattice-walk dictionary.

A subset G of [n] is read as an n-step walk from the origin: step i goes up
when i is in G and right otherwise.  Everything here is phrased in terms of
hitting the lines y = 2x + c: classification of walks by how often they hit,
the reflection injection between classes, exact ballot-style path counts,
exact truncated hitting measures, and a rigorous enclosure of the infinite
walk's hitting rate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .families import DomainError, Subset, interval3_mask
from .intervals import DEFAULT_PRECISION, IntervalValue, refine_polynomial_root


@dataclass(frozen=True)
class HitRecord:
    """Lattice points (in walk order) where a walk meets y = 2x + c."""

    line_offset: int
    hit_points: tuple[tuple[int, int], ...]


class WalkClass(enum.Enum):
    TILDE = "tilde"  # hits y = 2x + t + 1
    DOT = "dot"  # hits y = 2x + t exactly once, never t + 1
    DDOT = "ddot"  # hits y = 2x + t at least twice, never t + 1
    MISS = "miss"  # never hits y = 2x + t


def hits_line(g: Subset, c: int) -> HitRecord:
    """All visits of the walk of g to the line y = 2x + c (c >= 1)."""
    if c < 1:
        raise DomainError("line offset must be >= 1")
    points = []
    ups = 0
    for k in range(1, g.n + 1):
        if g.bits >> (k - 1) & 1:
            ups += 1
        if 3 * ups == 2 * k + c:
            points.append((k - ups, ups))
    return HitRecord(c, tuple(points))


def max_line_offset(g: Subset) -> int:
    """Largest c >= 1 whose line the walk hits (0 when it hits none)."""
    best = 0
    ups = 0
    for k in range(1, g.n + 1):
        if g.bits >> (k - 1) & 1:
            ups += 1
        best = max(best, 3 * ups - 2 * k)
    return best


def classify(g: Subset, t: int) -> WalkClass:
    """Partition class of the walk relative to the lines y=2x+t and y=2x+t+1.

    A walk reaching the higher line is TILDE even when it also meets the
    lower one; offsets grow by unit steps, so TILDE walks always hit the
    lower line on the way up.
    """
    if t < 1:
        raise DomainError("t must be >= 1")
    hits_t = 0
    ups = 0
    for k in range(1, g.n + 1):
        if g.bits >> (k - 1) & 1:
            ups += 1
        d = 3 * ups - 2 * k
        if d == t + 1:
            return WalkClass.TILDE
        if d == t:
            hits_t += 1
    if hits_t == 0:
        return WalkClass.MISS
    return WalkClass.DOT if hits_t == 1 else WalkClass.DDOT


def reflect_between_first_two_hits(g: Subset, t: int) -> Subset:
    """Rotate the walk segment between its first two visits to y = 2x + t by
    180 degrees around the segment midpoint.

    Defined on DDOT walks only; the image hits y = 2x + t + 2 and the map is
    injective on the DDOT class.
    """
    if classify(g, t) is not WalkClass.DDOT:
        raise DomainError("reflection requires a walk hitting the line exactly twice or more")
    steps = []
    ups = 0
    for k in range(1, g.n + 1):
        if g.bits >> (k - 1) & 1:
            ups += 1
        if 3 * ups == 2 * k + t:
            steps.append(k)
            if len(steps) == 2:
                break
    k1, k2 = steps
    bits = g.bits
    out = bits
    for i in range(k1 + 1, k2 + 1):
        src = k1 + k2 + 1 - i
        bit = (bits >> (src - 1)) & 1
        out = (out & ~(1 << (i - 1))) | (bit << (i - 1))
    return Subset(g.n, out)


# -- ballot counts -------------------------------------------------------------


def count_walks_ballot(s: int, t: int) -> int:
    """Walks from the origin to (s, 2s+t) never touching y = 2x + t + 1,
    counted by depth-first enumeration."""
    if s < 0 or t < 1:
        raise DomainError("need s >= 0 and t >= 1")
    if 3 * s + t + 1 > 40:
        raise DomainError("brute-force ballot count capped at 3s+t+1 <= 40")
    target_x, target_y = s, 2 * s + t

    def walk(x: int, y: int) -> int:
        if y - 2 * x > t:  # touched the forbidden line
            return 0
        if x > target_x or y > target_y:
            return 0
        if x == target_x and y == target_y:
            return 1
        return walk(x + 1, y) + walk(x, y + 1)

    return walk(0, 0)


def f_closed(s: int, t: int) -> int:
    """Closed form (t+1)/(3s+t+1) * C(3s+t+1, s) for the same count."""
    if s < 0 or t < 1:
        raise DomainError("need s >= 0 and t >= 1")
    total = 3 * s + t + 1
    value, rem = divmod((t + 1) * comb(total, s), total)
    assert rem == 0, "ballot closed form must be an integer"
    return value


# -- truncated hitting measures ---------------------------------------------------


def hitting_walk_counts(c: int, n: int) -> list[list[int]]:
    """counts[k][j]: k-step walks with j up-steps that hit y = 2x + c in
    their first k steps, for every k <= n."""
    if c < 1 or n < 1:
        raise DomainError("need c >= 1 and n >= 1")
    table: list[list[int]] = [[0]]
    state: dict[tuple[int, bool], int] = {(0, False): 1}
    for k in range(1, n + 1):
        nxt: dict[tuple[int, bool], int] = {}
        for (ups, hit), cnt in state.items():
            for up in (0, 1):
                u2 = ups + up
                h2 = hit or (3 * u2 == 2 * k + c)
                key = (u2, h2)
                nxt[key] = nxt.get(key, 0) + cnt
        state = nxt
        row = [0] * (k + 1)
        for (ups, hit), cnt in state.items():
            if hit:
                row[ups] += cnt
        table.append(row)
    return table


def truncated_hitting_measure(c: int, n: int, p: Fraction) -> Fraction:
    """Exact measure of the n-step walks that hit y = 2x + c."""
    counts = hitting_walk_counts(c, n)[n]
    q = 1 - p
    return sum(
        (cnt * p**j * q ** (n - j) for j, cnt in enumerate(counts) if cnt),
        Fraction(0),
    )


def truncated_hitting_series(c: int, n_max: int, p: Fraction) -> list[Fraction]:
    """Truncated hitting measures for every length 1..n_max (index 0 unused)."""
    table = hitting_walk_counts(c, n_max)
    q = 1 - p
    out: list[Fraction] = [Fraction(0)]
    for n in range(1, n_max + 1):
        out.append(
            sum(
                (cnt * p**j * q ** (n - j) for j, cnt in enumerate(table[n]) if cnt),
                Fraction(0),
            )
        )
    return out


# -- the hitting rate ----------------------------------------------------------------


def alpha(p: Fraction, precision: int = DEFAULT_PRECISION) -> IntervalValue:
    """Enclosure of the base hitting rate: the root in (0,1) of x = p + (1-p)x^3.

    An infinite p-biased walk hits y = 2x + c with probability alpha**c.  Two
    routes are evaluated, the closed-form surd and an interval Newton run on
    the cubic, and the returned enclosure is their intersection.
    """
    if not isinstance(p, Fraction):
        raise DomainError("p must be an exact Fraction")
    if not 0 < p < Fraction(2, 3):
        raise DomainError(f"hitting rate defined for 0 < p < 2/3, got {p}")
    q = 1 - p
    surd = ((IntervalValue.exact((1 + 3 * p) / q, precision)).sqrt() - 1) / 2
    coeffs = [p, Fraction(-1), Fraction(0), q]
    cubic = _cubic_root(coeffs, precision)
    return surd.intersect(cubic)


def alpha_from_interval(p_enclosure: IntervalValue) -> IntervalValue:
    """Closed-form hitting rate over an interval of p values."""
    one = IntervalValue.exact(1, p_enclosure.prec)
    ratio = (one + 3 * p_enclosure) / (one - p_enclosure)
    return (ratio.sqrt() - one) / 2


def _cubic_root(coeffs, precision: int) -> IntervalValue:
    from .intervals import poly_eval

    lo = Fraction(0)
    hi = None
    for k in range(1, 64):
        candidate = 1 - Fraction(1, 1 << k)
        value = poly_eval(coeffs, candidate)
        if value == 0:
            return IntervalValue(candidate, candidate, precision)
        if value < 0:
            hi = candidate
            break
    if hi is None:
        raise DomainError("no bracket for the hitting-rate cubic (p too close to 2/3)")
    return refine_polynomial_root(coeffs, lo, hi, precision)


# -- witness walks ----------------------------------------------------------------


def min_witness_n(s: int, t: int, i: int = 1) -> int:
    """Smallest ground set on which the witness triple for the given case fits."""
    if s == 0:
        return t + i + 3
    if s == 1:
        return t + i + 6
    if s == 2:
        return t + 10
    raise DomainError("witness walks exist for s in {0, 1, 2}")


def witness_walks(s: int, t: int, i: int, n: int) -> tuple[Subset, Subset, Subset]:
    """The witness triple (W_i, W', E) for the case s in {0, 1, 2}.

    Guarantees |W_i & W' & E| = t - 1 and that W_i leads to W'; for s = 2 the
    index i is ignored (the witnesses are fixed).
    """
    from .shifting import leadsto_masks

    if t < 1 or i < 1:
        raise DomainError("need t >= 1 and i >= 1")
    if n < min_witness_n(s, t, i):
        raise DomainError(
            f"witness triple for s={s}, t={t}, i={i} needs n >= {min_witness_n(s, t, i)}"
        )

    def prefix(k: int) -> int:
        return (1 << k) - 1

    def single(e: int) -> int:
        return 1 << (e - 1) if e <= n else 0

    def block(a: int, b: int) -> int:
        b = min(b, n)
        return prefix(b) & ~prefix(a - 1) if a <= b else 0

    def tail(a: int) -> int:
        return interval3_mask(a, n) if a <= n else 0

    if s == 0:
        w = prefix(t) | single(t + i + 1) | tail(t + i + 3)
        wp = prefix(t) | single(t + i) | single(t + i + 2) | tail(t + i + 4)
        e = prefix(t - 1) | block(t + 1, t + i + 3) | tail(t + i + 5)
    elif s == 1:
        w = (prefix(t + 3) ^ single(t)) | single(t + i + 4) | tail(t + i + 6)
        wp = (prefix(t + 3) ^ single(t + 1)) | single(t + i + 3) | single(t + i + 5) | tail(t + i + 7)
        e = prefix(t + 1) | block(t + 4, t + i + 6) | tail(t + i + 8)
    elif s == 2:
        w = (prefix(t + 8) ^ single(t) ^ single(t + 3) ^ single(t + 7)) | tail(t + 10)
        wp = (prefix(t + 9) ^ single(t + 1) ^ single(t + 4) ^ single(t + 8)) | tail(t + 11)
        e = (prefix(t + 10) ^ single(t + 2) ^ single(t + 5) ^ single(t + 6)) | tail(t + 12)
    else:
        raise DomainError("witness walks exist for s in {0, 1, 2}")

    inter = (w & wp & e).bit_count()
    if inter != t - 1:
        raise AssertionError(
            f"witness intersection {inter} != t-1 for s={s}, t={t}, i={i}, n={n}"
        )
    if not leadsto_masks(w, wp):
        raise AssertionError(f"W does not lead to W' for s={s}, t={t}, i={i}, n={n}")
    return Subset(n, w), Subset(n, wp), Subset(n, e)


def all_walks(n: int) -> list[Subset]:
    """Every n-step walk."""
    return [Subset(n, m) for m in range(1 << n)]


def partition_counts(n: int, t: int) -> dict[WalkClass, int]:
    out = {cls: 0 for cls in WalkClass}
    for m in range(1 << n):
        out[classify(Subset(n, m), t)] += 1
    return out


def ddot_measure_dominated(n: int, t: int) -> bool:
    """Profile-wise comparison behind the reflection bound: at every
    cardinality there are at most as many DDOT walks as (t+2)-line hitters."""
    ddot = [0] * (n + 1)
    target = [0] * (n + 1)
    for m in range(1 << n):
        g = Subset(n, m)
        if classify(g, t) is WalkClass.DDOT:
            ddot[m.bit_count()] += 1
        if hits_line(g, t + 2).hit_points:
            target[m.bit_count()] += 1
    return all(d <= h for d, h in zip(ddot, target))
