"""Exhaustive and pruned search over up-closed intersecting families.

Up-closed families are enumerated through their antichains of minimal
generators; the r-wise t-intersecting test is applied incrementally to
generators only (valid because supersets only enlarge intersections), so the
search tree is cut at the first violating branch.  The shifted variant walks
antichains of the shifts-to order instead, whose upsets are exactly the
shifted up-closed families; there the intersecting test runs over the
inclusion-minimal members of the full upset.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .families import (
    CapabilityError,
    DomainError,
    SetFamily,
    Subset,
    canonical_family,
    canonical_form,
    is_r_wise_t_intersecting,
    is_up_closed,
    minimal_generators,
)
from .shifting import is_shifted, leadsto_masks
from .walks import WalkClass, classify, max_line_offset

MAX_ANTICHAIN_N = 6
MAX_SHIFTED_N = 8


# -- antichain enumeration ------------------------------------------------------


def _comparable(a: int, b: int) -> bool:
    return a & b == a or a & b == b


def _antichain_masks(n: int) -> Iterator[tuple[int, ...]]:
    order = sorted(range(1 << n), key=lambda m: (m.bit_count(), m))

    def dfs(chosen: list[int], candidates: list[int]) -> Iterator[tuple[int, ...]]:
        yield tuple(chosen)
        for idx, m in enumerate(candidates):
            chosen.append(m)
            rest = [c for c in candidates[idx + 1 :] if not _comparable(c, m)]
            yield from dfs(chosen, rest)
            chosen.pop()

    yield from dfs([], order)


def enumerate_antichains(n: int) -> Iterator[SetFamily]:
    """Every antichain in 2^[n] exactly once, as a generator family."""
    if not 1 <= n <= MAX_ANTICHAIN_N:
        raise CapabilityError(f"antichain enumeration capped at n <= {MAX_ANTICHAIN_N}")
    for masks in _antichain_masks(n):
        yield SetFamily(n, masks)


def count_antichains(n: int) -> int:
    """Antichain count (the monotone-function count for ground size n)."""
    if n <= 5:
        return sum(1 for _ in _antichain_masks(n))
    if n == 6:
        return _count_antichains_6()
    raise CapabilityError("antichain counting capped at n <= 6")


def _upset_bitmap(n: int, generator_masks: Sequence[int], table: list[int]) -> int:
    bits = 0
    for g in generator_masks:
        bits |= table[g]
    return bits


def _superset_table(n: int) -> list[int]:
    """table[g] = bitmap (indexed by mask) of all supersets of g."""
    size = 1 << n
    return [
        sum(1 << m for m in range(size) if m & g == g)
        for g in range(size)
    ]


def _count_antichains_6() -> int:
    # meet in the middle: monotone functions on the 6-cube are pairs of
    # monotone functions on the 5-cube with pointwise dominated upsets
    import numpy as np

    table = _superset_table(5)
    upsets = sorted({_upset_bitmap(5, masks, table) for masks in _antichain_masks(5)})
    arr = np.array(upsets, dtype=np.uint64)
    total = 0
    for v in arr:
        total += int(np.count_nonzero((arr & ~v) == 0))
    return total


# -- search -------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchOptions:
    restrict_to_shifted: bool = False
    use_isomorphism_pruning: bool = False
    measure_upper_bound_pruning: bool = True
    p_list: tuple[Fraction, ...] = (Fraction(1, 2),)
    collect_ties: bool = False

    def __post_init__(self) -> None:
        for p in self.p_list:
            if not isinstance(p, Fraction) or not 0 < p < 1:
                raise DomainError(f"p={p} must be a Fraction in (0, 1)")
        if not self.p_list:
            raise DomainError("p_list must be nonempty")


@dataclass
class SearchReport:
    n: int
    t: int
    r: int
    p: Fraction
    max_measure: Fraction
    witness: SetFamily  # minimal generators of the canonicalized maximizer
    families_examined: int
    isomorphism_classes: Optional[int]
    wall_time: float
    status: str  # "known" for (r=3, t=1, p<=2/3), else "exploratory"
    reference_measure: Fraction
    agrees_with_reference: bool
    tied_witnesses: list[SetFamily] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "r": self.r,
            "p": f"{self.p.numerator}/{self.p.denominator}",
            "max_measure": f"{self.max_measure.numerator}/{self.max_measure.denominator}",
            "max_measure_approx": float(self.max_measure),
            "witness_generators": [list(s.elements()) for s in self.witness.subsets()],
            "families_examined": self.families_examined,
            "isomorphism_classes": self.isomorphism_classes,
            "wall_time": round(self.wall_time, 4),
            "status": self.status,
            "reference_measure": f"{self.reference_measure.numerator}/{self.reference_measure.denominator}",
            "agrees_with_reference": self.agrees_with_reference,
        }


class _Best:
    __slots__ = ("measure", "upset_members", "canon", "ties")

    def __init__(self) -> None:
        self.measure: Optional[Fraction] = None
        self.upset_members: Optional[frozenset[int]] = None
        self.canon: Optional[bytes] = None
        self.ties: list[frozenset[int]] = []


def _status_for(t: int, r: int, p: Fraction) -> str:
    if r == 3 and t == 1 and p <= Fraction(2, 3):
        return "known"
    return "exploratory"


def search_max_measure(
    n: int,
    t: int,
    r: int = 3,
    options: Optional[SearchOptions] = None,
) -> list[SearchReport]:
    """Maximize the measure over up-closed r-wise t-intersecting families.

    Returns one report per p in ``options.p_list``; the whole enumeration runs
    once and every p is evaluated along the way.  Ties are broken by the
    canonical form of the full family, and the reported witness is the
    canonicalized maximizer's generator antichain.
    """
    options = options or SearchOptions()
    if t < 1 or r < 2:
        raise DomainError("need t >= 1 and r >= 2")
    cap = MAX_SHIFTED_N if options.restrict_to_shifted else MAX_ANTICHAIN_N
    if not 1 <= n <= cap:
        mode = "shifted" if options.restrict_to_shifted else "unrestricted"
        raise CapabilityError(f"{mode} search capped at n <= {cap}")
    start = time.time()
    size = 1 << n
    sup_table = _superset_table(n)
    if options.restrict_to_shifted:
        up_table = [
            sum(1 << h for h in range(size) if leadsto_masks(g, h)) for g in range(size)
        ]
    else:
        up_table = sup_table
    candidates = sorted(
        (m for m in range(1, size) if m.bit_count() >= t),
        key=lambda m: (m.bit_count(), m),
    )
    suffix_or = [0] * (len(candidates) + 1)
    for idx in range(len(candidates) - 1, -1, -1):
        suffix_or[idx] = suffix_or[idx + 1] | up_table[candidates[idx]]

    class_masks = [0] * (n + 1)
    for m in range(size):
        class_masks[m.bit_count()] |= 1 << m
    weights = {
        p: [p**k * (1 - p) ** (n - k) for k in range(n + 1)] for p in options.p_list
    }

    def measure_of(bits: int, p: Fraction) -> Fraction:
        w = weights[p]
        return sum(
            ((bits & class_masks[k]).bit_count() * w[k] for k in range(n + 1)),
            Fraction(0),
        )

    def minimal_members(bits: int) -> list[int]:
        members = [m for m in range(size) if bits >> m & 1]
        out = []
        for m in sorted(members, key=lambda x: (x.bit_count(), x)):
            if not any(g & m == g for g in out):
                out.append(m)
        return out

    best = {p: _Best() for p in options.p_list}
    seen_canons: set[bytes] = set()
    examined = 0

    def consider(bits: int) -> None:
        nonlocal examined
        examined += 1
        canon: Optional[bytes] = None
        if options.use_isomorphism_pruning:
            canon = canonical_form(SetFamily(n, (m for m in range(size) if bits >> m & 1)))
            if canon in seen_canons:
                return
            seen_canons.add(canon)
        members = frozenset(m for m in range(size) if bits >> m & 1)
        for p in options.p_list:
            mu = measure_of(bits, p)
            slot = best[p]
            if slot.measure is None or mu > slot.measure:
                slot.measure = mu
                slot.upset_members = members
                slot.canon = canon
                slot.ties = [members]
            elif mu == slot.measure:
                if options.collect_ties:
                    slot.ties.append(members)
                if canon is None:
                    canon = canonical_form(SetFamily(n, members))
                if slot.canon is None:
                    slot.canon = canonical_form(SetFamily(n, slot.upset_members))
                if canon < slot.canon:
                    slot.upset_members = members
                    slot.canon = canon

    def intersecting_with(gens: list[int], new: int) -> bool:
        if options.restrict_to_shifted:
            return True  # handled on the full upset by the caller
        for combo in itertools.combinations_with_replacement(gens + [new], r - 1):
            inter = new
            for g in combo:
                inter &= g
            if inter.bit_count() < t:
                return False
        return True

    def upset_intersecting(bits: int) -> bool:
        mins = minimal_members(bits)
        for combo in itertools.combinations_with_replacement(mins, r):
            inter = (1 << n) - 1
            for g in combo:
                inter &= g
            if inter.bit_count() < t:
                return False
        return True

    def dfs(start_idx: int, gens: list[int], bits: int) -> None:
        consider(bits)
        for idx in range(start_idx, len(candidates)):
            m = candidates[idx]
            if options.measure_upper_bound_pruning:
                bound_bits = bits | suffix_or[idx]
                if all(
                    best[p].measure is not None
                    and measure_of(bound_bits, p) < best[p].measure
                    for p in options.p_list
                ):
                    break  # the suffix union only shrinks from here on
            if options.restrict_to_shifted:
                if any(leadsto_masks(g, m) or leadsto_masks(m, g) for g in gens):
                    continue
                new_bits = bits | up_table[m]
                if not upset_intersecting(new_bits):
                    continue
            else:
                if any(_comparable(g, m) for g in gens):
                    continue
                if not intersecting_with(gens, m):
                    continue
                new_bits = bits | up_table[m]
            gens.append(m)
            dfs(idx + 1, gens, new_bits)
            gens.pop()

    dfs(0, [], 0)
    elapsed = time.time() - start

    reports = []
    for p in options.p_list:
        slot = best[p]
        assert slot.measure is not None and slot.upset_members is not None
        family = SetFamily(n, slot.upset_members)
        canonical = canonical_family(family) if len(family) else family
        reference = p**t
        reports.append(
            SearchReport(
                n=n,
                t=t,
                r=r,
                p=p,
                max_measure=slot.measure,
                witness=minimal_generators(canonical),
                families_examined=examined,
                isomorphism_classes=len(seen_canons) if options.use_isomorphism_pruning else None,
                wall_time=elapsed,
                status=_status_for(t, r, p),
                reference_measure=reference,
                agrees_with_reference=slot.measure == reference,
                tied_witnesses=[SetFamily(n, ms) for ms in slot.ties] if options.collect_ties else [],
            )
        )
    return reports


# -- shifted family stream -------------------------------------------------------------


def enumerate_shifted_families(n: int, t: int, r: int = 3) -> Iterator[SetFamily]:
    """Every shifted, up-closed, r-wise t-intersecting family over [n].

    These are exactly the upsets of the shifts-to order whose minimal members
    pass the intersecting test; the empty family is included.
    """
    if not 1 <= n <= MAX_SHIFTED_N:
        raise CapabilityError(f"shifted enumeration capped at n <= {MAX_SHIFTED_N}")
    if t < 1 or r < 2:
        raise DomainError("need t >= 1 and r >= 2")
    size = 1 << n
    up_table = [
        sum(1 << h for h in range(size) if leadsto_masks(g, h)) for g in range(size)
    ]
    candidates = sorted(
        (m for m in range(1, size) if m.bit_count() >= t),
        key=lambda m: (m.bit_count(), m),
    )
    full = size - 1

    def minimal_members(bits: int) -> list[int]:
        out: list[int] = []
        for m in sorted(
            (x for x in range(size) if bits >> x & 1), key=lambda x: (x.bit_count(), x)
        ):
            if not any(g & m == g for g in out):
                out.append(m)
        return out

    def intersecting(bits: int) -> bool:
        mins = minimal_members(bits)
        for combo in itertools.combinations_with_replacement(mins, r):
            inter = full
            for g in combo:
                inter &= g
            if inter.bit_count() < t:
                return False
        return True

    def emit(bits: int) -> SetFamily:
        fam = SetFamily(n, (m for m in range(size) if bits >> m & 1))
        fam._shifted = True
        fam._up_closed = True
        return fam

    def dfs(start_idx: int, gens: list[int], bits: int) -> Iterator[SetFamily]:
        yield emit(bits)
        for idx in range(start_idx, len(candidates)):
            m = candidates[idx]
            if any(leadsto_masks(g, m) or leadsto_masks(m, g) for g in gens):
                continue
            new_bits = bits | up_table[m]
            if not intersecting(new_bits):
                continue
            gens.append(m)
            yield from dfs(idx + 1, gens, new_bits)
            gens.pop()

    yield from dfs(0, [], 0)


# -- lemma audits -------------------------------------------------------------------------


@dataclass
class LemmaAudit:
    n: int
    t: int
    shifted: bool
    up_closed: bool
    intersecting: bool
    lambda_offset: int
    active_count: int = 0
    line_hitting_ok: Optional[bool] = None
    prefix_witness_i: Optional[int] = None
    prefix_ok: Optional[bool] = None
    prefix_all_members_i: Optional[int] = None
    frontier_index: Optional[int] = None
    frontier_containment_ok: Optional[bool] = None
    frontier_unique_ok: Optional[bool] = None

    @property
    def preconditions_ok(self) -> bool:
        return self.shifted and self.up_closed and self.intersecting

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "preconditions": {
                "shifted": self.shifted,
                "up_closed": self.up_closed,
                "intersecting": self.intersecting,
                "ok": self.preconditions_ok,
            },
            "lambda": self.lambda_offset,
            "active_count": self.active_count,
            "line_hitting_ok": self.line_hitting_ok,
            "prefix_witness_i": self.prefix_witness_i,
            "prefix_ok": self.prefix_ok,
            "prefix_all_members_i": self.prefix_all_members_i,
            "frontier_index": self.frontier_index,
            "frontier_containment_ok": self.frontier_containment_ok,
            "frontier_unique_ok": self.frontier_unique_ok,
        }


def audit_lemmas(family: SetFamily, t: int) -> LemmaAudit:
    """Audit one family against the structural facts used downstream: the
    common line offset, the prefix-sum witness, and the unique frontier index
    containing the singly- and multiply-hitting members.

    The prefix witness is sought over the members that hit the base line but
    not the higher one (the scope the downstream argument consumes); an
    unrestricted all-members scan can fail on families whose members all
    reach the higher line, and is reported separately for inspection.
    """
    if len(family) == 0:
        raise DomainError("cannot audit an empty family")
    if t < 1:
        raise DomainError("t must be >= 1")
    n = family.n
    ok_int, _ = is_r_wise_t_intersecting(family, 3, t)
    audit = LemmaAudit(
        n=n,
        t=t,
        shifted=is_shifted(family),
        up_closed=is_up_closed(family),
        intersecting=ok_int,
        lambda_offset=min(max_line_offset(Subset(n, m)) for m in family.members),
    )
    audit.line_hitting_ok = audit.lambda_offset >= t

    members = sorted(family.members)

    def prefix_rows(masks: list[int]) -> list[list[int]]:
        rows = []
        for m in masks:
            row = [0] * (n + 1)
            ups = 0
            for j in range(1, n + 1):
                if m >> (j - 1) & 1:
                    ups += 1
                row[j] = ups
            rows.append(row)
        return rows

    def common_witness(masks: list[int]) -> Optional[int]:
        rows = prefix_rows(masks)
        for i in range(1, n + 1):
            if 3 * min(row[i] for row in rows) >= 2 * i + t:
                return i
        return None

    audit.prefix_all_members_i = common_witness(members)

    dot_hits = []
    active = []  # single or double hitters
    for m in members:
        cls = classify(Subset(n, m), t)
        if cls in (WalkClass.DOT, WalkClass.DDOT):
            active.append(m)
        if cls is WalkClass.DOT:
            # the unique hit's x coordinate
            ups = 0
            for k in range(1, n + 1):
                if m >> (k - 1) & 1:
                    ups += 1
                if 3 * ups == 2 * k + t:
                    dot_hits.append(k - ups)
                    break
    audit.active_count = len(active)
    if active:
        audit.prefix_witness_i = common_witness(active)
        audit.prefix_ok = audit.prefix_witness_i is not None
    else:
        audit.prefix_ok = True  # vacuous; no member is confined to the base line
    if dot_hits:
        s = dot_hits[0]
        audit.frontier_index = s if all(x == s for x in dot_hits) else None
        if audit.frontier_index is not None and t + 3 * s <= n:
            prefix_mask = (1 << (t + 3 * s)) - 1
            audit.frontier_containment_ok = all(
                (m & prefix_mask).bit_count() >= t + 2 * s for m in active
            )
            unique = True
            for s2 in range(0, (n - t) // 3 + 1):
                if s2 == s:
                    continue
                mask2 = (1 << (t + 3 * s2)) - 1
                if all((m & mask2).bit_count() >= t + 2 * s2 for m in active):
                    unique = False
                    break
            audit.frontier_unique_ok = unique
    return audit
