"""Ground-set subsets, set families, and the exact p-biased measure.

Subsets of [n] are bitmasks (bit i-1 set iff element i is in the set), which
doubles as the up/right lattice-walk encoding used by the walk module.  All
measure arithmetic is done with exact rationals; the measure of a family is
evaluated through its size profile (member counts by cardinality), since the
product measure depends on nothing else.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

MAX_GROUND_SET = 62
CANONICAL_MAX_N = 10


class DomainError(ValueError):
    """An argument is outside the operation's stated domain."""


class CapabilityError(ValueError):
    """The instance is too large for the enumeration-backed operation."""


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_GROUND_SET:
        raise DomainError(f"ground-set size n={n} outside [1, {MAX_GROUND_SET}]")


@dataclass(frozen=True, order=True)
class Subset:
    """A subset of [n] as a fixed-width bitmask."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        _check_n(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise DomainError(f"bitmask {self.bits:#x} has bits outside [{self.n}]")

    @staticmethod
    def from_elements(n: int, elements: Iterable[int]) -> "Subset":
        bits = 0
        for e in elements:
            if not 1 <= e <= n:
                raise DomainError(f"element {e} outside [1, {n}]")
            bits |= 1 << (e - 1)
        return Subset(n, bits)

    def elements(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.bits >> i & 1)

    def size(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.n and bool(self.bits >> (element - 1) & 1)

    def __and__(self, other: "Subset") -> "Subset":
        self._same_ground(other)
        return Subset(self.n, self.bits & other.bits)

    def __or__(self, other: "Subset") -> "Subset":
        self._same_ground(other)
        return Subset(self.n, self.bits | other.bits)

    def _same_ground(self, other: "Subset") -> None:
        if self.n != other.n:
            raise DomainError(f"mismatched ground sets n={self.n} and n={other.n}")

    def __repr__(self) -> str:
        return f"Subset({self.n}, {{{','.join(map(str, self.elements()))}}})"


class SetFamily:
    """A deduplicated collection of subsets of a common ground set [n].

    Immutable after construction; the shiftedness / up-closedness flags are
    computed lazily and cached.
    """

    __slots__ = ("n", "members", "_up_closed", "_shifted")

    def __init__(self, n: int, members: Iterable[int]):
        _check_n(n)
        ms = frozenset(members)
        for m in ms:
            if m < 0 or m >> n:
                raise DomainError(f"member bitmask {m:#x} has bits outside [{n}]")
        self.n = n
        self.members = ms
        self._up_closed: Optional[bool] = None
        self._shifted: Optional[bool] = None

    @staticmethod
    def from_subsets(subsets: Sequence[Subset]) -> "SetFamily":
        if not subsets:
            raise DomainError("cannot infer ground set from an empty sequence")
        n = subsets[0].n
        for s in subsets:
            if s.n != n:
                raise DomainError("subsets with mixed ground sets")
        return SetFamily(n, (s.bits for s in subsets))

    @staticmethod
    def from_element_lists(n: int, lists: Iterable[Iterable[int]]) -> "SetFamily":
        return SetFamily(n, (Subset.from_elements(n, els).bits for els in lists))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item) -> bool:
        bits = item.bits if isinstance(item, Subset) else item
        return bits in self.members

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetFamily)
            and self.n == other.n
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return hash((self.n, self.members))

    def sorted_masks(self) -> list[int]:
        """Members in the canonical report order (cardinality, then value)."""
        return sorted(self.members, key=lambda m: (m.bit_count(), m))

    def subsets(self) -> list[Subset]:
        return [Subset(self.n, m) for m in self.sorted_masks()]

    def size_profile(self) -> "SizeProfile":
        counts = [0] * (self.n + 1)
        for m in self.members:
            counts[m.bit_count()] += 1
        return SizeProfile(self.n, tuple(counts))

    def __repr__(self) -> str:
        shown = ", ".join("{" + ",".join(map(str, Subset(self.n, m).elements())) + "}"
                          for m in self.sorted_masks()[:6])
        more = "" if len(self) <= 6 else f", ... ({len(self)} members)"
        return f"SetFamily(n={self.n}, [{shown}{more}])"


@dataclass(frozen=True)
class SizeProfile:
    """Member counts by cardinality; the exact-measure carrier."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.n + 1:
            raise DomainError("profile length must be n+1")
        for k, c in enumerate(self.counts):
            if not 0 <= c <= comb(self.n, k):
                raise DomainError(f"count c_{k}={c} outside [0, C({self.n},{k})]")

    def total(self) -> int:
        return sum(self.counts)

    def measure(self, p: Fraction) -> Fraction:
        _check_p(p)
        q = 1 - p
        return sum(
            (c * p**k * q ** (self.n - k) for k, c in enumerate(self.counts) if c),
            Fraction(0),
        )


def _check_p(p: Fraction) -> None:
    if not isinstance(p, Fraction):
        raise DomainError("p must be an exact Fraction")
    if not 0 < p < 1:
        raise DomainError(f"p={p} outside (0, 1)")


# -- measure -----------------------------------------------------------------


def p_measure(family: SetFamily, p: Fraction) -> Fraction:
    """Exact product measure: sum of p^|G| (1-p)^(n-|G|) over members."""
    return family.size_profile().measure(p)


def symmetric_difference_measure(f1: SetFamily, f2: SetFamily, p: Fraction) -> Fraction:
    if f1.n != f2.n:
        raise DomainError("families over different ground sets")
    return p_measure(SetFamily(f1.n, f1.members ^ f2.members), p)


# -- intersecting test ---------------------------------------------------------


def is_r_wise_t_intersecting(
    family: SetFamily,
    r: int,
    t: int,
    use_generators: bool = True,
) -> tuple[bool, Optional[tuple[Subset, ...]]]:
    """Does every r-tuple of members (repetition allowed) share >= t elements?

    Checking r-tuples of minimal generators is equivalent, because supersets
    only enlarge intersections; ``use_generators=False`` forces the direct
    all-members check (the oracle route).
    """
    if r < 2 or t < 1:
        raise DomainError("need r >= 2 and t >= 1")
    pool = _minimal_masks(family.members) if use_generators else sorted(family.members)
    full = (1 << family.n) - 1
    for combo in itertools.combinations_with_replacement(pool, r):
        inter = full
        for m in combo:
            inter &= m
        if inter.bit_count() < t:
            return False, tuple(Subset(family.n, m) for m in combo)
    return True, None


# -- up-closure machinery ------------------------------------------------------


def _minimal_masks(members: frozenset[int] | set[int]) -> list[int]:
    by_size = sorted(members, key=lambda m: m.bit_count())
    minimal: list[int] = []
    for m in by_size:
        if not any(g & m == g for g in minimal):
            minimal.append(m)
    return minimal


def minimal_generators(family: SetFamily) -> SetFamily:
    """The antichain of inclusion-minimal members."""
    return SetFamily(family.n, _minimal_masks(family.members))


def up_closure(family: SetFamily) -> SetFamily:
    """Smallest superfamily closed under taking supersets."""
    n = family.n
    seen = set(family.members)
    queue = list(family.members)
    while queue:
        m = queue.pop()
        free = ~m & ((1 << n) - 1)
        while free:
            bit = free & -free
            free ^= bit
            m2 = m | bit
            if m2 not in seen:
                seen.add(m2)
                queue.append(m2)
    out = SetFamily(n, seen)
    out._up_closed = True
    return out


def is_up_closed(family: SetFamily) -> bool:
    if family._up_closed is None:
        n = family.n
        ok = True
        for m in family.members:
            free = ~m & ((1 << n) - 1)
            while free:
                bit = free & -free
                free ^= bit
                if (m | bit) not in family.members:
                    ok = False
                    break
            if not ok:
                break
        family._up_closed = ok
    return family._up_closed


def upset_masks(n: int, generator_masks: Iterable[int]) -> set[int]:
    """All supersets (within [n]) of any of the given masks."""
    fam = SetFamily(n, generator_masks)
    return set(up_closure(fam).members)


# -- frontier families ---------------------------------------------------------


def frontier_family(s: int, t: int, n: int) -> SetFamily:
    """All subsets meeting [t+3s] in at least t+2s elements (up-closed)."""
    if s < 0 or t < 1:
        raise DomainError("need s >= 0 and t >= 1")
    _check_n(n)
    prefix = t + 3 * s
    if prefix > n:
        raise DomainError(f"t+3s={prefix} exceeds n={n}")
    tail_count = 1 << (n - prefix)
    members = []
    for k in range(t + 2 * s, prefix + 1):
        for core in itertools.combinations(range(prefix), k):
            core_mask = 0
            for i in core:
                core_mask |= 1 << i
            for tail in range(tail_count):
                members.append(core_mask | (tail << prefix))
    fam = SetFamily(n, members)
    fam._up_closed = True
    return fam


def frontier_measure(s: int, t: int, p: Fraction, n: int) -> Fraction:
    """Closed form for the frontier family's measure (independent of n)."""
    if s < 0 or t < 1:
        raise DomainError("need s >= 0 and t >= 1")
    _check_n(n)
    if t + 3 * s > n:
        raise DomainError(f"t+3s={t + 3 * s} exceeds n={n}")
    _check_p(p)
    q = 1 - p
    prefix = t + 3 * s
    return sum(
        (comb(prefix, i) * p ** (prefix - i) * q**i for i in range(s + 1)),
        Fraction(0),
    )


def interval3(a: int, n: int) -> Subset:
    """The 3-periodic tail set: union of {a+3i, a+3i+1} intersected with [n]."""
    if not 1 <= a <= n:
        raise DomainError(f"need 1 <= a <= n, got a={a}, n={n}")
    bits = 0
    x = a
    while x <= n:
        bits |= 1 << (x - 1)
        if x + 1 <= n:
            bits |= 1 << x
        x += 3
    return Subset(n, bits)


def interval3_mask(a: int, n: int) -> int:
    return interval3(a, n).bits if a <= n else 0


# -- isomorphism ----------------------------------------------------------------


def _relabel_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    while mask:
        bit = mask & -mask
        mask ^= bit
        out |= 1 << perm[bit.bit_length() - 1]
    return out


def relabel(family: SetFamily, perm: Sequence[int]) -> SetFamily:
    """Apply a 0-based permutation of ground-set positions to every member."""
    return SetFamily(family.n, (_relabel_mask(m, perm) for m in family.members))


def _canonical_encoding(family: SetFamily) -> tuple[bytes, tuple[int, ...]]:
    if family.n > CANONICAL_MAX_N:
        raise CapabilityError(
            f"canonical form scans all n! relabelings; n={family.n} exceeds {CANONICAL_MAX_N}"
        )
    best: Optional[bytes] = None
    best_perm: tuple[int, ...] = tuple(range(family.n))
    width = (family.n + 7) // 8
    for perm in itertools.permutations(range(family.n)):
        masks = sorted(
            (_relabel_mask(m, perm) for m in family.members),
            key=lambda m: (m.bit_count(), m),
        )
        enc = b"".join(m.to_bytes(width, "big") for m in masks)
        if best is None or enc < best:
            best = enc
            best_perm = perm
    assert best is not None or len(family) == 0
    return (best or b""), best_perm


def canonical_form(family: SetFamily) -> bytes:
    """Minimal member encoding over all relabelings of the ground set."""
    return _canonical_encoding(family)[0]


def canonical_family(family: SetFamily) -> SetFamily:
    """The relabeled copy realizing the canonical form (deterministic witness)."""
    _, perm = _canonical_encoding(family)
    return relabel(family, perm)


def are_isomorphic(f1: SetFamily, f2: SetFamily) -> bool:
    if f1.n != f2.n:
        return False
    if len(f1) != len(f2):
        return False
    if f1.size_profile() != f2.size_profile():
        return False
    return canonical_form(f1) == canonical_form(f2)


# -- family file format ----------------------------------------------------------


def family_to_text(family: SetFamily) -> str:
    lines = [f"n={family.n}"]
    for m in family.sorted_masks():
        if m == 0:
            lines.append("-")
        else:
            lines.append(",".join(str(e) for e in Subset(family.n, m).elements()))
    return "\n".join(lines) + "\n"


def family_from_text(text: str) -> SetFamily:
    n: Optional[int] = None
    members: list[int] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            if not line.startswith("n="):
                raise DomainError("family file must start with an 'n=<int>' line")
            n = int(line[2:])
            _check_n(n)
            continue
        if line == "-":
            members.append(0)
            continue
        els = [int(tok) for tok in line.split(",")]
        members.append(Subset.from_elements(n, els).bits)
    if n is None:
        raise DomainError("family file has no 'n=<int>' line")
    return SetFamily(n, members)


def read_family(path) -> SetFamily:
    with open(path, "r", encoding="utf-8") as fh:
        return family_from_text(fh.read())


def write_family(family: SetFamily, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(family_to_text(family))
