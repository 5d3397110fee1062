"""Compression (shifting) of set families and the shifts-to order.

The step (i, j) with i < j replaces j by i in a member whenever the result is
absent from the family, so measure profiles are preserved exactly.  Repeated
application terminates because the element-sum potential strictly decreases
on every effective step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .families import DomainError, SetFamily, Subset, is_up_closed


@dataclass(frozen=True)
class ShiftStep:
    """A compression step with 1 <= i < j <= n."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if not 1 <= self.i < self.j:
            raise DomainError(f"need 1 <= i < j, got ({self.i}, {self.j})")


class PreconditionError(ValueError):
    """A stated precondition of the operation does not hold."""


def _shift_masks(members: frozenset[int] | set[int], i: int, j: int) -> set[int]:
    bi = 1 << (i - 1)
    bj = 1 << (j - 1)
    out = set()
    for m in members:
        if m & bj and not m & bi:
            moved = (m ^ bj) | bi
            out.add(m if moved in members else moved)
        else:
            out.add(m)
    return out


def shift_once(family: SetFamily, step: ShiftStep) -> SetFamily:
    """Apply one compression step to every member simultaneously."""
    if step.j > family.n:
        raise DomainError(f"step touches element {step.j} beyond n={family.n}")
    return SetFamily(family.n, _shift_masks(family.members, step.i, step.j))


def potential(family: SetFamily) -> int:
    """Sum of all elements over all members; strictly drops per effective step."""
    total = 0
    for m in family.members:
        while m:
            bit = m & -m
            m ^= bit
            total += bit.bit_length()
    return total


def shiftedness_witness(family: SetFamily) -> Optional[tuple[Subset, int, int]]:
    """First (member, i, j) whose compression leaves the family, else None."""
    members = family.members
    for m in sorted(members, key=lambda x: (x.bit_count(), x)):
        for j in range(2, family.n + 1):
            bj = 1 << (j - 1)
            if not m & bj:
                continue
            for i in range(1, j):
                bi = 1 << (i - 1)
                if not m & bi and ((m ^ bj) | bi) not in members:
                    return Subset(family.n, m), i, j
    return None


def is_shifted(family: SetFamily) -> bool:
    if family._shifted is None:
        family._shifted = shiftedness_witness(family) is None
    return family._shifted


def shift_saturate(family: SetFamily) -> SetFamily:
    """Apply steps in lexicographic (i, j) order, restarting from (1, 2)
    after every effective application, until a full sweep changes nothing.

    Termination: the element-sum potential strictly decreases on every
    effective step.  Other visit orders can end in a different shifted
    family; this fixed order makes outputs reproducible.
    """
    members = set(family.members)
    n = family.n
    restart = True
    while restart:
        restart = False
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                new = _shift_masks(members, i, j)
                if new != members:
                    members = new
                    restart = True
                    break
            if restart:
                break
    out = SetFamily(n, members)
    out._shifted = True
    return out


# -- the shifts-to order -------------------------------------------------------


def leadsto_masks(g: int, h: int) -> bool:
    """g leads to h: |g| <= |h| and each element of g dominates h's element."""
    if g.bit_count() > h.bit_count():
        return False
    while g:
        gbit = g & -g
        hbit = h & -h
        if gbit < hbit:
            return False
        g ^= gbit
        h ^= hbit
    return True


def leadsto(g: Subset, h: Subset) -> bool:
    if g.n != h.n:
        raise DomainError("subsets over different ground sets")
    return leadsto_masks(g.bits, h.bits)


def shift_end(family: SetFamily) -> Optional[Subset]:
    """The member every other member leads to, or None when there is none."""
    if len(family) == 0:
        raise DomainError("shift end of an empty family")
    masks = list(family.members)
    top = max(m.bit_count() for m in masks)
    for h in sorted((m for m in masks if m.bit_count() == top)):
        if all(leadsto_masks(g, h) for g in masks):
            return Subset(family.n, h)
    return None


def disjointness_check(g_family: SetFamily, h_family: SetFamily) -> bool:
    """Check the disjointness consequence for a shifted up-closed family
    against a family whose shift end lies outside it.

    Preconditions are validated and violations raise; the returned flag
    states whether the two families are actually disjoint (which the theory
    predicts is always the case).
    """
    if g_family.n != h_family.n:
        raise DomainError("families over different ground sets")
    if not is_shifted(g_family):
        raise PreconditionError("first family is not shifted")
    if not is_up_closed(g_family):
        raise PreconditionError("first family is not up-closed")
    end = shift_end(h_family)
    if end is None:
        raise PreconditionError("second family has no shift end")
    if end.bits in g_family.members:
        raise PreconditionError("shift end lies inside the first family")
    return not (g_family.members & h_family.members)
