"""Stability constants and audits."""

import random
from fractions import Fraction

import pytest

from triwise.claims import p0
from triwise.families import (
    DomainError,
    SetFamily,
    frontier_family,
    p_measure,
    up_closure,
)
from triwise.shifting import is_shifted, shift_saturate
from triwise.families import is_up_closed
from triwise.stability import (
    compute_constants,
    deficit_chain,
    frontier_gap_exact,
    locate_shift_index,
    prefix_subfamily,
    stability_audit,
)

F = Fraction


def random_tail(rng, k: int) -> SetFamily:
    """A random shifted up-closed family over [k], possibly everything."""
    members = [rng.randrange(1 << k) for _ in range(rng.randint(1, 5))]
    fam = shift_saturate(up_closure(SetFamily(k, members)))
    assert is_shifted(fam) and is_up_closed(fam)
    return fam


# -- constants -------------------------------------------------------------------


def test_constants_positive_at_threshold_bracket():
    for t in (15, 16, 20):
        p = p0(t, 128).lo
        sc = compute_constants(t, p)
        for iv in (sc.eps1, sc.eps2, sc.eps0, sc.eps0_prime, sc.delta1, sc.delta2):
            assert iv.is_positive()
        assert sc.delta1.hi < 1 and sc.delta2.hi < 1
        assert sc.c.lo > 2


def test_constants_small_p():
    sc = compute_constants(15, F(1, 10))
    assert sc.eps3_exact > 0
    assert not sc.at_threshold
    # eps0_prime = min(eps0, eps3)
    assert sc.eps0_prime.hi <= sc.eps0.hi
    assert sc.eps0_prime.hi <= sc.eps3.hi


def test_constants_exact_threshold_case():
    # t=18 has the exact rational threshold p=1/4
    sc = compute_constants(18, F(1, 4))
    assert sc.at_threshold
    assert sc.eps3_exact == 0
    # at the threshold eps0' falls back to eps0
    assert sc.eps0_prime.lo == sc.eps0.lo and sc.eps0_prime.hi == sc.eps0.hi


def test_constants_domain_errors():
    with pytest.raises(DomainError):
        compute_constants(10, F(1, 3))
    with pytest.raises(DomainError):
        compute_constants(15, F(1, 2))  # above the threshold
    with pytest.raises(DomainError):
        compute_constants(15, 0.1)  # type: ignore[arg-type]


def test_frontier_gap_two_routes():
    # closed form vs family enumeration, up to n = t + 6
    for t in (15, 16, 20):
        for p in (F(1, 10), F(1, 5), F(1, 4)):
            gap = frontier_gap_exact(t, p)
            for n in (t + 4, t + 6):
                enum_gap = p_measure(frontier_family(0, t, n), p) - p_measure(
                    frontier_family(1, t, n), p
                )
                assert gap == enum_gap


def test_gap_zero_iff_threshold():
    assert frontier_gap_exact(18, F(1, 4)) == 0
    assert frontier_gap_exact(18, F(1, 5)) > 0


def test_gap_changes_sign_across_irrational_threshold():
    # at t=15 the threshold is irrational; the enclosure's dyadic endpoints
    # bracket it, and the exact gap flips sign across them
    enclosure = p0(15, 128)
    assert frontier_gap_exact(15, enclosure.lo) > 0
    assert frontier_gap_exact(15, enclosure.hi) < 0


# -- audits ----------------------------------------------------------------------


def test_audit_equality_case_frontier_s0():
    t, n, p = 15, 18, F(1, 10)
    audit = stability_audit(frontier_family(0, t, n), t, p)
    assert audit.verdict == "equality-case"
    assert audit.epsilon == 0
    assert audit.d0 == 0


def test_audit_frontier_s1_at_exact_threshold():
    # at the exact threshold the s=1 frontier is also extremal
    t, n, p = 18, 21, F(1, 4)
    audit = stability_audit(frontier_family(1, t, n), t, p)
    assert audit.verdict == "equality-case"
    assert audit.epsilon == 0
    assert audit.d1 == 0


def test_audit_frontier_s1_below_threshold_is_applicable():
    # slightly below the threshold the s=1 frontier has deficit eps3 < eps0
    t, n = 18, 21
    p = F(249, 1000)
    sc = compute_constants(t, p)
    assert frontier_gap_exact(t, p) < sc.eps0.lo
    audit = stability_audit(frontier_family(1, t, n), t, p, constants=sc)
    assert audit.verdict == "bound-satisfied"
    assert audit.applicable
    assert audit.d1 == 0 and audit.epsilon == frontier_gap_exact(t, p)


def test_audit_not_applicable_reports_numbers():
    t, n, p = 15, 19, F(1, 10)
    sc = compute_constants(t, p)
    tail = up_closure(SetFamily.from_element_lists(n - t, [[1, 2]]))
    tail = shift_saturate(tail)
    fam = prefix_subfamily(t, n, tail)
    audit = stability_audit(fam, t, p, constants=sc)
    assert audit.verdict == "not-applicable"
    assert audit.applicable is False
    assert audit.epsilon is not None and audit.epsilon > 0
    assert audit.d0 is not None


def test_audit_precondition_failures_reported_not_raised():
    fam = SetFamily.from_element_lists(18, [[2] + list(range(4, 18))])
    audit = stability_audit(fam, 15, F(1, 10))
    assert audit.verdict == "precondition-failed"
    assert not audit.shifted or not audit.up_closed


def test_shift_index_location():
    t, n = 15, 20
    fam = frontier_family(0, t, n)
    idx = locate_shift_index(fam, t)
    assert idx == n - t - 1  # every witness walk W_i with t+i+1 <= n is present
    # a family without the first witness walk reports none
    assert locate_shift_index(frontier_family(1, t, n), t) is None


# -- the deficit chain --------------------------------------------------------------


def test_prefix_subfamily_structure():
    rng = random.Random(7)
    t = 15
    for _ in range(30):
        k = rng.randint(2, 5)
        n = t + k
        tail = random_tail(rng, k)
        fam = prefix_subfamily(t, n, tail)
        assert is_shifted(fam) and is_up_closed(fam)
        assert fam.members <= frontier_family(0, t, n).members
        assert p_measure(fam, F(1, 5)) == F(1, 5) ** t * p_measure(tail, F(1, 5))


def test_deficit_chain_on_random_subfamilies():
    rng = random.Random(11)
    t = 15
    p = F(1, 5)
    sc = compute_constants(t, p)
    checked = 0
    for _ in range(60):
        k = rng.randint(2, 6)
        n = t + k
        tail = random_tail(rng, k)
        fam = prefix_subfamily(t, n, tail)
        if len(fam) == 1 << k:  # the full frontier has no deficit
            continue
        chain = deficit_chain(fam, t, p, sc)
        assert chain.a == 0
        assert chain.b > 0
        assert chain.epsilon == chain.b
        assert chain.holds
        checked += 1
    assert checked > 20


def test_chain_matches_symmetric_difference():
    t, n, p = 15, 19, F(1, 4)
    sc = compute_constants(t, p)
    tail = up_closure(SetFamily.from_element_lists(n - t, [[1], [2, 3]]))
    tail = shift_saturate(tail)
    fam = prefix_subfamily(t, n, tail)
    chain = deficit_chain(fam, t, p, sc)
    from triwise.families import symmetric_difference_measure

    assert chain.a + chain.b == symmetric_difference_measure(fam, frontier_family(0, t, n), p)
