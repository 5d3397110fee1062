"""Threshold algebra and the inequality-claim registry."""

from fractions import Fraction

import pytest

from triwise.claims import (
    CLAIM_IDS,
    ThresholdParams,
    beta,
    is_at_most_p0,
    is_exactly_p0,
    p0,
    p0_exact,
    run_all,
    run_check,
    t0,
)
from triwise.families import DomainError, frontier_measure
from triwise.intervals import IntervalValue
from triwise.walks import alpha_from_interval

F = Fraction


# -- p0 --------------------------------------------------------------------------


def test_p0_exact_values():
    assert p0_exact(10) == F(1, 3)
    assert p0_exact(18) == F(1, 4)
    assert p0_exact(1) is None
    assert p0_exact(15) is None


def test_p0_encloses_exact_rationals():
    for t in (10, 18, 28):
        exact = p0_exact(t)
        assert exact is not None
        assert p0(t, 128).contains(exact)


def test_p0_reference_bounds():
    assert p0(43, 128).hi < F(161, 1000)
    assert p0(20, 128).hi < F(24, 100)


def test_p0_is_quadratic_root():
    # the enclosure must pin the positive root of (t+2)p^2 - p - 1
    for t in (2, 7, 15, 100):
        P = p0(t, 128)
        assert (t + 2) * P.lo**2 - P.lo - 1 <= 0 <= (t + 2) * P.hi**2 - P.hi - 1


def test_p0_decreasing_in_t():
    prev = None
    for t in range(1, 60):
        cur = p0(t, 96)
        if prev is not None:
            assert cur.hi < prev.lo or cur.strictly_below(prev)
        prev = cur


def test_t0_examples():
    assert t0(F(1, 3)) == 10
    assert t0(F(1, 2)) == 4
    # inverse relation: t <= t0(p) iff p <= p0(t)
    for t in range(1, 30):
        for p in (F(1, 6), F(1, 4), F(1, 3), F(2, 5), F(1, 2)):
            assert (t <= t0(p)) == is_at_most_p0(p, t)


def test_t0_monotone_decreasing():
    grid = [F(k, 40) for k in range(1, 40)]
    for a, b in zip(grid, grid[1:]):
        assert t0(a) > t0(b)


def test_threshold_params_consistency():
    params = ThresholdParams.compute(10, 128)
    assert params.p0_rational == F(1, 3)
    assert params.t0_of_p0.contains(F(10))
    assert params.beta.hi < 1


def test_exact_threshold_tests():
    assert is_exactly_p0(F(1, 3), 10)
    assert not is_exactly_p0(F(1, 3), 11)
    assert is_at_most_p0(F(1, 4), 10)
    assert not is_at_most_p0(F(1, 2), 10)


# -- beta -------------------------------------------------------------------------


def test_beta_reference_signs():
    assert beta(13, 128).is_negative()
    assert not beta(12, 128).is_negative()
    log129 = IntervalValue.exact(F(129, 100), 128).log()
    assert beta(20, 128).strictly_below(-log129)
    log2 = IntervalValue.exact(2, 128).log()
    assert beta(43, 128).strictly_below(-log2)


def test_beta_decreasing_sample():
    for t in (1, 5, 13, 50, 200):
        assert beta(t + 1, 128).strictly_below(beta(t, 128))


# -- registry ---------------------------------------------------------------------


def test_registry_lists_all_claims():
    expected = {
        "A1", "A1.5", "A2", "A2.5", "A3", "A4", "A4-t6", "A5", "A6",
        "S0", "S1", "MONO-G", "THRESH",
    }
    assert expected == set(CLAIM_IDS)


def test_unknown_claim_rejected():
    with pytest.raises(DomainError):
        run_check("A99")


def test_run_check_a2_small_range():
    rep = run_check("A2", t_range=(9, 60))
    assert rep.verdict == "holds"
    assert rep.counts()["holds"] == 52
    assert rep.max_precision <= 1024


def test_run_check_alias():
    rep = run_check("A4-variant-t6", t_range=(43, 48))
    assert rep.claim_id == "A4-t6"
    assert rep.verdict in ("holds", "fails")  # recorded either way
    assert rep.counts()["inconclusive"] == 0


def test_a4_both_variants_at_43():
    tight = run_check("A4-t6", t_range=(43, 43))
    loose = run_check("A4", t_range=(43, 45))
    assert loose.verdict == "holds"
    assert tight.counts()["inconclusive"] == 0
    if tight.verdict == "holds" and loose.min_margin and tight.min_margin:
        # the t+2 variant carries the visibly larger margin
        assert loose.points[0].margin > tight.points[0].margin


def test_thresh_exact_equality_point():
    rep = run_check("THRESH", t_range=(10, 10))
    assert rep.verdict == "holds"
    # the t=10 instance is decided by exact rational arithmetic
    assert rep.points[0].precision == 0


def test_thresh_exact_vs_quadratic():
    rep = run_check("THRESH", t_range=(1, 25))
    assert rep.verdict == "holds"


def test_s0_and_s1_small():
    rep = run_check("S0", grid=40)
    assert rep.verdict == "holds"
    rep = run_check("S1", t_range=(11, 25), grid=16)
    assert rep.verdict == "holds"


def test_mono_g_small():
    rep = run_check("MONO-G", t_range=(8, 30), grid=16)
    assert rep.verdict == "holds"


def test_a1_grid_small():
    rep = run_check("A1", grid=32)
    assert rep.verdict == "holds"


def test_a5_a6_small():
    assert run_check("A5", t_range=(8, 25), grid=16).verdict == "holds"
    assert run_check("A6", t_range=(15, 25), grid=16).verdict == "holds"


def test_precision_escalation_resolves_tight_margin():
    # at 4 mantissa bits the rounding granularity swamps the margin of the
    # tightest sweep instance; the escalation ladder must climb until the
    # enclosures separate strictly
    rep = run_check("A6", t_range=(15, 15), precision=4, precision_cap=1024)
    point = rep.points[0]
    assert point.verdict == "holds"
    assert 4 < point.precision <= 1024


def test_escalation_stops_at_cap_with_inconclusive():
    rep = run_check("A3", t_range=(15, 15), precision=4, precision_cap=4)
    assert rep.points[0].verdict == "inconclusive"
    assert rep.verdict == "inconclusive"


def test_higher_precision_never_flips():
    for cid, rng in (("A2", (9, 12)), ("A3", (15, 18))):
        low = run_check(cid, t_range=rng, precision=64, precision_cap=64)
        high = run_check(cid, t_range=rng, precision=512, precision_cap=512)
        for a, b in zip(low.points, high.points):
            if a.verdict != "inconclusive":
                assert a.verdict == b.verdict


def test_run_all_subset_parallel():
    reports = run_all(["A2", "A3"], t_range=(15, 20), workers=2)
    assert [r.claim_id for r in reports] == ["A2", "A3"]
    assert all(r.verdict == "holds" for r in reports)


def test_report_serialization():
    rep = run_check("A2", t_range=(9, 10))
    d = rep.to_dict()
    assert d["verdict"] == "holds"
    assert d["counts"]["holds"] == 2
    assert len(d["points"]) == 2
    assert d["points"][0]["margin"] is not None


# -- closed-form sanity against the frontier route ----------------------------------


def test_frontier_gap_factorization():
    # p^t q (1 + p - (t+2) p^2) equals the measure difference of the frontiers
    for t in (1, 4, 9):
        n = t + 3
        for p in (F(1, 5), F(1, 3), F(1, 2)):
            gap = frontier_measure(0, t, p, n) - frontier_measure(1, t, p, n)
            assert gap == p**t * (1 - p) * (1 + p - (t + 2) * p * p)


def test_alpha_at_interval_p0():
    # hitting rate at the t=10 threshold encloses the value at p=1/3
    from triwise.walks import alpha

    direct = alpha(F(1, 3), 128)
    through = alpha_from_interval(p0(10, 128))
    assert through.lo <= direct.lo and direct.hi <= through.hi
