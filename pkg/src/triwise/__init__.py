"""Exact and rigorously verified computations for 3-wise t-intersecting
set families under the p-biased product measure."""

from .claims import (
    CLAIM_IDS,
    ClaimReport,
    ThresholdParams,
    beta,
    p0,
    p0_exact,
    run_all,
    run_check,
    t0,
)
from .families import (
    SetFamily,
    SizeProfile,
    Subset,
    are_isomorphic,
    canonical_form,
    frontier_family,
    frontier_measure,
    interval3,
    is_r_wise_t_intersecting,
    is_up_closed,
    minimal_generators,
    p_measure,
    read_family,
    symmetric_difference_measure,
    up_closure,
    write_family,
)
from .intervals import IntervalValue
from .search import (
    SearchOptions,
    SearchReport,
    audit_lemmas,
    count_antichains,
    enumerate_antichains,
    enumerate_shifted_families,
    search_max_measure,
)
from .shifting import (
    ShiftStep,
    disjointness_check,
    is_shifted,
    leadsto,
    shift_end,
    shift_once,
    shift_saturate,
)
from .stability import StabilityConstants, compute_constants, stability_audit
from .walks import (
    HitRecord,
    WalkClass,
    alpha,
    classify,
    count_walks_ballot,
    f_closed,
    hits_line,
    reflect_between_first_two_hits,
    truncated_hitting_measure,
    witness_walks,
)

__version__ = "0.1.0"
