"""Tube reports, Diophantine approximation, degree and genus bounds."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfkit.errors import (
    InvalidParams,
    NonPositiveInput,
    NonPositiveVolume,
    NotCoprime,
    ZeroDenominator,
)
from hopfkit.estimates import (
    TubeParams,
    best_rational_approx,
    dehn_core_linking,
    gromov_hopf_bound,
    milnor_thurston_degree_bound,
    spanning_genus_lower_bound,
    tube_report,
)


def brute_best_approx(x, q_max):
    best = None
    for q in range(1, q_max + 1):
        p = round(x * q)
        err = abs(x - p / q)
        if best is None or err < best[2] - 1e-18:
            best = (p, q, err)
    return best


def test_best_rational_approx_simple_values():
    p, q, err = best_rational_approx(0.5, 10)
    assert (p, q) == (1, 2) and err == 0
    p, q, err = best_rational_approx(math.pi, 120)
    assert (p, q) == (355, 113)
    assert err < 3e-7


@settings(max_examples=200, deadline=None)
@given(
    st.floats(min_value=-3.0, max_value=3.0, allow_nan=False, allow_infinity=False),
    st.integers(min_value=1, max_value=60),
)
def test_best_rational_approx_is_optimal(x, q_max):
    p, q, err = best_rational_approx(x, q_max)
    assert 1 <= q <= q_max
    assert abs(err - abs(x - p / q)) <= 1e-15
    bp, bq, berr = brute_best_approx(x, q_max)
    assert err <= berr + 1e-15


def test_best_rational_approx_rejects_bad_qmax():
    with pytest.raises(InvalidParams):
        best_rational_approx(1.0, 0)


def test_dehn_core_linking():
    assert dehn_core_linking(3, 2) == Fraction(3, 2)
    assert dehn_core_linking(-5, 3) == Fraction(-5, 3)
    with pytest.raises(ZeroDenominator):
        dehn_core_linking(1, 0)
    with pytest.raises(NotCoprime):
        dehn_core_linking(4, 2)


def test_degree_bound_values():
    assert milnor_thurston_degree_bound(10, 2.5) == 4.0
    assert milnor_thurston_degree_bound(10, 2.5, C=2.0) == 8.0
    with pytest.raises(NonPositiveVolume):
        milnor_thurston_degree_bound(10, 0.0)
    # zero simplices is a degenerate but well defined input
    assert milnor_thurston_degree_bound(0, 1.0) == 0.0


def test_gromov_hopf_bound_monotone_in_lipschitz():
    b1 = gromov_hopf_bound(1.0, 2.0, 3.0, 1.0)
    b2 = gromov_hopf_bound(1.0, 2.0, 3.0, 2.0)
    assert b2 == 16 * b1
    with pytest.raises(NonPositiveInput):
        gromov_hopf_bound(0.0, 1.0, 1.0, 1.0)


def test_spanning_genus_lower_bound_scaling():
    assert spanning_genus_lower_bound(1e-4) == pytest.approx(100.0)
    assert spanning_genus_lower_bound(1e-4, c=2.0) == pytest.approx(200.0)


def test_tube_params_validation():
    TubeParams(epsilon=1e-4, theta=0.3).validate()
    with pytest.raises(InvalidParams):
        TubeParams(epsilon=0.0, theta=0.3).validate()
    with pytest.raises(InvalidParams):
        TubeParams(epsilon=1e-4, theta=0.3, q=0).validate()
    with pytest.raises(InvalidParams):
        TubeParams(epsilon=1e-4, theta=0.3, c=0.0).validate()


def test_tube_report_reference_scalings():
    rep = tube_report(TubeParams(epsilon=1e-4, theta=0.125))
    assert rep.R_lower == pytest.approx(100.0, rel=1e-12)
    assert rep.R_upper == pytest.approx(1e-4 ** (-7.0 / 12.0), rel=1e-12)
    assert rep.volume_threshold == pytest.approx(1e-4 ** (-1.0 / 6.0), rel=1e-12)
    assert rep.order_threshold == pytest.approx(1e-4 ** (-1.0 / 6.0), rel=1e-12)
    assert rep.hopf_threshold == pytest.approx(10.0, rel=1e-12)
    assert rep.R_lower <= rep.R_upper


def test_tube_report_constants_scale_linearly():
    a = tube_report(TubeParams(epsilon=1e-4, theta=0.125))
    b = tube_report(TubeParams(epsilon=1e-4, theta=0.125, c=2.0, C=3.0))
    assert b.R_lower == pytest.approx(2 * a.R_lower)
    assert b.R_upper == pytest.approx(3 * a.R_upper)
    assert b.hopf_threshold == pytest.approx(2 * a.hopf_threshold)


def test_tube_report_branch_consistency():
    # whichever branch is reported, its entry condition held
    import random

    rng = random.Random(20240817)
    for _ in range(300):
        eps = 10 ** rng.uniform(-8, -1)
        theta = rng.uniform(1e-3, math.pi - 1e-3)
        q = rng.choice([None, rng.randint(1, 50)])
        rep = tube_report(TubeParams(epsilon=eps, theta=theta, q=q))
        if rep.branch == "torsion_order":
            assert q is None or q >= rep.order_threshold
        elif rep.branch == "hopf_size":
            assert rep.hopf_size_lower >= rep.hopf_threshold
        else:
            assert rep.branch == "volume"
            assert q is not None and q < rep.order_threshold
            assert rep.hopf_size_lower < rep.hopf_threshold


def test_tube_report_json_dict_is_plain_data():
    import json

    rep = tube_report(TubeParams(epsilon=1e-4, theta=0.125, q=7))
    d = rep.to_json_dict()
    json.dumps(d)
    assert d["branch"] in ("torsion_order", "hopf_size", "volume")
    p_best, q_best, err = d["best_approx"]
    assert q_best >= 1 and err >= 0.0 and isinstance(p_best, int)
