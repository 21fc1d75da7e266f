"""Fillings, minimal L1 fillings, transverse curves, size certificates."""

import itertools
from fractions import Fraction

import pytest

from hopfkit.complexes import Chain
from hopfkit.errors import (
    InvalidDualCurve,
    NotACycle,
    NotNullHomologous,
)
from hopfkit.filling import (
    DualCurve,
    deform_to_skeleton,
    dual_curve_from_json_dict,
    dual_curve_to_json_dict,
    fill_cycle_any,
    fill_cycle_min_l1,
    filling_constant_bound,
    hopf_size_upper_bound,
    validate_dual_curve,
)
from hopfkit.fixtures import (
    boundary_4_simplex,
    grid_torus,
    join_hopf_cycles,
    join_sphere,
    single_tetrahedron,
    triangle_sphere,
)


def equator_cycle(c):
    eidx = c.edge_index
    return Chain(1, {eidx[(0, 1)]: 1, eidx[(1, 2)]: 1, eidx[(0, 2)]: -1})


def test_fill_cycle_any_solves_exactly():
    for c in (triangle_sphere(), boundary_4_simplex(), join_sphere()):
        y = equator_cycle(c)
        z = fill_cycle_any(y, c)
        assert z.dim == 2
        assert c.boundary_of(z).coeffs == y.coeffs


def test_fill_rejects_non_cycles():
    c = boundary_4_simplex()
    with pytest.raises(NotACycle):
        fill_cycle_any(Chain(1, {0: 1}), c)
    with pytest.raises(NotACycle):
        fill_cycle_any(Chain(2, {0: 1}), c)


def test_fill_rejects_torus_generator():
    c = grid_torus()
    eidx = c.edge_index
    y = Chain(1, {eidx[(0, 3)]: 1, eidx[(3, 6)]: 1, eidx[(0, 6)]: -1})
    with pytest.raises(NotNullHomologous):
        fill_cycle_any(y, c)
    with pytest.raises(NotNullHomologous):
        fill_cycle_min_l1(y, c)


def brute_min_l1(y, c):
    """Exhaustive minimal L1 filling norm on a complex with a small
    integral solution lattice.  Particular solution plus ker B2, scanned
    over a coefficient box wide enough to contain the optimum."""
    from hopfkit.homology import boundary_reduction

    red = boundary_reduction(c, 2)
    x = red.solve(y.coeffs)
    assert x is not None
    kernel = red.kernel_basis()
    best = None
    for combo in itertools.product(range(-3, 4), repeat=len(kernel)):
        z = dict(x)
        for t, k in zip(combo, kernel):
            for j, v in k.items():
                z[j] = z.get(j, Fraction(0)) + t * v
        norm = sum(abs(v) for v in z.values())
        if best is None or norm < best:
            best = norm
    return best


def test_min_l1_matches_brute_force_on_spheres():
    # brute force scans a box around one solution; only feasible while
    # ker B2 stays low dimensional
    for c in (triangle_sphere(), boundary_4_simplex()):
        y = equator_cycle(c)
        z, norm = fill_cycle_min_l1(y, c)
        assert c.boundary_of(z).coeffs == y.coeffs
        assert z.norm_l1 == norm
        assert norm == brute_min_l1(y, c)


def test_min_l1_never_beats_any_filling():
    for c in (triangle_sphere(), boundary_4_simplex(), join_sphere()):
        y = equator_cycle(c)
        _, norm = fill_cycle_min_l1(y, c)
        assert norm <= fill_cycle_any(y, c).norm_l1


def test_min_l1_equator_norm_on_triangle_sphere():
    # one hemisphere beats three
    _, norm = fill_cycle_min_l1(equator_cycle(triangle_sphere()), triangle_sphere())
    assert norm == 1


def test_min_l1_scales_with_multiplicity():
    c = triangle_sphere()
    y = equator_cycle(c)
    y3 = Chain(1, {k: 3 * v for k, v in y.coeffs.items()})
    _, n1 = fill_cycle_min_l1(y, c)
    _, n3 = fill_cycle_min_l1(y3, c)
    assert n3 == 3 * n1


def test_filling_bound_reference_values():
    b = filling_constant_bound(boundary_4_simplex())
    assert (b.rank_r, b.inverse_entry_bound_E, b.inverse_entry_bound_E_squared,
            b.fill_ratio_bound) == (6, 16, 243, 96)
    assert hopf_size_upper_bound(boundary_4_simplex()) == 96 * 5


def test_filling_bound_certifies_min_fillings():
    # the certified ratio really bounds observed minimal fillings
    for c in (boundary_4_simplex(), join_sphere()):
        b = filling_constant_bound(c)
        y = equator_cycle(c)
        _, norm = fill_cycle_min_l1(y, c)
        assert norm <= b.fill_ratio_bound * y.norm_l1


def test_filling_bound_trivial_complex():
    b = filling_constant_bound(single_tetrahedron())
    assert b.rank_r == 3
    assert b.fill_ratio_bound >= 1


def test_validate_dual_curve_rejects_malformed_loops():
    c = join_sphere()
    _, y2 = join_hopf_cycles(c)
    validate_dual_curve(y2, c)
    with pytest.raises(InvalidDualCurve):
        validate_dual_curve(DualCurve([[]]), c)
    tet, entry, exit_, _ = y2.loops[0][0]
    with pytest.raises(InvalidDualCurve):
        validate_dual_curve(DualCurve([[(tet, entry, exit_, 2)]]), c)
    with pytest.raises(InvalidDualCurve):
        validate_dual_curve(DualCurve([[(tet, entry, entry, 1)]]), c)


def test_dual_curve_json_round_trip():
    _, y2 = join_hopf_cycles(join_sphere())
    d = dual_curve_to_json_dict(y2)
    back = dual_curve_from_json_dict(d)
    assert back == y2
    assert dual_curve_to_json_dict(back) == d


def test_deform_bounds_norm_by_step_count():
    c = join_sphere()
    _, y2 = join_hopf_cycles(c)
    z = deform_to_skeleton(y2, c)
    assert z.dim == 1
    assert c.boundary_of(z).coeffs == {}
    assert z.norm_l1 <= y2.step_count
    assert all(v.denominator == 1 for v in z.coeffs.values())


def test_deform_vertex_rules_agree_up_to_boundary():
    from hopfkit.homology import is_null_homologous

    c = join_sphere()
    _, y2 = join_hopf_cycles(c)
    za = deform_to_skeleton(y2, c)
    zb = deform_to_skeleton(y2, c, vertex_choice=max)
    diff = Chain(1, {k: za.coeffs.get(k, 0) - zb.coeffs.get(k, 0)
                     for k in set(za.coeffs) | set(zb.coeffs)})
    assert is_null_homologous(diff, c)


def test_deform_rejects_choice_outside_triangle():
    c = join_sphere()
    _, y2 = join_hopf_cycles(c)
    with pytest.raises(InvalidDualCurve):
        deform_to_skeleton(y2, c, vertex_choice=lambda tri: c.vertex_count + 1)
