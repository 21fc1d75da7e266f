"""End-to-end acceptance runs, one test per headline guarantee.

Every test times itself against its stated budget and checks results
against independent recomputations: explicit crossing counts, brute
force tables, exhaustive searches.  Nothing here inspects intermediate
library state; only public inputs and outputs.
"""

import math
import random
import time
from fractions import Fraction
from functools import lru_cache

from hopfkit.complexes import Chain, Complex3
from hopfkit.estimates import TubeParams, best_rational_approx, tube_report
from hopfkit.families import (
    STANDARD_SPEC,
    anosov_pairing,
    example1_build,
    example2_build,
    growth_certificate,
)
from hopfkit.filling import (
    DualCurve,
    deform_to_skeleton,
    fill_cycle_any,
    fill_cycle_min_l1,
    filling_constant_bound,
)
from hopfkit.fixtures import (
    boundary_4_simplex,
    genus_two_target,
    grid_torus,
    hopf_fixture,
    join_hopf_cycles,
    join_sphere,
    single_tetrahedron,
    sphere_circle_product,
    sphere_circle_projection,
    suspension_sphere,
    triangle_sphere,
)
from hopfkit.homology import (
    boundary_reduction,
    h2_basis,
    is_null_homologous,
    spanning_genus_report,
    torsion_degree_obstruction,
)
from hopfkit.maps import (
    SimplicialMap,
    degree,
    fiber,
    hopf_invariant,
    linking_number,
    pullback_pairings,
)


@lru_cache(maxsize=None)
def _ex1(n):
    return example1_build(n)


@lru_cache(maxsize=None)
def _ex1_linking(n):
    fam = _ex1(n)
    return linking_number(fam.tube1, fam.tube2, fam.complex)


@lru_cache(maxsize=None)
def _ex2(n):
    return example2_build(n)


@lru_cache(maxsize=None)
def _hopf_map():
    return hopf_fixture()


def crossing_pairing(curve, z, c):
    """Signed count of curve crossings through the support of a 2-chain,
    straight from the raw incidence data."""
    total = Fraction(0)
    for loop in curve.loops:
        for tet, _entry, exit_, sign in loop:
            v = z.coeffs.get(exit_)
            if v:
                total += sign * c.tet_signs[tet] * c.b3_columns[tet][exit_] * v
    return total


def rational_rank(vectors):
    rank = 0
    pivots = {}
    for vec in vectors:
        r = {k: Fraction(v) for k, v in vec.items() if v}
        while r:
            low = max(r)
            if low not in pivots:
                pivots[low] = r
                rank += 1
                break
            p = pivots[low]
            f = r[low] / p[low]
            for k, v in p.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return rank


def sort_parity(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[j] < seq[i]:
                seq[i], seq[j] = seq[j], seq[i]
                sign = -sign
    return sign


def brute_best_approx(x, q_max):
    best = None
    for q in range(1, q_max + 1):
        p = round(x * q)
        err = abs(x - p / q)
        if best is None or err < best[2] - 1e-18:
            best = (p, q, err)
    return best


def test_criterion_01_hopf_link_in_the_join_sphere():
    t0 = time.perf_counter()
    c = join_sphere()
    y1, y2 = join_hopf_cycles(c)
    lk = linking_number(y1, y2, c)
    assert abs(lk) == 1 and lk.denominator == 1
    neg1 = Chain(1, {e: -v for e, v in y1.coeffs.items()})
    assert linking_number(neg1, y2, c) == -lk
    rev2 = DualCurve(
        [[(t, e, x, -s) for t, e, x, s in loop] for loop in y2.loops]
    )
    assert linking_number(y1, rev2, c) == -lk
    assert linking_number(neg1, rev2, c) == lk
    assert time.perf_counter() - t0 < 1.0


def test_criterion_02_hopf_invariant_well_defined():
    t0 = time.perf_counter()
    f = _hopf_map()
    src = f.source
    h = hopf_invariant(f)
    assert abs(h) == 1
    occupied = [t for t in range(f.target.n_triangles) if fiber(f, t).curve.loops]
    t1, t2 = occupied[0], occupied[1]

    def value(ta, tb, rule, use_min):
        y = deform_to_skeleton(fiber(f, ta).curve, src, vertex_choice=rule)
        if use_min:
            z, norm = fill_cycle_min_l1(y, src)
            assert z.norm_l1 == norm
        else:
            z = fill_cycle_any(y, src)
        return crossing_pairing(fiber(f, tb).curve, z, src)

    forward = {
        value(t1, t2, rule, use_min)
        for rule in (None, max)
        for use_min in (False, True)
    }
    backward = {
        value(t2, t1, rule, use_min)
        for rule in (None, max)
        for use_min in (False, True)
    }
    assert len(forward) == 1 and len(backward) == 1
    fwd = forward.pop()
    bwd = backward.pop()
    assert fwd == h
    assert abs(bwd) == abs(h) == 1
    rev = Complex3(
        src.tets,
        signs=[-s for s in src.tet_signs],
        vertex_count=src.vertex_count,
    )
    assert hopf_invariant(SimplicialMap(rev, f.target, f.vertex_map)) == -h
    assert time.perf_counter() - t0 < 30.0


def test_criterion_03_growth_identity_end_to_end():
    t0 = time.perf_counter()
    for n, want in ((0, 1), (1, 1), (2, 2), (3, 5)):
        fam = _ex1(n)
        pairing = anosov_pairing(STANDARD_SPEC, n)
        assert pairing == want == fam.predicted_linking
        assert abs(_ex1_linking(n)) == want
    reps = 1000
    o0 = time.perf_counter()
    for _ in range(reps):
        anosov_pairing(STANDARD_SPEC, 30)
    assert (time.perf_counter() - o0) / reps < 1e-3
    c_min, table = growth_certificate(STANDARD_SPEC, 30)
    assert c_min >= 2
    phi_sq = (3 + math.sqrt(5)) / 2
    assert abs(table[-1] / table[-2] - phi_sq) < 1e-3
    assert time.perf_counter() - t0 < 600.0


def test_criterion_04_cut_open_defect_is_twice_the_linking():
    t0 = time.perf_counter()
    for n in (0, 1, 2):
        _m, f1, f2, f3 = _ex2(n)
        values = []
        for g in (f1, f2, f3):
            assert not any(pullback_pairings(g))
            values.append(hopf_invariant(g))
        defect = values[2] - values[0] - values[1]
        lk = _ex1_linking(n)
        assert defect == 2 * lk or defect == -2 * lk
        assert abs(defect) == 2 * anosov_pairing(STANDARD_SPEC, n)
    assert time.perf_counter() - t0 < 600.0


def test_criterion_05_filling_soundness_randomized():
    t0 = time.perf_counter()
    cases = [
        boundary_4_simplex(),
        join_sphere(),
        sphere_circle_product(),
        _ex1(1).complex,
    ]
    rng = random.Random(20260822)
    checked = 0
    for c in cases:
        frb = filling_constant_bound(c).fill_ratio_bound
        done = 0
        while done < 50:
            w = {
                rng.randrange(c.n_triangles): rng.choice([-3, -2, -1, 1, 2, 3])
                for _ in range(rng.randrange(1, 6))
            }
            y = c.boundary_of(Chain(2, w))
            if not y.coeffs:
                continue
            assert all(Fraction(v).denominator == 1 for v in y.coeffs.values())
            z_any = fill_cycle_any(y, c)
            assert c.boundary_of(z_any) == y
            z_min, norm = fill_cycle_min_l1(y, c)
            assert c.boundary_of(z_min) == y
            assert z_min.norm_l1 == norm
            assert norm <= z_any.norm_l1
            assert norm <= frb * y.norm_l1
            done += 1
            checked += 1
    assert checked >= 200
    assert time.perf_counter() - t0 < 120.0


def test_criterion_06_deformation_matches_the_fiber_class():
    t0 = time.perf_counter()
    f = _hopf_map()
    occ = [t for t in range(f.target.n_triangles) if fiber(f, t).curve.loops]
    proj = sphere_circle_projection()
    pocc = [
        t for t in range(proj.target.n_triangles) if fiber(proj, t).curve.loops
    ]
    jc = join_sphere()
    fam = _ex1(1)
    cases = [
        (f.source, fiber(f, occ[0]).curve),
        (f.source, fiber(f, occ[1]).curve),
        (jc, join_hopf_cycles(jc)[1]),
        (proj.source, fiber(proj, pocc[0]).curve),
        (fam.complex, fam.tube2),
    ]
    for c, curve in cases:
        for rule in (None, max):
            y = deform_to_skeleton(curve, c, vertex_choice=rule)
            assert not c.boundary_of(y).coeffs
            assert y.norm_l1 <= curve.step_count
        y_min = deform_to_skeleton(curve, c)
        y_max = deform_to_skeleton(curve, c, vertex_choice=max)
        d = dict(y_min.coeffs)
        for e, v in y_max.coeffs.items():
            d[e] = d.get(e, 0) - v
        assert is_null_homologous(Chain(1, d), c)
        pairings = [crossing_pairing(curve, w, c) for w in h2_basis(c)]
        assert is_null_homologous(y_min, c) == (not any(pairings))
    assert time.perf_counter() - t0 < 60.0


def test_criterion_07_spanning_generators_integral_and_spanning():
    t0 = time.perf_counter()
    zoo = [
        single_tetrahedron(),
        triangle_sphere(),
        boundary_4_simplex(),
        join_sphere(),
        grid_torus(),
        suspension_sphere(),
        sphere_circle_product(),
        genus_two_target(),
        _hopf_map().source,
    ]
    for c in zoo:
        rep = spanning_genus_report(c)
        red2 = boundary_reduction(c, 2)
        dim = c.n_triangles - red2.rank
        assert rep.rank_r == red2.rank
        assert len(rep.kernel_generators) == dim
        vecs = []
        for g in rep.kernel_generators:
            assert g.dim == 2 and g.coeffs
            assert all(Fraction(v).denominator == 1 for v in g.coeffs.values())
            assert not c.boundary_of(g).coeffs
            assert max(abs(v) for v in g.coeffs.values()) <= rep.coefficient_bound
            vecs.append(g.coeffs)
        assert rational_rank(vecs) == dim
    assert time.perf_counter() - t0 < 60.0


def test_criterion_08_torsion_obstruction_table():
    t0 = time.perf_counter()
    table = [
        (5, 1, 5), (6, 2, 3), (4, 4, 1), (1, 1, 1), (2, 1, 2),
        (3, 1, 3), (4, 1, 4), (4, 2, 2), (6, 3, 2), (6, 4, 3),
        (8, 6, 4), (9, 6, 3), (10, 4, 5), (12, 8, 3), (7, 14, 1),
        (15, 6, 5), (16, 12, 4), (21, 14, 3), (30, 12, 5), (9, 3, 3),
    ]
    assert len(table) == 20
    assert len({(T, S) for T, S, _ in table}) == 20
    for T, S, want in table:
        got = torsion_degree_obstruction(T, S)
        assert got == want
        brute = next(d for d in range(1, T + 1) if (S * d) % T == 0)
        assert got == brute
    assert time.perf_counter() - t0 < 1.0


def test_criterion_09_tube_calculator():
    t0 = time.perf_counter()
    rng = random.Random(7041116)
    for _ in range(1000):
        x = rng.uniform(-4.0, 4.0)
        q_max = rng.randrange(1, 1001)
        p, q, err = best_rational_approx(x, q_max)
        assert 1 <= q <= q_max and math.gcd(p, q) == 1
        assert abs(err - abs(x - p / q)) <= 1e-15
        _bp, _bq, berr = brute_best_approx(x, q_max)
        assert err <= berr + 1e-15
    rep = tube_report(TubeParams(epsilon=1e-4, theta=1.0))
    assert abs(rep.R_lower - 100.0) <= 1e-9 * 100.0
    sixth = 1e-4 ** (-1.0 / 6.0)
    assert abs(rep.volume_threshold - sixth) <= 1e-9 * sixth
    assert abs(rep.order_threshold - sixth) <= 1e-9 * sixth
    assert abs(rep.hopf_threshold - 10.0) <= 1e-9 * 10.0
    for _ in range(1000):
        params = TubeParams(
            epsilon=10 ** rng.uniform(-8, -1),
            theta=rng.uniform(-10.0, 10.0),
            q=rng.choice([None, 1, 2, 3, 5, 8, 13, 50, 1000]),
            c=10 ** rng.uniform(-1, 1),
            C=10 ** rng.uniform(-1, 1),
        )
        rep = tube_report(params)
        if rep.branch == "torsion_order":
            assert params.q is None or params.q >= rep.order_threshold
        elif rep.branch == "hopf_size":
            assert params.q is not None and params.q < rep.order_threshold
            assert rep.hopf_size_lower >= rep.hopf_threshold
        else:
            assert rep.branch == "volume"
            assert params.q is not None and params.q < rep.order_threshold
            assert rep.hopf_size_lower < rep.hopf_threshold
    assert time.perf_counter() - t0 < 30.0


def test_criterion_10_degree_reference_values():
    t0 = time.perf_counter()
    s = boundary_4_simplex()
    ident = SimplicialMap(s, s, [0, 1, 2, 3, 4])
    swap = SimplicialMap(s, s, [1, 0, 2, 3, 4])
    const = SimplicialMap(s, s, [0, 0, 0, 0, 0])
    assert degree(ident) == 1
    assert degree(swap) == -1
    assert degree(const) == 0
    j = join_sphere()
    jid = SimplicialMap(j, j, list(range(j.vertex_count)))
    assert degree(jid) == 1
    for f in (ident, swap, const, jid):
        d = degree(f)
        tgt = f.target
        counts = [0] * tgt.n_tets
        for i, tet in enumerate(f.source.tets):
            img = tuple(f.vertex_map[v] for v in tet)
            if len(set(img)) < 4:
                continue
            k = tgt.tet_index[tuple(sorted(img))]
            counts[k] += (
                f.source.tet_signs[i] * sort_parity(img) * tgt.tet_signs[k]
            )
        assert counts == [d] * tgt.n_tets
    assert time.perf_counter() - t0 < 1.0
