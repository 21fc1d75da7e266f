"""Anosov torus families: closed 3-complexes carrying a pair of tubes
whose linking number grows exponentially with the twisting depth N, and
a cut-open variant whose collapse maps turn the same linking into a
Hopf-invariant defect.

Both constructions share one engine: start from a 3x3 lattice torus
sheet, fill one side, shear the exposed torus through the frames of
Psi^-1, ..., Psi^-N with full diagonal-flip layers, do something at the
waist, shear back, and fill the other side.  The frame bookkeeping in
the sheet is exact over Z, so the homology class of any curve drawn on
the waist torus is known by construction and the linking numbers can be
predicted from the matrix alone.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .complexes import Chain, Complex3
from .errors import (ConstructionFailure, InconsistencyDetected,
                     InvalidParams, NotAnosov, NotCoprime, TooLarge)
from .filling import DualCurve, validate_dual_curve
from .fixtures import (COLLAPSE_CENTER, collared_double_torus,
                       genus_two_target, pants_triangles)
from .homology import betti_numbers, h1_torsion_order
from .layering import (LayerBuilder, TorusSheet, build_column_filling,
                       build_row_filling, circle_layers, direction_key,
                       edge_cycle_chain, flip_quad, row_core_curve)
from .maps import SimplicialMap

__all__ = [
    "AnosovSpec",
    "STANDARD_SPEC",
    "FamilyInstance",
    "anosov_pairing",
    "growth_certificate",
    "dehn_filling_h1",
    "example1_build",
    "example2_build",
]


def _mat_mul(A, B):
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


def _mat_vec(A, v):
    return (A[0][0] * v[0] + A[0][1] * v[1], A[1][0] * v[0] + A[1][1] * v[1])


def _mat_inv(A):
    det = A[0][0] * A[1][1] - A[0][1] * A[1][0]
    # |det| = 1, so integer division is exact
    return ((A[1][1] // det, -A[0][1] // det), (-A[1][0] // det, A[0][0] // det))


def _mat_pow(A, n):
    R = ((1, 0), (0, 1))
    for _ in range(n):
        R = _mat_mul(R, A)
    return R


def _cols(A):
    return (A[0][0], A[1][0]), (A[0][1], A[1][1])


@dataclass(frozen=True)
class AnosovSpec:
    """Integer 2x2 matrix acting on the waist torus, rows as given;
    columns are the images of the two generators (a, b)."""

    matrix: tuple

    def validate(self):
        (a, b), (c, d) = self.matrix
        det = a * d - b * c
        if abs(det) != 1:
            raise NotAnosov("determinant %d, need a unimodular matrix" % det)
        if abs(a + d) <= 2:
            raise NotAnosov("trace %d, need |trace| > 2" % (a + d))


STANDARD_SPEC = AnosovSpec(((2, 1), (1, 1)))


def anosov_pairing(spec: AnosovSpec, N: int) -> int:
    """|second coordinate of Psi^N b|: the predicted tube linking at
    depth N.  Computed from the matrix alone, no complex involved."""
    spec.validate()
    if N < 0:
        raise InvalidParams("depth must be nonnegative, got %d" % N)
    v = (0, 1)
    for _ in range(N):
        v = _mat_vec(spec.matrix, v)
    return abs(v[1])


def growth_certificate(spec: AnosovSpec, n_max: int):
    """(growth constant estimate, pairing table for N = 1..n_max).

    The estimate is the worst consecutive ratio in the table, as an
    exact Fraction.  A ratio at or below 1 means the pairing is not
    actually growing and the matrix certificate is inconsistent.
    """
    spec.validate()
    if n_max < 2:
        raise InvalidParams("need n_max >= 2 to form a ratio, got %d" % n_max)
    table = [anosov_pairing(spec, n) for n in range(1, n_max + 1)]
    ratios = [Fraction(table[k], table[k - 1]) for k in range(1, len(table))]
    if min(ratios) <= 1:
        raise InconsistencyDetected(
            "pairing table fails to grow: ratios %s" % (ratios,))
    return min(ratios), table


def dehn_filling_h1(m: int, n: int):
    """H1 effect of filling a torus boundary along the (m, n) slope:
    (change in free rank, order of the core circle's class).

    Longitudinal fillings (n = 0) leave the core of infinite order."""
    if gcd(m, n) != 1:
        raise NotCoprime("slope (%d, %d) is not primitive" % (m, n))
    if n == 0:
        return 1, None
    return 0, abs(n)


@dataclass(frozen=True)
class FamilyInstance:
    N: int
    complex: Complex3
    tube1: Chain
    tube2: DualCurve
    predicted_linking: int


def _forward_shears(sheet, spec, N):
    """Shear through the inverse-power frames; returns the final matrix."""
    inv = _mat_inv(spec.matrix)
    B = ((1, 0), (0, 1))
    for _ in range(N):
        B = _mat_mul(B, inv)
        e1, e2 = _cols(B)
        sheet.shear_to(direction_key(e1, e2))
    return B


def _mirror_shears(sheet, spec, N):
    inv = _mat_inv(spec.matrix)
    for t in range(N - 1, -1, -1):
        e1, e2 = _cols(_mat_pow(inv, t))
        sheet.shear_to(direction_key(e1, e2))
    sheet.shear_to(direction_key((1, 0), (0, 1)))


def example1_build(N: int, spec: AnosovSpec = STANDARD_SPEC) -> FamilyInstance:
    """Depth-N member of the two-tube family.

    Row filling, N shear stages out, a 3-edge tube along the sheared
    image of the first row, N stages back, column filling.  The result
    is a 3-sphere for every N; tube1 is the edge loop at the waist and
    tube2 the core of the row filling, and their linking is the matrix
    pairing up to sign.
    """
    spec.validate()
    if N < 0:
        raise InvalidParams("depth must be nonnegative, got %d" % N)
    if N > 4:
        raise TooLarge("depth %d exceeds the supported range (4)" % N)

    b = LayerBuilder()
    ids = b.fresh(9)
    vert = {(x, y): ids[3 * x + y] for x in range(3) for y in range(3)}
    sheet = TorusSheet(b, 3, vert, (1, 0), (0, 1))
    centers = build_row_filling(sheet)
    core_steps = row_core_curve(sheet, centers)

    B = _forward_shears(sheet, spec, N)
    d = sheet.direction_vector(_cols(B)[0])
    dm = (d[0] % 3, d[1] % 3)
    tube1_verts = [sheet.at(0, 0), sheet.at(*dm), sheet.at(2 * dm[0], 2 * dm[1])]

    _mirror_shears(sheet, spec, N)
    build_column_filling(sheet)

    c = b.finish()
    if betti_numbers(c) != (1, 0, 0, 1) or h1_torsion_order(c) != 1:
        raise ConstructionFailure(
            "depth-%d build is not a homology 3-sphere" % N)

    tube1 = edge_cycle_chain(c, tube1_verts)
    steps = [(c.tet_index[tuple(sorted(tet))],
              c.triangle_index[tuple(sorted(fin))],
              c.triangle_index[tuple(sorted(fout))], s)
             for tet, fin, fout, s in core_steps]
    tube2 = DualCurve([steps])
    validate_dual_curve(tube2, c)
    return FamilyInstance(N, c, tube1, tube2, anosov_pairing(spec, N))


def _tube_frame(sheet, d):
    """Working frame (pbar, qbar) of the waist with pbar parallel to d.

    The shear search is free to land on any frame with the right
    direction set, so d may sit on the cell diagonal; reframing then
    promotes it to an edge direction without changing the triangles.
    """
    pbar = sheet.direction_vector(d)
    if pbar == sheet.p:
        return sheet.p, sheet.q
    if pbar == sheet.q:
        return sheet.q, sheet.p
    sheet.reframe((sheet.p[0] + sheet.q[0], sheet.p[1] + sheet.q[1]),
                  (-sheet.p[0], -sheet.p[1]))
    return sheet.p, sheet.q


def example2_build(N: int, spec: AnosovSpec = STANDARD_SPEC):
    """Depth-N cut-open family member: (M, f1, f2, f3).

    The waist of the depth-N build is cut open and a pants-times-circle
    region is spliced in: one cuff continues toward the column filling,
    the other two are capped by collared-surface-times-circle blocks.
    Each f_i collapses one block (or both, for f3) onto the fixed
    genus-2 surface and sends the rest of M to the collapse center, so
    its fibers are the block's vertical circles.

    f3's fiber system is the disjoint union of f1's and f2's, which
    makes Hopf(f3) - Hopf(f1) - Hopf(f2) twice the linking of one
    block-A fiber with one block-B fiber: the matrix pairing again.
    """
    spec.validate()
    if N < 0:
        raise InvalidParams("depth must be nonnegative, got %d" % N)
    if N > 2:
        raise TooLarge("depth %d exceeds the supported range (2)" % N)

    nv_s, surf_tris, bcycle, collapse = collared_double_torus()
    pants, c1, c2, c3 = pants_triangles()

    b = LayerBuilder()

    # block A: collared surface times circle, all vertices fresh
    lev_a = []
    for _ in range(3):
        ids = b.fresh(nv_s)
        lev_a.append(dict(enumerate(ids)))
    circle_layers(b, surf_tris, lev_a)
    # the wall's third boundary column runs against the level grain;
    # one flip per level turns it into the uniform lattice
    for l in range(3):
        l1 = (l + 1) % 3
        flip_quad(b, lev_a[l][bcycle[0]], lev_a[l][bcycle[2]],
                  lev_a[l1][bcycle[2]], lev_a[l1][bcycle[0]])

    vert = {(i, l): lev_a[l][bcycle[i]] for i in range(3) for l in range(3)}
    sheet = TorusSheet(b, 3, vert, (1, 0), (0, 1))
    sheet.check_exposed()

    B = _forward_shears(sheet, spec, N)
    pbar, qbar = _tube_frame(sheet, _cols(B)[0])
    # the second cuff runs around the pants against the first, so its
    # wall takes the opposite label; the wrong sign twists the mirror
    # gluing and puts 3-torsion into H1
    qeff = (-qbar[0], -qbar[1])

    # fresh layer so the cuff flips below cannot collide with buried
    # diagonals of the last shear stage
    sheet.pad()

    def latt(i, l):
        return sheet.at(i * qbar[0] + l * pbar[0], i * qbar[1] + l * pbar[1])

    # pre-adapt: the pants wall wants its third cuff column against the
    # grain, mirroring the block-A wall
    for l in range(3):
        flip_quad(b, latt(2, l), latt(0, l), latt(0, l + 1), latt(2, l + 1))

    # pants times circle, glued along the first cuff; the circle factor
    # runs in the tube direction pbar
    lev_p = []
    for l in range(3):
        level = {}
        for k in range(3):
            level[c1[k]] = latt(k, l)
        for w in range(12):
            if w not in level:
                level[w] = b.fresh(1)[0]
        lev_p.append(level)
    circle_layers(b, pants, lev_p)

    def top(i, l):
        return lev_p[l % 3][c2[i]]

    # post-adapt: back to the uniform lattice on the second cuff wall
    for l in range(3):
        flip_quad(b, top(0, l), top(2, l), top(2, l + 1), top(0, l + 1))

    mirror = {}
    for i in range(3):
        for l in range(3):
            key = ((i * qeff[0] + l * pbar[0]) % 3,
                   (i * qeff[1] + l * pbar[1]) % 3)
            mirror[key] = top(i, l)
    sheet2 = TorusSheet(b, 3, mirror, pbar, qeff)
    sheet2.check_exposed()

    _mirror_shears(sheet2, spec, N)
    build_column_filling(sheet2)

    # block B caps the inner cuff; its boundary primes are the cuff
    # vertices themselves, so no adapter layer is needed
    lev_b = []
    for l in range(3):
        level = {}
        for k in range(3):
            level[bcycle[k]] = lev_p[l][c3[k]]
        for w in range(nv_s):
            if w not in level:
                level[w] = b.fresh(1)[0]
        lev_b.append(level)
    circle_layers(b, surf_tris, lev_b)

    M = b.finish()
    if betti_numbers(M) != (1, 8, 8, 1):
        raise ConstructionFailure(
            "depth-%d cut-open build has Betti numbers %r"
            % (N, betti_numbers(M)))

    target = genus_two_target()

    def collapse_map(level_dicts):
        vm = [COLLAPSE_CENTER] * M.vertex_count
        for level in level_dicts:
            for w, vid in level.items():
                vm[vid] = collapse[w]
        return SimplicialMap(M, target, vm)

    f1 = collapse_map(lev_a)
    f2 = collapse_map(lev_b)
    f3 = collapse_map(lev_a + lev_b)
    return M, f1, f2, f3
