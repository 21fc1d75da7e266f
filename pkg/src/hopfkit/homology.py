"""Homology of oriented simplicial complexes.

Rational ranks come from cached column reductions (one per boundary
operator per complex, shared with the filling routines), torsion from
sparse integer elimination, and small dense problems go through Smith
normal form with full transforms.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from math import gcd

from .complexes import Chain, Complex3
from .errors import InconsistencyDetected, NonPositiveInput, NotACycle
from .exact import ColumnReduction, invariant_factors
from .exact import smith_normal_form as _snf_transforms

_cache: "weakref.WeakKeyDictionary[Complex3, dict]" = weakref.WeakKeyDictionary()


def _entry(complex: Complex3) -> dict:
    e = _cache.get(complex)
    if e is None:
        e = {}
        _cache[complex] = e
    return e


def boundary_reduction(complex: Complex3, dim: int) -> ColumnReduction:
    """Cached column reduction of the boundary operator from dimension dim."""
    e = _entry(complex)
    key = ("red", dim)
    if key not in e:
        cols = {
            1: complex.b1_columns,
            2: complex.b2_columns,
            3: complex.b3_columns,
        }[dim]
        e[key] = ColumnReduction(cols)
    return e[key]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    invariant_factors: tuple
    rank: int
    U: tuple
    V: tuple


def smith_normal_form(matrix) -> SnfResult:
    """Diagonalize an integer matrix: matrix = U * S * V with U, V
    unimodular and S diagonal with a divisibility chain.  The returned
    invariant factors are the nonzero diagonal entries."""
    U, S, V = _snf_transforms(matrix)
    factors = []
    for i in range(min(len(S), len(S[0]) if S else 0)):
        if S[i][i]:
            factors.append(S[i][i])
    return SnfResult(
        invariant_factors=tuple(factors),
        rank=len(factors),
        U=tuple(tuple(r) for r in U),
        V=tuple(tuple(r) for r in V),
    )


# ---------------------------------------------------------------------------
# Betti numbers and torsion


def betti_numbers(complex: Complex3) -> tuple:
    r1 = boundary_reduction(complex, 1).rank
    r2 = boundary_reduction(complex, 2).rank
    r3 = boundary_reduction(complex, 3).rank
    b0 = complex.n_vertices - r1
    b1 = (complex.n_edges - r1) - r2
    b2 = (complex.n_triangles - r2) - r3
    b3 = complex.n_tets - r3
    return (b0, b1, b2, b3)


def h1_invariant_factors(complex: Complex3) -> list:
    e = _entry(complex)
    if "h1_factors" not in e:
        e["h1_factors"] = invariant_factors(complex.b2_columns)
    return list(e["h1_factors"])


def h1_torsion_order(complex: Complex3) -> int:
    order = 1
    for f in h1_invariant_factors(complex):
        order *= f
    return order


def homology_summary(complex: Complex3) -> dict:
    factors = [f for f in h1_invariant_factors(complex) if f != 1]
    return {
        "betti": list(betti_numbers(complex)),
        "h1_invariant_factors": factors,
        "h1_torsion_order": h1_torsion_order(complex),
    }


def is_cycle(complex: Complex3, chain: Chain) -> bool:
    return not complex.boundary_of(chain).coeffs


def is_null_homologous(y: Chain, complex: Complex3) -> bool:
    """Whether a 1-cycle bounds rationally.  Raises NotACycle otherwise."""
    if y.dim != 1:
        raise NotACycle(f"expected a 1-chain, got dimension {y.dim}")
    if not is_cycle(complex, y):
        raise NotACycle("chain has nonzero boundary")
    return not boundary_reduction(complex, 2).residual(y.coeffs)


def h2_basis(complex: Complex3) -> list:
    """Rational 2-cycles spanning H2: kernel vectors of the triangle
    boundary operator that stay independent modulo tetrahedron
    boundaries."""
    red2 = boundary_reduction(complex, 2)
    red3 = boundary_reduction(complex, 3)
    accepted = []
    pivots: dict = {}
    for z in red2.kernel_basis():
        r = red3.residual(z)
        while r:
            low = max(r)
            if low not in pivots:
                break
            p = pivots[low]
            c = r[low] / p[low]
            for k, v in p.items():
                nv = r.get(k, 0) - c * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if r:
            pivots[max(r)] = r
            accepted.append(Chain(2, z))
    return accepted


# ---------------------------------------------------------------------------
# spanning-genus data


@dataclass(frozen=True)
class SpanningGenusReport:
    rank_r: int
    lattice_index_D: int
    kernel_generators: tuple
    max_triangle_count: int
    coefficient_bound: int


def spanning_genus_report(complex: Complex3) -> SpanningGenusReport:
    """Integer 2-cycles spanning the kernel of the triangle boundary
    operator, with size bounds.

    Pivot triangles come from the left-to-right reduction (greedy in
    index order); every non-pivot triangle contributes one kernel
    vector supported on itself plus pivot triangles.  Scaling by D, the
    product of the invariant factors of the pivot submatrix, clears all
    denominators; that the scaled coefficients are integers is checked,
    not assumed.
    """
    red2 = boundary_reduction(complex, 2)
    pivot_cols = red2.pivot_columns()
    sub = [complex.b2_columns[j] for j in pivot_cols]
    lattice_index = 1
    for f in invariant_factors(sub):
        lattice_index *= f
    generators = []
    coeff_bound = 0
    max_count = 0
    for z in red2.kernel_basis():
        g = {}
        for j, c in z.items():
            v = lattice_index * c
            if v.denominator != 1:
                raise InconsistencyDetected(
                    "scaled kernel coefficient is not an integer"
                )
            if v:
                g[j] = v
        chain = Chain(2, g)
        if complex.boundary_of(chain).coeffs:
            raise InconsistencyDetected("kernel generator is not a cycle")
        generators.append(chain)
        coeff_bound = max(coeff_bound, max(abs(int(v)) for v in g.values()))
        max_count = max(max_count, int(chain.norm_l1))
    return SpanningGenusReport(
        rank_r=red2.rank,
        lattice_index_D=lattice_index,
        kernel_generators=tuple(generators),
        max_triangle_count=max_count,
        coefficient_bound=coeff_bound,
    )


def torsion_degree_obstruction(T: int, S: int) -> int:
    """Smallest positive m with every admissible mapping degree a
    multiple of m, given that T (target H1 torsion order) divides S
    (source H1 torsion order) times the degree."""
    if T < 1 or S < 1:
        raise NonPositiveInput("torsion orders must be positive integers")
    return T // gcd(T, S)
