"""Deforming transverse curves to the 1-skeleton and filling 1-cycles
by 2-chains with L1 control.

The minimum-norm solver keeps linear programs small by restricting to a
region of triangles around the cycle.  Optimality is certified by a
feasible dual vector, found greedily on the cycle's own edges or as the
exact optimum of the dual restricted to the region; the region grows
only when both fail.  At the full complex the restricted dual is the
dual itself, so termination is structural.  No floating point anywhere
in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .complexes import Chain, Complex3
from .errors import (
    InconsistencyDetected,
    InvalidDualCurve,
    NotACycle,
    NotNullHomologous,
)
from .homology import boundary_reduction
from .lp import Infeasible, solve_box_dual, solve_min_l1


class DualCurve:
    """Closed loops transverse to the 2-skeleton.

    Each loop is a cyclic sequence of steps (tetrahedron index, entry
    triangle index, exit triangle index, sign); consecutive steps share
    the crossed triangle.  One step = one crossing of the 2-skeleton.
    """

    __slots__ = ("loops",)

    def __init__(self, loops):
        self.loops = tuple(
            tuple((int(t), int(e), int(x), int(s)) for t, e, x, s in loop)
            for loop in loops
        )

    @property
    def step_count(self) -> int:
        return sum(len(loop) for loop in self.loops)

    def __eq__(self, other):
        return isinstance(other, DualCurve) and self.loops == other.loops

    def __repr__(self):
        return f"DualCurve({len(self.loops)} loops, {self.step_count} steps)"


def validate_dual_curve(curve: DualCurve, complex: Complex3) -> None:
    for loop in curve.loops:
        if not loop:
            raise InvalidDualCurve("empty loop")
        for k, (tet, entry, exit_, sign) in enumerate(loop):
            if sign not in (1, -1):
                raise InvalidDualCurve(f"step sign {sign} not in {{-1, +1}}")
            if entry == exit_:
                raise InvalidDualCurve("entry and exit triangle coincide")
            if not 0 <= tet < complex.n_tets:
                raise InvalidDualCurve(f"tetrahedron index {tet} out of range")
            col = complex.b3_columns[tet]
            if entry not in col or exit_ not in col:
                raise InvalidDualCurve(
                    f"triangles of step {k} are not faces of tetrahedron {tet}"
                )
            nxt = loop[(k + 1) % len(loop)]
            if exit_ != nxt[1]:
                raise InvalidDualCurve("consecutive steps do not share a triangle")


def deform_to_skeleton(y: DualCurve, c: Complex3, vertex_choice=None) -> Chain:
    """Deform a transverse curve to an integral 1-cycle in the 1-skeleton.

    On each crossed triangle a vertex is chosen (default: smallest
    index); each step contributes its sign times the edge between the
    chosen vertices of its entry and exit faces, both of which lie in
    the step's tetrahedron.  Degenerate steps (equal choices) emit
    nothing, so the L1 norm never exceeds the step count.
    """
    rule = vertex_choice if vertex_choice is not None else min
    validate_dual_curve(y, c)
    out: dict = {}
    eidx = c.edge_index
    for loop in y.loops:
        for tet, entry, exit_, sign in loop:
            va = rule(c.triangles[entry])
            vb = rule(c.triangles[exit_])
            if va not in c.triangles[entry] or vb not in c.triangles[exit_]:
                raise InvalidDualCurve("vertex_choice left the triangle")
            if va == vb:
                continue
            if va < vb:
                key = eidx[(va, vb)]
                out[key] = out.get(key, 0) + sign
            else:
                key = eidx[(vb, va)]
                out[key] = out.get(key, 0) - sign
    chain = Chain(1, out)
    if c.boundary_of(chain).coeffs:
        raise InvalidDualCurve(
            "deformed chain is not a cycle; step signs are incoherent along a loop"
        )
    return chain


# ---------------------------------------------------------------------------
# fillings


def _require_cycle(y: Chain, c: Complex3) -> None:
    if y.dim != 1:
        raise NotACycle(f"expected a 1-chain, got dimension {y.dim}")
    if c.boundary_of(y).coeffs:
        raise NotACycle("chain has nonzero boundary")


def fill_cycle_any(y: Chain, c: Complex3) -> Chain:
    """Some rational 2-chain z with B2 z = y, deterministic in the input.

    The identity B2 z = y is re-verified exactly before returning.
    """
    _require_cycle(y, c)
    x = boundary_reduction(c, 2).solve(y.coeffs)
    if x is None:
        raise NotNullHomologous("cycle is not a rational boundary")
    z = Chain(2, x)
    if c.boundary_of(z) != y:
        raise InconsistencyDetected("filling verification failed")
    return z


def _ring(c: Complex3, region: set) -> set:
    grown = set()
    for j in region:
        for e in c.b2_columns[j]:
            for t, _inc in c.edge_cofacets[e]:
                if t not in region:
                    grown.add(t)
    return grown


def _greedy_dual(c: Complex3, y: Chain, target: Fraction):
    """Feasible dual built from signed edge indicators, largest |y_e| first.

    A single indicator is always feasible (a triangle contains an edge
    at most once, with incidence +-1), so the first pick survives; later
    picks keep every touched triangle sum inside [-1, 1].  Returns the
    dual iff its value reaches ``target``, else None.
    """
    tri_sum: dict = {}
    value = Fraction(0)
    picked: dict = {}
    for e in sorted(y.coeffs, key=lambda k: (-abs(y.coeffs[k]), k)):
        s = 1 if y.coeffs[e] > 0 else -1
        if any(abs(tri_sum.get(t, 0) + s * inc) > 1 for t, inc in c.edge_cofacets[e]):
            continue
        for t, inc in c.edge_cofacets[e]:
            tri_sum[t] = tri_sum.get(t, 0) + s * inc
        picked[e] = s
        value += s * y.coeffs[e]
    if value > target:
        raise InconsistencyDetected("greedy dual exceeds the primal objective")
    return picked if value == target else None


def _local_dual(c: Complex3, y: Chain, region: set, target: Fraction):
    """Exact optimum of the dual restricted to the region's edges.

    The constraint set covers every triangle meeting a restricted edge,
    so a solution extends by zero to a globally feasible dual.  Returns
    it iff its value reaches ``target``, else None.
    """
    edges = set(y.coeffs)
    for j in region:
        edges.update(c.b2_columns[j])
    order = sorted(edges)
    pos = {e: i for i, e in enumerate(order)}
    tris = {t for e in order for t, _inc in c.edge_cofacets[e]}
    constraints = [
        {pos[e]: v for e, v in c.b2_columns[j].items() if e in pos}
        for j in sorted(tris)
    ]
    weights = [y.coeffs.get(e, Fraction(0)) for e in order]
    p, value = solve_box_dual(constraints, weights)
    if value > target:
        raise InconsistencyDetected("restricted dual exceeds the primal objective")
    if value < target:
        return None
    return {order[i]: v for i, v in enumerate(p) if v}


def _dual_feasible_value(c: Complex3, p: dict, y: Chain) -> Fraction:
    """Re-verify feasibility of a dual vector and return its pairing with y.

    Checks every triangle meeting the support of p from the raw boundary
    columns, independent of how p was produced.
    """
    seen = {t for e in p for t, _inc in c.edge_cofacets[e]}
    for t in seen:
        s = Fraction(0)
        for e, v in c.b2_columns[t].items():
            q = p.get(e)
            if q:
                s += q * v
        if abs(s) > 1:
            raise InconsistencyDetected("dual certificate infeasible on recheck")
    return sum((Fraction(p[e]) * y.coeffs[e] for e in p if e in y.coeffs), Fraction(0))


def fill_cycle_min_l1(y: Chain, c: Complex3):
    """(z, norm): filling minimizing the L1 norm, certified exactly.

    The primal LP runs on the triangles near the cycle, growing only
    when infeasible.  Its optimum is certified by a feasible dual of
    equal value: the greedy indicator dual when the cycle is tight, the
    restricted dual LP otherwise.  Either extends by zero to the whole
    complex, so equality proves global optimality by weak duality; when
    the region reaches the full complex the restricted dual must close
    the gap, so the loop terminates.
    """
    _require_cycle(y, c)
    if not y.coeffs:
        return Chain(2, {}), Fraction(0)
    if boundary_reduction(c, 2).residual(y.coeffs):
        raise NotNullHomologous("cycle is not a rational boundary")
    region = {t for e in y.coeffs for t, _inc in c.edge_cofacets[e]}
    while True:
        cols_idx = sorted(region)
        cols = [c.b2_columns[j] for j in cols_idx]
        try:
            d_local, obj, _dual = solve_min_l1(cols, y.coeffs)
        except Infeasible:
            grown = _ring(c, region)
            if not grown:
                raise InconsistencyDetected(
                    "region exhausted while cycle was certified fillable"
                )
            region |= grown
            continue
        cert = _greedy_dual(c, y, obj)
        if cert is None:
            cert = _local_dual(c, y, region, obj)
        if cert is not None:
            if _dual_feasible_value(c, cert, y) != obj:
                raise InconsistencyDetected("dual certificate value drifted")
            z = Chain(2, {cols_idx[jl]: v for jl, v in d_local.items()})
            if c.boundary_of(z) != y:
                raise InconsistencyDetected("filling verification failed")
            if z.norm_l1 != obj:
                raise InconsistencyDetected("objective does not match the chain norm")
            return z, obj
        grown = _ring(c, region)
        if not grown:
            raise InconsistencyDetected(
                "dual certification failed with the region at the full complex"
            )
        region |= grown


# ---------------------------------------------------------------------------
# the explicit filling-constant bound


@dataclass(frozen=True)
class FillingBound:
    """Certificate that every null-homologous integral 1-cycle y has a
    filling with Sigma|d_j| <= fill_ratio_bound * Sigma|c_i|.

    inverse_entry_bound_E is the integer ceiling of the Hadamard bound
    3^((r-1)/2) on subdeterminant ratios; its exact square 3^(r-1) is
    kept alongside so comparisons can stay in integers.
    """

    rank_r: int
    inverse_entry_bound_E: int
    inverse_entry_bound_E_squared: int
    fill_ratio_bound: int


def filling_constant_bound(c: Complex3) -> FillingBound:
    r = boundary_reduction(c, 2).rank
    if r == 0:
        return FillingBound(0, 1, 1, 0)
    e_sq = 3 ** (r - 1)
    s = isqrt(e_sq)
    E = s if s * s == e_sq else s + 1
    return FillingBound(r, E, e_sq, r * E)


def hopf_size_upper_bound(c: Complex3) -> int:
    """Combinatorial certificate fill_ratio_bound * (tetrahedron count),
    in normalized units (all universal constants set to 1)."""
    if c.n_tets == 0 and c.n_triangles == 0:
        return 0
    c.require_closed_oriented()
    return filling_constant_bound(c).fill_ratio_bound * c.n_tets


# ---------------------------------------------------------------------------
# serialization


def chain_to_json_dict(chain: Chain) -> dict:
    return {
        "dim": chain.dim,
        "coeffs": [[j, str(v)] for j, v in sorted(chain.coeffs.items())],
    }


def chain_from_json_dict(data: dict) -> Chain:
    coeffs = {}
    for j, v in data["coeffs"]:
        coeffs[int(j)] = Fraction(v)
    return Chain(int(data["dim"]), coeffs)


def dual_curve_to_json_dict(curve: DualCurve) -> dict:
    return {"loops": [[list(step) for step in loop] for loop in curve.loops]}


def dual_curve_from_json_dict(data: dict) -> DualCurve:
    return DualCurve(data["loops"])
