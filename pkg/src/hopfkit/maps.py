"""Simplicial maps, mapping degree, fibers over triangle barycenters,
linking numbers, and the Hopf invariant by fill-and-push-forward.

Sign conventions are local and auditable: every step sign is a product
of stored orientation signs and vertex-permutation parities.  Global
coherence is not assumed; it is enforced by internal cross-checks
(degree consistency over all target cells, (t1, t2) swap and
vertex-rule invariance of the Hopf number) that raise rather than
return a conventionally wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .complexes import Chain, Complex3, sort_parity
from .errors import (
    AmbiguousLinking,
    ChainingFailure,
    HopfUndefined,
    InconsistencyDetected,
    InconsistentDegree,
    IntegralityViolation,
    InvalidMap,
    InvalidParams,
)
from .filling import DualCurve, deform_to_skeleton, fill_cycle_any, validate_dual_curve
from .homology import h2_basis

FORMAT_MAP = "hopfkit-map-v1"


class SimplicialMap:
    """Vertex map between complexes, affine on each simplex.

    The target may be a 3-complex (degree) or a 2-complex (fibers,
    Hopf invariant).  Per-simplex image classifications are computed
    lazily and cached on the instance.
    """

    def __init__(self, source: Complex3, target: Complex3, vertex_map):
        self.source = source
        self.target = target
        self.vertex_map = tuple(int(v) for v in vertex_map)

    @cached_property
    def _tet_images(self) -> tuple:
        vm = self.vertex_map
        return tuple(tuple(vm[v] for v in tet) for tet in self.source.tets)

    @cached_property
    def _tri_images(self) -> tuple:
        vm = self.vertex_map
        return tuple(tuple(vm[v] for v in tri) for tri in self.source.triangles)

    @cached_property
    def _bijective_tets(self) -> dict:
        """target tet index -> [(source tet index, permutation parity)]"""
        out: dict = {}
        tix = self.target.tet_index
        for i, img in enumerate(self._tet_images):
            if len(set(img)) != 4:
                continue
            j = tix.get(tuple(sorted(img)))
            if j is not None:
                out.setdefault(j, []).append((i, sort_parity(img)))
        return out

    @cached_property
    def _bijective_triangles(self) -> dict:
        """target triangle index -> [(source triangle index, parity)]"""
        out: dict = {}
        tix = self.target.triangle_index
        for i, img in enumerate(self._tri_images):
            if len(set(img)) != 3:
                continue
            j = tix.get(tuple(sorted(img)))
            if j is not None:
                out.setdefault(j, []).append((i, sort_parity(img)))
        return out

    @cached_property
    def _fiber_segments(self) -> dict:
        """target triangle index -> {source tet: (start face, end face, sign)}

        A tetrahedron carries a fiber segment over triangle t when its
        vertex images are exactly t's vertices with one of them doubled.
        The segment runs from the face omitting the larger collapsed
        vertex to the face omitting the smaller one; the sign compares
        (wa, wb, u1, u2) with the tetrahedron's canonical orientation,
        where u1, u2 map to the non-collapsed target vertices taken in
        target-orientation order starting after the collapsed image.
        """
        out: dict = {}
        tgt = self.target
        fidx = self.source.triangle_index
        tri_signs = tgt.triangle_signs
        for i, tet in enumerate(self.source.tets):
            img = self._tet_images[i]
            distinct = sorted(set(img))
            if len(distinct) != 3:
                continue
            j = tgt.triangle_index.get(tuple(distinct))
            if j is None:
                continue
            counts = {v: img.count(v) for v in distinct}
            if max(counts.values()) != 2:
                continue
            doubled = next(v for v in distinct if counts[v] == 2)
            wa, wb = sorted(v for v, w in zip(tet, img) if w == doubled)
            p0, p1, p2 = tgt.triangles[j]
            oriented = [p0, p1, p2] if tri_signs[j] == 1 else [p1, p0, p2]
            k = oriented.index(doubled)
            q1, q2 = oriented[(k + 1) % 3], oriented[(k + 2) % 3]
            u1 = next(v for v, w in zip(tet, img) if w == q1)
            u2 = next(v for v, w in zip(tet, img) if w == q2)
            sign = sort_parity((wa, wb, u1, u2)) * self.source.tet_signs[i]
            start = fidx[tuple(v for v in tet if v != wb)]
            end = fidx[tuple(v for v in tet if v != wa)]
            out.setdefault(j, {})[i] = (start, end, sign)
        return out


@dataclass(frozen=True)
class FiberData:
    target_triangle: int
    curve: DualCurve


def validate_map(f: SimplicialMap):
    """(ok, problems): every top-cell image must span a target simplex."""
    problems = []
    src, tgt = f.source, f.target
    if len(f.vertex_map) != src.vertex_count:
        problems.append(
            f"vertex_map length {len(f.vertex_map)} != vertex count {src.vertex_count}"
        )
        return False, problems
    for v, w in enumerate(f.vertex_map):
        if not 0 <= w < tgt.vertex_count:
            problems.append(f"vertex {v} maps to {w}, outside the target")
    if problems:
        return False, problems
    tops = src.tets if src.top_dim == 3 else src.triangles
    for i, cell in enumerate(tops):
        img = tuple(sorted({f.vertex_map[v] for v in cell}))
        if len(img) == 1:
            continue
        lookup = {2: tgt.edge_index, 3: tgt.triangle_index, 4: tgt.tet_index}[len(img)]
        if img not in lookup:
            problems.append(f"top cell {cell} image {img} spans no target simplex")
    return not problems, problems


def require_valid(f: SimplicialMap) -> None:
    ok, problems = validate_map(f)
    if not ok:
        raise InvalidMap("; ".join(problems))


def degree(f: SimplicialMap) -> int:
    """Signed count of preimages over each target tetrahedron.

    The count is recomputed over every target tetrahedron and must
    agree; disagreement means the source is not a cycle or the map is
    not simplicial, so it is an error rather than a warning.
    """
    require_valid(f)
    tgt = f.target
    if tgt.top_dim != 3 or f.source.top_dim != 3:
        raise InvalidMap("degree needs 3-complexes on both sides")
    bij = f._bijective_tets
    deg = None
    src_signs = f.source.tet_signs
    for j in range(len(tgt.tets)):
        d = sum(
            src_signs[i] * parity * tgt.tet_signs[j] for i, parity in bij.get(j, ())
        )
        if deg is None:
            deg = d
        elif d != deg:
            raise InconsistentDegree(
                f"target tetrahedron {j} counts {d}, expected {deg}"
            )
    return 0 if deg is None else deg


def fiber(f: SimplicialMap, t: int) -> FiberData:
    """Preimage of the barycenter of target triangle t, as closed loops
    crossing the source 2-skeleton once per step."""
    require_valid(f)
    if not 0 <= t < f.target.n_triangles:
        raise InvalidParams(f"target triangle index {t} out of range")
    segments = f._fiber_segments.get(t, {})
    if not segments:
        return FiberData(t, DualCurve([]))
    slots: dict = {}
    for tet, (start, end, _s) in segments.items():
        slots.setdefault(start, []).append(tet)
        slots.setdefault(end, []).append(tet)
    for face, tets in slots.items():
        if len(tets) != 2:
            raise ChainingFailure(
                f"fiber endpoint triangle {face} met {len(tets)} segments, not 2"
            )
    unvisited = set(segments)
    loops = []
    while unvisited:
        t0 = min(unvisited)
        start0 = segments[t0][0]
        cur, entry = t0, start0
        loop = []
        while True:
            start, end, sign = segments[cur]
            if entry == start:
                exit_, emitted = end, sign
            else:
                exit_, emitted = start, -sign
            loop.append((cur, entry, exit_, emitted))
            unvisited.discard(cur)
            a, b = slots[exit_]
            nxt = b if a == cur else a
            if nxt == t0 and exit_ == start0:
                break
            if nxt not in unvisited:
                raise ChainingFailure("fiber walk re-entered a consumed segment")
            cur, entry = nxt, exit_
        loops.append(loop)
    return FiberData(t, DualCurve(loops))


def pullback_pairings(f: SimplicialMap) -> list:
    """Pairing of the pulled-back target area class with each basis
    element of rational H2 of the source.  All zeros iff the Hopf
    invariant of f is defined."""
    require_valid(f)
    basis = h2_basis(f.source)
    if not basis:
        return []
    onto = {}
    t_ref = 0
    if f.target.n_triangles:
        sgn_t = f.target.triangle_signs[t_ref]
        for i, parity in f._bijective_triangles.get(t_ref, ()):
            onto[i] = parity * sgn_t
    out = []
    for w in basis:
        out.append(sum((w.coeffs.get(i, 0) * s for i, s in onto.items()), Fraction(0)))
    return out


def _crossing_weight(c: Complex3, tet: int, face: int) -> int:
    return c.tet_signs[tet] * c.b3_columns[tet][face]


def _pair_curve_chain(curve: DualCurve, z: Chain, c: Complex3) -> Fraction:
    total = Fraction(0)
    for loop in curve.loops:
        for tet, _entry, exit_, sign in loop:
            v = z.coeffs.get(exit_)
            if v:
                total += sign * _crossing_weight(c, tet, exit_) * v
    return total


def linking_number(y1: Chain, y2: DualCurve, c: Complex3) -> Fraction:
    """Crossing pairing of a filling of y1 with the transverse curve y2.

    Each step of y2 crosses its exit triangle F leaving tetrahedron tau;
    the crossing picks up the filling coefficient on F weighted by the
    step sign and by the incidence of F in the oriented boundary of tau.
    That weight makes the pairing vanish on boundary fillings, so the
    result is independent of the filling choice exactly when y2 pairs
    trivially with H2; this is checked up front.
    """
    validate_dual_curve(y2, c)
    for w in h2_basis(c):
        if _pair_curve_chain(y2, w, c):
            raise AmbiguousLinking(
                "curve pairs nontrivially with H2; linking depends on the filling"
            )
    z = fill_cycle_any(y1, c)
    return _pair_curve_chain(y2, z, c)


def _push_forward(f: SimplicialMap, z: Chain, t: int) -> Fraction:
    """Degree-style pairing of a source 2-chain with target triangle t."""
    sgn_t = f.target.triangle_signs[t]
    total = Fraction(0)
    for i, parity in f._bijective_triangles.get(t, ()):
        v = z.coeffs.get(i)
        if v:
            total += v * parity * sgn_t
    return total


def hopf_invariant(f: SimplicialMap) -> int:
    """Hopf invariant: fill the fiber over one triangle and push the
    filling forward over another.

    The answer is recomputed with a different deformation vertex rule
    and with the two triangles swapped; any disagreement (beyond the
    sign under swapping) raises instead of returning.
    """
    require_valid(f)
    src = f.source
    src.require_closed_oriented()
    f.target.require_closed_oriented()
    if any(pullback_pairings(f)):
        raise HopfUndefined("pulled-back area class is nonzero on H2 of the source")
    occupied = sorted(f._fiber_segments)
    if len(occupied) < 2:
        return 0
    t1, t2 = occupied[0], occupied[1]

    def evaluate(ta: int, tb: int, rule) -> Fraction:
        y = deform_to_skeleton(fiber(f, ta).curve, src, vertex_choice=rule)
        z = fill_cycle_any(y, src)
        return _push_forward(f, z, tb)

    hopf = evaluate(t1, t2, None)
    alt = evaluate(t1, t2, max)
    if alt != hopf:
        raise InconsistencyDetected(
            f"vertex-rule variation changed the Hopf number: {hopf} vs {alt}"
        )
    swapped = evaluate(t2, t1, None)
    if abs(swapped) != abs(hopf):
        raise InconsistencyDetected(
            f"triangle swap changed the Hopf number: {hopf} vs {swapped}"
        )
    if hopf.denominator != 1:
        raise IntegralityViolation(f"Hopf number {hopf} is not an integer")
    return int(hopf)


# ---------------------------------------------------------------------------
# serialization


def map_to_json_dict(f: SimplicialMap, embed_target: bool = False) -> dict:
    out = {"format": FORMAT_MAP, "vertex_map": list(f.vertex_map)}
    if embed_target:
        out["target"] = f.target.to_json_dict()
    return out


def map_from_json_dict(data: dict, source: Complex3, target=None) -> SimplicialMap:
    if data.get("format") != FORMAT_MAP:
        raise InvalidParams(f"unknown map format {data.get('format')!r}")
    if target is None:
        if "target" not in data:
            raise InvalidParams("no target complex given or embedded")
        target = Complex3.from_json_dict(data["target"])
    return SimplicialMap(source, target, data["vertex_map"])
