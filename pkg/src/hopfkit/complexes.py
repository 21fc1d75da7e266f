"""Oriented simplicial complexes of dimension at most three.

A complex is specified by its top-dimensional simplices: tetrahedra for
the 3-dimensional case, triangles for the 2-dimensional one (surface
targets of maps, tori used as counterexample fixtures).  All
lower-dimensional simplices and the boundary matrices are derived.
Instances are immutable; derived tables are cached.

Canonical form: every simplex is stored as its sorted vertex tuple, and
the stored orientation sign is the input sign times the parity of the
sorting permutation.  Simplex indices are positions in the
lexicographically sorted list, so all derived tables are reproducible
byte for byte.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property

from .errors import (
    BadDimension,
    DuplicateTetrahedron,
    InvalidParams,
    InvalidSimplex,
    NotClosedOriented,
)

FORMAT_COMPLEX = "hopfkit-complex-v1"


def sort_parity(seq) -> int:
    """Sign of the permutation sorting seq (entries must be distinct)."""
    seq = list(seq)
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def _canonical(simplex, sign, dim):
    verts = tuple(simplex)
    if len(verts) != dim + 1:
        raise InvalidSimplex(f"expected {dim + 1} vertices, got {verts!r}")
    for v in verts:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise InvalidSimplex(f"bad vertex id {v!r} in {verts!r}")
    if len(set(verts)) != dim + 1:
        raise InvalidSimplex(f"repeated vertex in {verts!r}")
    if sign not in (1, -1):
        raise InvalidParams(f"orientation sign must be +1 or -1, got {sign!r}")
    return tuple(sorted(verts)), sign * sort_parity(verts)


class Chain:
    """Formal rational combination of canonical simplices of one dimension.

    Zero coefficients are dropped on construction; ``norm_l1`` is the sum
    of absolute values of what remains.
    """

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs=None):
        self.dim = dim
        clean = {}
        for k, v in (coeffs or {}).items():
            v = Fraction(v)
            if v:
                clean[k] = v
        self.coeffs = clean

    @property
    def norm_l1(self) -> Fraction:
        return sum((abs(v) for v in self.coeffs.values()), Fraction(0))

    def l1_norm(self) -> Fraction:
        return self.norm_l1

    def __eq__(self, other):
        return (
            isinstance(other, Chain)
            and self.dim == other.dim
            and self.coeffs == other.coeffs
        )

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Chain(dim={self.dim}, {len(self.coeffs)} simplices)"


class Complex3:
    """Oriented simplicial complex given by top tetrahedra or triangles.

    Vertices are 0..vertex_count-1; when vertex_count is omitted it is
    one more than the largest vertex id mentioned.
    """

    def __init__(
        self,
        tetrahedra=(),
        signs=None,
        triangles=(),
        triangle_signs=None,
        vertex_count=None,
    ):
        tetrahedra = list(tetrahedra)
        triangles = list(triangles)
        if tetrahedra and triangles:
            raise InvalidParams("give top tetrahedra or top triangles, not both")
        if signs is None:
            signs = [1] * len(tetrahedra)
        if triangle_signs is None:
            triangle_signs = [1] * len(triangles)
        if len(signs) != len(tetrahedra):
            raise InvalidParams("signs length does not match tetrahedra")
        if len(triangle_signs) != len(triangles):
            raise InvalidParams("triangle_signs length does not match triangles")

        if tetrahedra:
            canon = {}
            for simp, sgn in zip(tetrahedra, signs):
                key, s = _canonical(simp, sgn, 3)
                if key in canon:
                    raise DuplicateTetrahedron(f"tetrahedron {key} given twice")
                canon[key] = s
            self.tets = tuple(sorted(canon))
            self.tet_signs = tuple(canon[t] for t in self.tets)
            self._top_triangles = None
        else:
            self.tets = ()
            self.tet_signs = ()
            if triangles:
                canon = {}
                for simp, sgn in zip(triangles, triangle_signs):
                    key, s = _canonical(simp, sgn, 2)
                    if key in canon:
                        raise DuplicateTetrahedron(f"triangle {key} given twice")
                    canon[key] = s
                self._top_triangles = {t: canon[t] for t in sorted(canon)}
            else:
                self._top_triangles = None

        top = max((v for s in (self.tets or self.triangles) for v in s), default=-1)
        if vertex_count is None:
            vertex_count = top + 1
        elif top >= vertex_count:
            raise InvalidSimplex(
                f"vertex id {top} out of range for vertex_count {vertex_count}"
            )
        self.vertex_count = vertex_count

    # -- derived simplices ------------------------------------------------

    @property
    def top_dim(self) -> int:
        if self.tets:
            return 3
        if self._top_triangles:
            return 2
        return 0

    @cached_property
    def triangles(self) -> tuple:
        if self._top_triangles is not None:
            return tuple(self._top_triangles)
        faces = set()
        for t in self.tets:
            faces.update(itertools.combinations(t, 3))
        return tuple(sorted(faces))

    @cached_property
    def triangle_signs(self):
        """Orientation signs of top triangles; None for a 3-complex."""
        if self._top_triangles is None:
            return None
        return tuple(self._top_triangles.values())

    @cached_property
    def edges(self) -> tuple:
        faces = set()
        for t in self.triangles:
            faces.update(itertools.combinations(t, 2))
        return tuple(sorted(faces))

    @cached_property
    def tet_index(self) -> dict:
        return {t: i for i, t in enumerate(self.tets)}

    @cached_property
    def triangle_index(self) -> dict:
        return {t: i for i, t in enumerate(self.triangles)}

    @cached_property
    def edge_index(self) -> dict:
        return {e: i for i, e in enumerate(self.edges)}

    @property
    def n_tets(self):
        return len(self.tets)

    @property
    def n_triangles(self):
        return len(self.triangles)

    @property
    def n_edges(self):
        return len(self.edges)

    @property
    def n_vertices(self):
        return self.vertex_count

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_triangles - self.n_tets

    # -- boundary matrices ------------------------------------------------
    # Stored as sparse columns {row_index: +-1}.  B3[tri][tet] is the
    # incidence of the canonical triangle in the boundary of the
    # canonical tetrahedron; the orientation signs of the complex are
    # kept separately and never folded in here.

    @cached_property
    def b3_columns(self) -> list:
        idx = self.triangle_index
        cols = []
        for t in self.tets:
            col = {}
            for k in range(4):
                face = t[:k] + t[k + 1:]
                col[idx[face]] = -1 if k % 2 else 1
            cols.append(col)
        return cols

    @cached_property
    def b2_columns(self) -> list:
        idx = self.edge_index
        cols = []
        for t in self.triangles:
            col = {}
            for k in range(3):
                face = t[:k] + t[k + 1:]
                col[idx[face]] = -1 if k % 2 else 1
            cols.append(col)
        return cols

    @cached_property
    def b1_columns(self) -> list:
        cols = []
        for a, b in self.edges:
            cols.append({b: 1, a: -1})
        return cols

    @cached_property
    def triangle_cofacets(self) -> list:
        """Per triangle index: list of (tet index, incidence sign)."""
        out = [[] for _ in self.triangles]
        for j, col in enumerate(self.b3_columns):
            for i, inc in col.items():
                out[i].append((j, inc))
        return out

    @cached_property
    def edge_cofacets(self) -> list:
        """Per edge index: list of (triangle index, incidence sign)."""
        out = [[] for _ in self.edges]
        for j, col in enumerate(self.b2_columns):
            for i, inc in col.items():
                out[i].append((j, inc))
        return out

    # -- operations -------------------------------------------------------

    def boundary_of(self, chain: Chain) -> Chain:
        if chain.dim == 3:
            cols = self.b3_columns
        elif chain.dim == 2:
            cols = self.b2_columns
        elif chain.dim == 1:
            cols = self.b1_columns
        else:
            raise BadDimension(f"no boundary operator for dimension {chain.dim}")
        out: dict = {}
        for j, c in chain.coeffs.items():
            for i, inc in cols[j].items():
                out[i] = out.get(i, 0) + c * inc
        return Chain(chain.dim - 1, out)

    def fundamental_class(self) -> Chain:
        if self.top_dim == 3:
            return Chain(3, {j: s for j, s in enumerate(self.tet_signs)})
        if self.top_dim == 2:
            return Chain(2, {j: s for j, s in enumerate(self.triangle_signs)})
        raise BadDimension("empty complex has no fundamental class")

    def closed_oriented_diagnostics(self) -> list:
        """Offending codim-1 faces, empty iff closed and coherently oriented."""
        if self.top_dim == 3:
            faces, cofacets, signs = (
                self.triangles,
                self.triangle_cofacets,
                self.tet_signs,
            )
        elif self.top_dim == 2:
            faces, cofacets, signs = self.edges, self.edge_cofacets, self.triangle_signs
        else:
            return ["complex has no top simplices"]
        problems = []
        for i, cf in enumerate(cofacets):
            if len(cf) != 2:
                problems.append(f"face {faces[i]} has {len(cf)} cofacets, expected 2")
            elif sum(signs[j] * inc for j, inc in cf) != 0:
                problems.append(f"orientations disagree across face {faces[i]}")
        return problems

    def is_closed_oriented(self) -> bool:
        return not self.closed_oriented_diagnostics()

    def require_closed_oriented(self) -> None:
        problems = self.closed_oriented_diagnostics()
        if problems:
            raise NotClosedOriented("; ".join(problems[:5]))

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        out = {"format": FORMAT_COMPLEX, "vertex_count": self.vertex_count}
        if self.top_dim == 2:
            out["tetrahedra"] = []
            out["triangles"] = [list(t) for t in self.triangles]
            out["triangle_signs"] = list(self.triangle_signs)
        else:
            out["tetrahedra"] = [list(t) for t in self.tets]
            out["signs"] = list(self.tet_signs)
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "Complex3":
        if not isinstance(data, dict):
            raise InvalidParams("complex document must be a JSON object")
        fmt = data.get("format")
        if fmt != FORMAT_COMPLEX:
            raise InvalidParams(f"unknown format {fmt!r}, expected {FORMAT_COMPLEX!r}")
        return cls(
            tetrahedra=[tuple(t) for t in data.get("tetrahedra", [])],
            signs=data.get("signs"),
            triangles=[tuple(t) for t in data.get("triangles", [])],
            triangle_signs=data.get("triangle_signs"),
            vertex_count=data.get("vertex_count"),
        )


def build_complex(vertex_count: int, tetrahedra, signs=None) -> Complex3:
    """Build a 3-complex from oriented tetrahedra.

    Each entry of ``tetrahedra`` is a 4-tuple of vertex indices, or a
    5-tuple whose last entry is the orientation sign; a separate
    ``signs`` list may be given instead (not both).
    """
    tets = []
    inline_signs = []
    has_inline = False
    for t in tetrahedra:
        t = tuple(t)
        if len(t) == 5:
            has_inline = True
            tets.append(t[:4])
            inline_signs.append(t[4])
        else:
            tets.append(t)
            inline_signs.append(1)
    if has_inline:
        if signs is not None:
            raise InvalidParams("signs given both inline and as a list")
        signs = inline_signs
    return Complex3(tetrahedra=tets, signs=signs, vertex_count=vertex_count)


def validate_closed_oriented(complex: Complex3):
    """(ok, diagnostics): ok iff every codim-1 face has exactly two
    cofacets whose sign-weighted incidences cancel."""
    problems = complex.closed_oriented_diagnostics()
    return (not problems, problems)


def boundary_matrix(complex: Complex3, k: int) -> list:
    """Boundary operator from dimension k as sparse columns {row: +-1}."""
    if k == 3:
        return [dict(c) for c in complex.b3_columns]
    if k == 2:
        return [dict(c) for c in complex.b2_columns]
    raise BadDimension(f"boundary_matrix defined for k in {{2, 3}}, got {k}")


def coherent_signs(simplices) -> list:
    """Orientation signs making the given top simplices coherent.

    Propagates across every face with exactly two cofacets (breadth
    first, one seed per connected component).  Raises NotClosedOriented
    on a conflict, i.e. when no coherent orientation exists.  The
    returned signs are relative to the vertex orders as given.
    """
    simplices = [tuple(s) for s in simplices]
    if not simplices:
        return []
    dim = len(simplices[0]) - 1
    canon = []
    parities = []
    for s in simplices:
        key, par = _canonical(s, 1, dim)
        canon.append(key)
        parities.append(par)
    cofacets: dict = {}
    for j, s in enumerate(canon):
        for k in range(dim + 1):
            face = s[:k] + s[k + 1:]
            inc = -1 if k % 2 else 1
            cofacets.setdefault(face, []).append((j, inc))
    signs = [0] * len(canon)
    for seed in range(len(canon)):
        if signs[seed]:
            continue
        signs[seed] = 1
        queue = [seed]
        while queue:
            j = queue.pop()
            for k in range(dim + 1):
                face = canon[j][:k] + canon[j][k + 1:]
                cf = cofacets[face]
                if len(cf) != 2:
                    continue
                (j1, i1), (j2, i2) = cf
                other, oinc, jinc = (j2, i2, i1) if j1 == j else (j1, i1, i2)
                want = -signs[j] * jinc * oinc
                if signs[other] == 0:
                    signs[other] = want
                    queue.append(other)
                elif signs[other] != want:
                    raise NotClosedOriented("no coherent orientation exists")
    return [s * p for s, p in zip(signs, parities)]
