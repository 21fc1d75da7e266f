"""Incremental assembly of oriented 3-complexes from glued layers.

Builders here keep a face registry for a partially built complex so
that every gluing step is legality-checked the moment it happens: a
step that would triple a triangle, duplicate a tetrahedron, or
identify a fresh diagonal with a buried edge raises immediately
instead of surfacing as a mysterious closedness failure later.

Three layer primitives cover everything the family constructions
need: ordered prism products over a surface (interval and circle
versions), full diagonal-flip layers on a lattice torus (one flip
layer realizes one elementary shear of the uniform triangulation),
and the row/column coning pattern for solid-torus fillings.
"""

from itertools import combinations

from .complexes import Complex3, Chain, coherent_signs
from .errors import ConstructionFailure

__all__ = [
    "LayerBuilder",
    "TorusSheet",
    "prism_layer",
    "circle_layers",
    "flip_quad",
    "edge_cycle_chain",
    "build_row_filling",
    "build_column_filling",
    "row_core_curve",
]


class LayerBuilder:
    """Accumulates tetrahedra while tracking face multiplicities.

    Vertices come from the builder's own allocator so ids stay dense.
    A face may bound at most two tetrahedra; the exposed surface is
    the set of faces currently bounding exactly one.
    """

    def __init__(self):
        self._tets = []
        self._tet_set = set()
        self._face_count = {}
        self._edges = set()
        self._n_vertices = 0

    @property
    def n_vertices(self):
        return self._n_vertices

    @property
    def n_tets(self):
        return len(self._tets)

    def fresh(self, count):
        ids = list(range(self._n_vertices, self._n_vertices + count))
        self._n_vertices += count
        return ids

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self._edges

    def face_count(self, tri):
        return self._face_count.get(tuple(sorted(tri)), 0)

    def exposed_faces(self):
        return {f for f, k in self._face_count.items() if k == 1}

    def glue_tet(self, tet, new_edges=()):
        """Add one tetrahedron; new_edges must not exist yet anywhere."""
        if len(set(tet)) != 4:
            raise ConstructionFailure("degenerate tetrahedron %r" % (tet,))
        if any(v < 0 or v >= self._n_vertices for v in tet):
            raise ConstructionFailure("unallocated vertex in %r" % (tet,))
        key = tuple(sorted(tet))
        if key in self._tet_set:
            raise ConstructionFailure("duplicate tetrahedron %r" % (key,))
        faces = list(combinations(key, 3))
        for f in faces:
            if self._face_count.get(f, 0) >= 2:
                raise ConstructionFailure("face %r would gain a third cofacet" % (f,))
        for e in new_edges:
            ek = (min(e), max(e))
            if ek in self._edges:
                raise ConstructionFailure(
                    "edge %r already present; layer would identify it" % (ek,))
        self._tet_set.add(key)
        self._tets.append(key)
        for f in faces:
            self._face_count[f] = self._face_count.get(f, 0) + 1
        for e in combinations(key, 2):
            self._edges.add(e)

    def require_exposed(self, tris):
        for t in tris:
            if self.face_count(t) != 1:
                raise ConstructionFailure(
                    "expected %r on the exposed surface (cofacets=%d)"
                    % (tuple(sorted(t)), self.face_count(t)))

    def finish(self):
        """Orient coherently and return the closed complex."""
        leftover = self.exposed_faces()
        if leftover:
            raise ConstructionFailure(
                "%d faces remain exposed, e.g. %r"
                % (len(leftover), next(iter(leftover))))
        signs = coherent_signs(self._tets)
        c = Complex3(tetrahedra=self._tets, signs=signs,
                     vertex_count=self._n_vertices)
        c.require_closed_oriented()
        return c


def prism_layer(builder, triangles, lift):
    """Glue surface x [0,1] over `triangles`, bottom ids lifted by `lift`.

    The staircase diagonal over each quadrilateral wall runs from the
    smaller bottom id to the larger top id, so prisms over triangles
    sharing an edge agree on the wall split.
    """
    for tri in triangles:
        v0, v1, v2 = sorted(tri)
        builder.glue_tet((v0, v1, v2, lift[v2]))
        builder.glue_tet((v0, v1, lift[v1], lift[v2]))
        builder.glue_tet((v0, lift[v0], lift[v1], lift[v2]))


def circle_layers(builder, triangles, levels):
    """Glue surface x S^1 as len(levels) stacked prism layers.

    levels: cyclic list of dicts mapping base vertex to its copy at
    that level.  The diagonal rule is keyed on base vertex order, so
    it is consistent at the wraparound level too.
    """
    k = len(levels)
    if k < 3:
        raise ConstructionFailure("circle product needs at least 3 levels")
    for tri in triangles:
        v0, v1, v2 = sorted(tri)
        for l in range(k):
            bot, top = levels[l], levels[(l + 1) % k]
            builder.glue_tet((bot[v0], bot[v1], bot[v2], top[v2]))
            builder.glue_tet((bot[v0], bot[v1], top[v1], top[v2]))
            builder.glue_tet((bot[v0], top[v0], top[v1], top[v2]))


def flip_quad(builder, a, b, c, d):
    """Flip the diagonal of the exposed quadrilateral (a,b,c,d).

    Corners in cyclic order; the exposed split must use diagonal
    (a, c).  One tetrahedron replaces it with (b, d).
    """
    builder.require_exposed([(a, b, c), (a, c, d)])
    builder.glue_tet((a, b, c, d), new_edges=[(b, d)])


# ---------------------------------------------------------------------------
# Lattice torus sheets.
#
# The exposed boundary torus of a growing stack is kept as a uniform
# lattice triangulation: vertices indexed by (Z_m)^2 and a frame of two
# integer direction vectors (p, q) whose parallelogram cells are all cut
# by the p+q diagonal.  A full flip layer (one tetrahedron per cell)
# replaces one edge direction and is exactly an elementary shear of the
# frame; tracking the frame vectors exactly, not mod m, is what lets the
# family builders predict winding classes of curves drawn on the sheet.


def _canon_dir(v):
    if v[0] > 0 or (v[0] == 0 and v[1] > 0):
        return v
    return (-v[0], -v[1])


def direction_key(p, q):
    """Unordered direction set of the uniform triangulation with frame (p, q)."""
    s = (p[0] + q[0], p[1] + q[1])
    return frozenset((_canon_dir(p), _canon_dir(q), _canon_dir(s)))


def _add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def _sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


_MOVES = {
    "flip_d": lambda p, q: (q, _sub(p, q)),
    "flip_p": lambda p, q: (q, _add(p, q)),
    "flip_q": lambda p, q: (p, _add(p, q)),
}


def flip_path(p, q, target_key, max_depth=10):
    """Breadth-first flip sequence from frame (p, q) to a target direction set."""
    start = (p, q)
    if direction_key(p, q) == target_key:
        return []
    seen = {direction_key(p, q)}
    frontier = [(start, [])]
    for _ in range(max_depth):
        nxt = []
        for (fp, fq), path in frontier:
            for name, mv in _MOVES.items():
                np_, nq = mv(fp, fq)
                key = direction_key(np_, nq)
                if key in seen:
                    continue
                npath = path + [name]
                if key == target_key:
                    return npath
                seen.add(key)
                nxt.append(((np_, nq), npath))
        frontier = nxt
    raise ConstructionFailure("no flip sequence reaches the target frame")


class TorusSheet:
    """Exposed m x m lattice torus of a partial complex.

    vert maps lattice points (mod m) to vertex ids; (p, q) is the
    current frame.  Triangles are the p+q-diagonal cells of the frame.
    """

    def __init__(self, builder, m, vert, p, q):
        self.builder = builder
        self.m = m
        self.vert = dict(vert)
        self.p = p
        self.q = q

    def at(self, x, y):
        return self.vert[(x % self.m, y % self.m)]

    def shifted(self, base, v):
        return self.vert[((base[0] + v[0]) % self.m, (base[1] + v[1]) % self.m)]

    def lattice_points(self):
        return [(x, y) for x in range(self.m) for y in range(self.m)]

    def triangles(self):
        tris = []
        p, q = self.p, self.q
        d = _add(p, q)
        for w in self.lattice_points():
            a = self.shifted(w, (0, 0))
            b = self.shifted(w, p)
            c = self.shifted(w, d)
            e = self.shifted(w, q)
            tris.append((a, b, c))
            tris.append((a, c, e))
        return tris

    def check_exposed(self):
        self.builder.require_exposed(self.triangles())

    def directions(self):
        return direction_key(self.p, self.q)

    def reframe(self, p, q):
        """Adopt an equivalent frame; the triangle set must not change."""
        if direction_key(p, q) != self.directions():
            raise ConstructionFailure("reframe changes the triangulation")
        self.p, self.q = p, q

    def pad(self):
        """Insert a fresh prism layer; buried edges stop constraining flips."""
        tris = self.triangles()
        self.check_exposed()
        old_ids = sorted({v for t in tris for v in t})
        new_ids = self.builder.fresh(len(old_ids))
        lift = dict(zip(old_ids, new_ids))
        prism_layer(self.builder, tris, lift)
        self.vert = {w: lift[v] for w, v in self.vert.items()}

    def apply_flip(self, name):
        """Glue one full flip layer (m^2 tetrahedra) and shear the frame."""
        p, q = self.p, self.q
        if name == "flip_d":
            corners = ((0, 0), p, _add(p, q), q)
            diag = (p, q)
        elif name == "flip_p":
            corners = ((0, 0), q, _add(p, q), _add(p, (2 * q[0], 2 * q[1])))
            diag = ((0, 0), corners[3])
        elif name == "flip_q":
            corners = ((0, 0), p, _add(p, q), _add((2 * p[0], 2 * p[1]), q))
            diag = ((0, 0), corners[3])
        else:
            raise ConstructionFailure("unknown flip %r" % (name,))
        for w in self.lattice_points():
            vs = tuple(self.shifted(w, off) for off in corners)
            new_edge = (self.shifted(w, diag[0]), self.shifted(w, diag[1]))
            self.builder.glue_tet(vs, new_edges=[new_edge])
        self.p, self.q = _MOVES[name](p, q)
        self.check_exposed()

    def shear_to(self, target_key):
        """Pad-and-flip until the sheet reaches the target direction set."""
        for name in flip_path(self.p, self.q, target_key):
            self.pad()
            self.apply_flip(name)

    def direction_vector(self, target):
        """Return the frame direction equal to +-target, if present."""
        for v in (self.p, self.q, _add(self.p, self.q)):
            if v == target or v == (-target[0], -target[1]):
                return v
        raise ConstructionFailure("direction %r absent from sheet frame" % (target,))


def edge_cycle_chain(complex, vertices):
    """1-chain of the closed edge path visiting `vertices` in order."""
    coeffs = {}
    n = len(vertices)
    for k in range(n):
        u, w = vertices[k], vertices[(k + 1) % n]
        j = complex.edge_index[(min(u, w), max(u, w))]
        coeffs[j] = coeffs.get(j, 0) + (1 if u < w else -1)
    return Chain(1, {j: c for j, c in coeffs.items() if c})


# ---------------------------------------------------------------------------
# Solid-torus fillings of a lattice torus sheet.
#
# The row filling cones each horizontal circle {y = j} from a fresh
# center o_j and joins consecutive disks by prism fans, so the class of
# the rows, a = (1, 0), bounds a meridian disk and the core circle runs
# through the centers in the column direction.  The column filling is
# the transpose.  Both patterns assume the sheet is in the standard
# grid frame: directions (1,0), (0,1), (1,1).


_GRID_KEY = direction_key((1, 0), (0, 1))


def _require_grid(sheet):
    if sheet.directions() != _GRID_KEY:
        raise ConstructionFailure("filling needs the standard grid frame")
    if sheet.builder.n_tets:
        sheet.check_exposed()


def build_row_filling(sheet):
    """Fill so the (1,0) rows bound disks; returns the center vertex ids."""
    _require_grid(sheet)
    b = sheet.builder
    m = sheet.m
    o = b.fresh(m)
    for j in range(m):
        for i in range(m):
            b.glue_tet((o[j], sheet.at(i, j), sheet.at(i + 1, j), sheet.at(i + 1, j + 1)))
            b.glue_tet((o[j], sheet.at(i, j), sheet.at(i, j + 1), sheet.at(i + 1, j + 1)))
            b.glue_tet((o[j], o[(j + 1) % m], sheet.at(i, j + 1), sheet.at(i + 1, j + 1)))
    return o


def build_column_filling(sheet):
    """Transpose filling: the (0,1) columns bound disks."""
    _require_grid(sheet)
    b = sheet.builder
    m = sheet.m
    o = b.fresh(m)
    for j in range(m):
        for i in range(m):
            b.glue_tet((o[j], sheet.at(j, i), sheet.at(j, i + 1), sheet.at(j + 1, i + 1)))
            b.glue_tet((o[j], sheet.at(j, i), sheet.at(j + 1, i), sheet.at(j + 1, i + 1)))
            b.glue_tet((o[j], o[(j + 1) % m], sheet.at(j + 1, i), sheet.at(j + 1, i + 1)))
    return o


def row_core_curve(sheet, o):
    """Dual-curve core of the row filling, as a list of raw steps.

    Steps are (tet_vertices, entry_face, exit_face, sign) with vertex
    tuples; the caller resolves tetrahedron indices once the complex
    is finished.  The walk crosses each meridian disk once per level.
    """
    m = sheet.m
    steps = []
    i = 0
    for j in range(m):
        t1 = (o[j], sheet.at(i, j), sheet.at(i + 1, j), sheet.at(i + 1, j + 1))
        t2 = (o[j], sheet.at(i, j), sheet.at(i, j + 1), sheet.at(i + 1, j + 1))
        t3 = (o[j], o[(j + 1) % m], sheet.at(i, j + 1), sheet.at(i + 1, j + 1))
        f_in = (o[j], sheet.at(i, j), sheet.at(i + 1, j))
        f12 = (o[j], sheet.at(i, j), sheet.at(i + 1, j + 1))
        f23 = (o[j], sheet.at(i, j + 1), sheet.at(i + 1, j + 1))
        f_out = (o[(j + 1) % m], sheet.at(i, j + 1), sheet.at(i + 1, j + 1))
        steps.append((t1, f_in, f12, 1))
        steps.append((t2, f12, f23, 1))
        steps.append((t3, f23, f_out, 1))
    return steps
