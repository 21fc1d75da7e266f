"""Reference complexes and maps: spheres, products, a lattice torus,
a genus-2 surface with a collared collapse, and the two-solid-tori
Hopf map fixture.

Everything is generated from short combinatorial recipes, so repeated
calls give identical complexes, vertex numbering included.  Nothing
here depends on the layer machinery; these are the independent objects
the builders are checked against.
"""

from itertools import combinations

from .complexes import Chain, Complex3, coherent_signs
from .filling import DualCurve
from .maps import SimplicialMap

__all__ = [
    "single_tetrahedron",
    "triangle_sphere",
    "boundary_4_simplex",
    "join_sphere",
    "join_hopf_cycles",
    "grid_torus",
    "circle_product",
    "sphere_circle_product",
    "sphere_circle_projection",
    "suspension_sphere",
    "hopf_fixture",
    "icosahedron_triangles",
    "pants_triangles",
    "genus_two_target",
    "collared_double_torus",
    "COLLAPSE_CENTER",
]


def single_tetrahedron() -> Complex3:
    return Complex3(tetrahedra=((0, 1, 2, 3),))


def triangle_sphere() -> Complex3:
    """Boundary of the 3-simplex as an oriented 2-complex."""
    tris = tuple(combinations(range(4), 3))
    return Complex3(triangles=tris, triangle_signs=coherent_signs(tris))


def boundary_4_simplex() -> Complex3:
    """The five facets of the 4-simplex with alternating signs: S^3."""
    tets = tuple(combinations(range(5), 4))
    return Complex3(tetrahedra=tets, signs=tuple((-1) ** k for k in range(5)))


def join_sphere() -> Complex3:
    """Join of two triangle circles: a 9-tetrahedron S^3.

    Vertices 0-2 run around the A-circle, 3-5 around the B-circle;
    each tetrahedron joins an edge of one circle to an edge of the
    other.  The two circles form the minimal simplicial Hopf link.
    """
    tets = []
    for i in range(3):
        for j in range(3):
            tets.append(tuple(sorted((i, (i + 1) % 3, 3 + j, 3 + (j + 1) % 3))))
    return Complex3(tetrahedra=tets, signs=coherent_signs(tets))


def join_hopf_cycles(c: Complex3):
    """(A-circle 1-chain, B-core dual curve) inside the join sphere."""
    ei, ti, fi = c.edge_index, c.tet_index, c.triangle_index
    y1 = Chain(1, {ei[(0, 1)]: 1, ei[(1, 2)]: 1, ei[(0, 2)]: -1})
    steps = []
    for j in range(3):
        tet = ti[tuple(sorted((0, 1, 3 + j, 3 + (j + 1) % 3)))]
        steps.append((tet,
                      fi[tuple(sorted((0, 1, 3 + j)))],
                      fi[tuple(sorted((0, 1, 3 + (j + 1) % 3)))],
                      1))
    return y1, DualCurve([steps])


def _torus_triangles(v):
    # uniform 3x3 lattice torus, cells cut along the (1,1) diagonal
    tris = []
    for x in range(3):
        for y in range(3):
            tris.append((v(x, y), v(x + 1, y), v(x + 1, y + 1)))
            tris.append((v(x, y), v(x + 1, y + 1), v(x, y + 1)))
    return tris


def grid_torus() -> Complex3:
    """9-vertex lattice torus; vertex (x, y) is 3x + y."""
    tris = [tuple(sorted(t))
            for t in _torus_triangles(lambda x, y: 3 * (x % 3) + y % 3)]
    return Complex3(triangles=tris, triangle_signs=coherent_signs(tris))


def circle_product(base: Complex3, levels: int) -> Complex3:
    """Product of a closed surface with a `levels`-step circle.

    Staircase prisms: each surface triangle times each circle edge
    contributes three tetrahedra.  levels >= 3 keeps it simplicial.
    """
    n = base.vertex_count
    tets = []
    for tri in base.triangles:
        v0, v1, v2 = tri
        for l in range(levels):
            b, t = l, (l + 1) % levels
            tets.append((v0 + n * b, v1 + n * b, v2 + n * b, v2 + n * t))
            tets.append((v0 + n * b, v1 + n * b, v1 + n * t, v2 + n * t))
            tets.append((v0 + n * b, v0 + n * t, v1 + n * t, v2 + n * t))
    return Complex3(tetrahedra=tets, signs=coherent_signs(tets))


def sphere_circle_product() -> Complex3:
    """S^2 x S^1 over the triangle sphere, 36 tetrahedra."""
    return circle_product(triangle_sphere(), 3)


def sphere_circle_projection() -> SimplicialMap:
    """Factor projection S^2 x S^1 -> S^2; its fiber class is the
    circle factor, which pairs nontrivially with H2."""
    return SimplicialMap(sphere_circle_product(), triangle_sphere(),
                         [v % 4 for v in range(12)])


def suspension_sphere() -> Complex3:
    """S^2 as the suspension of a triangle: equator 0-2, poles 3 and 4."""
    tris = []
    for i in range(3):
        tris.append(tuple(sorted((3, i, (i + 1) % 3))))
        tris.append(tuple(sorted((4, i, (i + 1) % 3))))
    return Complex3(triangles=tris, triangle_signs=coherent_signs(tris))


def hopf_fixture() -> SimplicialMap:
    """Simplicial Hopf map from a genus-1 Heegaard S^3 onto the
    suspension sphere.

    The source glues two solid tori along the 3x3 lattice torus: the
    first cones each row circle from a center o(l), the second cones
    each column circle from a center op(k), 54 tetrahedra in all.
    Grid vertex (k, l) maps to equator point (k - l) mod 3, the row
    centers to one pole and the column centers to the other, so the
    fiber over every target triangle is a (1,1)-curve pushed into one
    of the handlebodies.  Fibers over two distinct triangles are
    Hopf-linked once.
    """
    def v(k, l):
        return 3 * (k % 3) + (l % 3)

    def o(l):
        return 9 + (l % 3)

    def op(k):
        return 12 + (k % 3)

    tets = []
    for i in range(3):
        for j in range(3):
            tets.append((o(j), v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            tets.append((o(j), v(i, j), v(i, j + 1), v(i + 1, j + 1)))
            tets.append((o(j), o(j + 1), v(i, j + 1), v(i + 1, j + 1)))
            tets.append((op(j), v(j, i), v(j, i + 1), v(j + 1, i + 1)))
            tets.append((op(j), v(j, i), v(j + 1, i), v(j + 1, i + 1)))
            tets.append((op(j), op(j + 1), v(j + 1, i), v(j + 1, i + 1)))
    tets = [tuple(sorted(t)) for t in tets]
    src = Complex3(tetrahedra=tets, signs=coherent_signs(tets))

    vm = [0] * 15
    for k in range(3):
        for l in range(3):
            vm[v(k, l)] = (k - l) % 3
    for l in range(3):
        vm[o(l)] = 3
    for k in range(3):
        vm[op(k)] = 4
    return SimplicialMap(src, suspension_sphere(), vm)


# ---------------------------------------------------------------------------
# pair of pants


def icosahedron_triangles():
    """The 20 faces: apex 0, upper ring 1-5, lower ring 6-10, apex 11."""
    tris = []
    for k in range(5):
        u, u1 = 1 + k, 1 + (k + 1) % 5
        l, l1 = 6 + k, 6 + (k + 1) % 5
        tris.append((0, u, u1))
        tris.append((u, u1, l))
        tris.append((u1, l, l1))
        tris.append((11, l, l1))
    return [tuple(sorted(t)) for t in tris]


_PANTS_CUFFS = ((0, 1, 2), (6, 10, 11), (3, 4, 8))


def pants_triangles():
    """Icosahedron minus three pairwise disjoint faces: a pair of pants
    with 12 vertices and 17 triangles.

    Returns (triangles, c1, c2, c3); each c is a removed face's vertex
    cycle in ascending order, so drawn as a 3-column wall its split
    diagonals ascend in the first two columns and descend in the third.
    """
    removed = {tuple(sorted(c)) for c in _PANTS_CUFFS}
    tris = [t for t in icosahedron_triangles() if t not in removed]
    return tris, _PANTS_CUFFS[0], _PANTS_CUFFS[1], _PANTS_CUFFS[2]


# ---------------------------------------------------------------------------
# the genus-2 target and its collared collapse

COLLAPSE_CENTER = 15

_RING = (5, 6, 8)          # link cycle of the collapse center
_PRIMES = (15, 16, 17)     # collar boundary, over the ring in order


def _double_torus_triangles():
    def va(x, y):
        return 3 * (x % 3) + (y % 3)

    # second torus relabeled; the glue triangle lands on (0, 4, 3) so
    # the identified boundary cycles run oppositely and the double
    # stays orientable
    relabel = {0: 0, 3: 4, 4: 3}
    fresh = 9
    for w in range(9):
        if w not in relabel:
            relabel[w] = fresh
            fresh += 1

    def vb(x, y):
        return relabel[va(x, y)]

    glue = (0, 3, 4)
    tris = []
    for v in (va, vb):
        for t in _torus_triangles(v):
            key = tuple(sorted(t))
            if key != glue:
                tris.append(key)
    return tris


def genus_two_target() -> Complex3:
    """The fixed closed genus-2 surface: two lattice tori, one face
    removed from each, glued along the exposed triangle, with one far
    face stellarly subdivided at COLLAPSE_CENTER.

    The subdivided face (5, 6, 8) shares no vertex with the glue
    triangle, so the center's star is an embedded disk.
    """
    tris = [t for t in _double_torus_triangles() if t != tuple(sorted(_RING))]
    for k in range(3):
        e = (_RING[k], _RING[(k + 1) % 3])
        tris.append(tuple(sorted((min(e), max(e), COLLAPSE_CENTER))))
    return Complex3(triangles=tris, triangle_signs=coherent_signs(tris))


def collared_double_torus():
    """The target with the collapse center's star replaced by a collar
    annulus: (vertex_count, triangles, boundary_cycle, collapse).

    collapse maps the collar boundary to COLLAPSE_CENTER and is the
    identity elsewhere; it hits every face of the closed target
    nondegenerately exactly once, which is what makes the prism blocks
    built over this surface project onto the target with degree one.
    """
    tris = [t for t in _double_torus_triangles() if t != tuple(sorted(_RING))]
    for k in range(3):
        r0, r1 = _RING[k], _RING[(k + 1) % 3]
        p0, p1 = _PRIMES[k], _PRIMES[(k + 1) % 3]
        tris.append(tuple(sorted((r0, r1, p1))))
        tris.append(tuple(sorted((r0, p1, p0))))
    collapse = tuple(list(range(15)) + [COLLAPSE_CENTER] * 3)
    return 18, tris, _PRIMES, collapse
