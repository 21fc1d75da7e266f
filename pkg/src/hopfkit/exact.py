"""Exact linear algebra over the integers and rationals.

Three tools, each matched to a different workload:

* ``smith_normal_form``: dense, with unimodular transforms, for small
  matrices where the change of basis itself matters.
* ``invariant_factors``: sparse elimination without transforms, for
  boundary matrices of larger complexes where only the diagonal is
  needed.
* ``ColumnReduction``: left-to-right column reduction over the
  rationals with a deterministic pivot rule, reused for rank, kernels,
  and solving against a fixed matrix many times.

No floating point anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


# ---------------------------------------------------------------------------
# dense Smith normal form with transforms
#
# Row/column operations are applied to the working matrix while U and V
# accumulate the INVERSE operations, so that the original matrix
# factors as U * S * V at every moment.


def _swap_rows(A, U, i, j):
    if i != j:
        A[i], A[j] = A[j], A[i]
        for row in U:
            row[i], row[j] = row[j], row[i]


def _swap_cols(A, V, i, j):
    if i != j:
        for row in A:
            row[i], row[j] = row[j], row[i]
        V[i], V[j] = V[j], V[i]


def _add_row(A, U, dst, src, c):
    # working row_dst += c * row_src; U column_src -= c * column_dst
    ra, rs = A[dst], A[src]
    for k in range(len(ra)):
        ra[k] += c * rs[k]
    for row in U:
        row[src] -= c * row[dst]


def _add_col(A, V, dst, src, c):
    # working col_dst += c * col_src; V row_src -= c * row_dst
    for row in A:
        row[dst] += c * row[src]
    rv, rd = V[src], V[dst]
    for k in range(len(rv)):
        rv[k] -= c * rd[k]


def smith_normal_form(matrix):
    """Return (U, S, V) with matrix = U * S * V.

    U and V are unimodular, S is diagonal with S[0][0] | S[1][1] | ...
    and nonnegative diagonal entries.  Input is a list of rows of ints.
    """
    A = [[int(v) for v in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    for row in A:
        if len(row) != n:
            raise ValueError("ragged matrix")
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        _swap_rows(A, U, t, best[0])
        _swap_cols(A, V, t, best[1])
        while True:
            # clear below and to the right of the pivot; a nonzero
            # remainder becomes the new (smaller) pivot
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, m):
                    if A[i][t]:
                        q = A[i][t] // A[t][t]
                        if q:
                            _add_row(A, U, i, t, -q)
                        if A[i][t]:
                            _swap_rows(A, U, t, i)
                            dirty = True
                for j in range(t + 1, n):
                    if A[t][j]:
                        q = A[t][j] // A[t][t]
                        if q:
                            _add_col(A, V, j, t, -q)
                        if A[t][j]:
                            _swap_cols(A, V, t, j)
                            dirty = True
            # divisibility: pivot must divide every remaining entry
            p = A[t][t]
            fix = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        fix = i
                        break
                if fix is not None:
                    break
            if fix is None:
                break
            _add_row(A, U, t, fix, 1)
        if A[t][t] < 0:
            for k in range(n):
                A[t][k] = -A[t][k]
            for row in U:
                row[t] = -row[t]
        t += 1
    return U, A, V


# ---------------------------------------------------------------------------
# sparse invariant factors, no transforms


def _sp_set(rows, cols, i, j, v):
    if v:
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, {})[i] = v
    else:
        r = rows.get(i)
        if r and j in r:
            del r[j]
            if not r:
                del rows[i]
        c = cols.get(j)
        if c and i in c:
            del c[i]
            if not c:
                del cols[j]


def _sp_row_add(rows, cols, dst, src, c):
    for j, v in list(rows.get(src, {}).items()):
        _sp_set(rows, cols, dst, j, rows.get(dst, {}).get(j, 0) + c * v)


def _sp_col_add(rows, cols, dst, src, c):
    for i, v in list(cols.get(src, {}).items()):
        _sp_set(rows, cols, i, dst, rows.get(i, {}).get(dst, 0) + c * v)


def invariant_factors(columns):
    """Invariant factors of an integer matrix given as sparse columns.

    ``columns`` is a sequence of {row: value} dicts.  Returns the
    positive invariant factors in divisibility order, ones included.
    Pivoting prefers units and low fill-in; no transform matrices are
    kept, which is what makes this usable on complexes with a few
    thousand simplices.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, dict[int, int]] = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            v = int(v)
            if v:
                rows.setdefault(i, {})[j] = v
                cols.setdefault(j, {})[i] = v
    factors = []
    while rows:
        best_key = None
        best = None
        for i, r in rows.items():
            ln_r = len(r)
            for j, v in r.items():
                key = (abs(v) != 1, abs(v), (ln_r - 1) * (len(cols[j]) - 1), i, j)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (i, j)
        pi, pj = best
        while True:
            p = rows[pi][pj]
            col_others = [i for i in cols[pj] if i != pi]
            if col_others:
                i = col_others[0]
                q = rows[i][pj] // p
                if q:
                    _sp_row_add(rows, cols, i, pi, -q)
                if i in cols.get(pj, {}):
                    pi = i
                continue
            row_others = [j for j in rows[pi] if j != pj]
            if row_others:
                j = row_others[0]
                q = rows[pi][j] // p
                if q:
                    _sp_col_add(rows, cols, j, pj, -q)
                if j in rows.get(pi, {}):
                    pj = j
                continue
            break
        factors.append(abs(rows[pi][pj]))
        _sp_set(rows, cols, pi, pj, 0)
    # gcd/lcm fixup: diag(a, b) is equivalent to diag(gcd, lcm)
    changed = True
    while changed:
        changed = False
        factors.sort()
        for a in range(len(factors)):
            for b in range(a + 1, len(factors)):
                x, y = factors[a], factors[b]
                if y % x:
                    g = gcd(x, y)
                    factors[a] = g
                    factors[b] = x // g * y
                    changed = True
    return factors


# ---------------------------------------------------------------------------
# rational column reduction


def _axpy(dst: dict, src: dict, c: Fraction) -> None:
    for k, v in src.items():
        nv = dst.get(k, 0) + c * v
        if nv:
            dst[k] = nv
        else:
            dst.pop(k, None)


class ColumnReduction:
    """Reduce sparse columns over Q, left to right, pivot = largest row.

    Columns are processed in index order and each is reduced against the
    pivots fixed by earlier columns, so the result is deterministic: the
    set of pivot columns, the kernel basis, and every ``solve`` answer
    depend only on the input order.
    """

    def __init__(self, columns):
        self._R: list[dict[int, Fraction]] = []
        self._V: list[dict[int, Fraction]] = []
        self._pivot_col_of_row: dict[int, int] = {}
        for j, col in enumerate(columns):
            r = {i: Fraction(v) for i, v in col.items() if v}
            v = {j: Fraction(1)}
            while r:
                low = max(r)
                k = self._pivot_col_of_row.get(low)
                if k is None:
                    break
                c = r[low] / self._R[k][low]
                _axpy(r, self._R[k], -c)
                _axpy(v, self._V[k], -c)
            self._R.append(r)
            self._V.append(v)
            if r:
                self._pivot_col_of_row[max(r)] = j

    @property
    def rank(self) -> int:
        return len(self._pivot_col_of_row)

    @property
    def ncols(self) -> int:
        return len(self._R)

    def pivot_columns(self) -> list[int]:
        return sorted(self._pivot_col_of_row.values())

    def kernel_basis(self) -> list[dict[int, Fraction]]:
        return [dict(self._V[j]) for j in range(len(self._R)) if not self._R[j]]

    def residual(self, y: dict) -> dict[int, Fraction]:
        """Reduce y against the pivots; empty dict iff y is in the column space."""
        r = {i: Fraction(v) for i, v in y.items() if v}
        while r:
            low = max(r)
            k = self._pivot_col_of_row.get(low)
            if k is None:
                break
            c = r[low] / self._R[k][low]
            _axpy(r, self._R[k], -c)
        return r

    def solve(self, y: dict):
        """Return x (dict col -> Fraction) with A x = y, or None."""
        r = {i: Fraction(v) for i, v in y.items() if v}
        combo: dict[int, Fraction] = {}
        while r:
            low = max(r)
            k = self._pivot_col_of_row.get(low)
            if k is None:
                return None
            c = r[low] / self._R[k][low]
            _axpy(r, self._R[k], -c)
            _axpy(combo, self._V[k], c)
        return combo
