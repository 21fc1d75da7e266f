"""Exact minimum-l1 solving over the rationals.

Dense two-phase simplex with Bland's rule, Fraction arithmetic
throughout.  Deliberately small and simple: the filling solver keeps
the instances tiny by restricting to a region of the complex, so there
is no need for a sparse or revised implementation here.  The companion
box-dual solver starts from the origin, which is always feasible for
its constraint system, so it runs in a single phase.
"""

from __future__ import annotations

from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Infeasible(Exception):
    """The restricted system has no solution at all."""


class Unbounded(Exception):
    """Internal; cannot happen for the l1 objective."""


def _pivot(T, cost, basis, row, col):
    pr = T[row]
    inv = _ONE / pr[col]
    if inv != 1:
        T[row] = pr = [v * inv for v in pr]
    for r in T:
        if r is pr:
            continue
        f = r[col]
        if f:
            for k, v in enumerate(pr):
                if v:
                    r[k] -= f * v
    f = cost[col]
    if f:
        for k, v in enumerate(pr):
            if v:
                cost[k] -= f * v
    basis[row] = col


def _optimize(T, cost, basis, m, max_enter):
    """Bland's rule: smallest eligible entering column, smallest basis
    index among tied leaving rows.  Terminates without anticycling
    machinery."""
    while True:
        enter = None
        for j in range(max_enter):
            if cost[j] < 0:
                enter = j
                break
        if enter is None:
            return
        leave = None
        best = None
        for i in range(m):
            piv = T[i][enter]
            if piv > 0:
                ratio = T[i][-1] / piv
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave is None:
            raise Unbounded("objective unbounded below")
        _pivot(T, cost, basis, leave, enter)


def _two_phase(A, b, c):
    """min c.x st A x = b (b >= 0), x >= 0.  Returns (x, duals, objective)."""
    m = len(A)
    n = len(c)
    T = [A[i][:] + [_ZERO] * m + [b[i]] for i in range(m)]
    for i in range(m):
        T[i][n + i] = _ONE
    basis = [n + i for i in range(m)]
    width = n + m + 1
    cost = [_ZERO] * width
    for j in range(width):
        s = _ZERO
        for i in range(m):
            s -= T[i][j]
        cost[j] = s
    for i in range(m):
        cost[n + i] = _ZERO
    _optimize(T, cost, basis, m, n + m)
    if cost[-1] != 0:
        raise Infeasible("phase 1 objective positive")
    # drive leftover artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            for j in range(n):
                if T[i][j]:
                    _pivot(T, cost, basis, i, j)
                    break
    cost = [_ZERO] * width
    for j in range(width):
        s = c[j] if j < n else _ZERO
        for i in range(m):
            cb = c[basis[i]] if basis[i] < n else _ZERO
            if cb:
                s -= cb * T[i][j]
        cost[j] = s
    _optimize(T, cost, basis, m, n)
    x = [_ZERO] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][-1]
    duals = [-cost[n + i] for i in range(m)]
    return x, duals, -cost[-1]


def solve_min_l1(columns, rhs):
    """Minimize sum_j |d_j| subject to sum_j d_j * columns[j] = rhs.

    ``columns`` are sparse {row: value} dicts, ``rhs`` likewise.
    Returns (d, objective, dual) where d maps column index to a nonzero
    Fraction and dual maps row index to a Fraction p_r satisfying
    |p . column_j| <= 1 for every given column and p . rhs = objective.
    Raises Infeasible when no combination hits rhs.
    """
    row_set = set(rhs)
    for col in columns:
        row_set.update(col)
    rows = sorted(row_set)
    m = len(rows)
    nc = len(columns)
    if m == 0:
        return {}, _ZERO, {}
    row_pos = {r: i for i, r in enumerate(rows)}
    n = 2 * nc
    A = [[_ZERO] * n for _ in range(m)]
    for j, col in enumerate(columns):
        for r, v in col.items():
            v = Fraction(v)
            A[row_pos[r]][j] = v
            A[row_pos[r]][j + nc] = -v
    b = [Fraction(rhs.get(r, 0)) for r in rows]
    flip = [_ONE] * m
    for i in range(m):
        if b[i] < 0:
            b[i] = -b[i]
            flip[i] = -_ONE
            A[i] = [-v for v in A[i]]
    x, raw_duals, obj = _two_phase(A, b, [_ONE] * n)
    d = {}
    for j in range(nc):
        v = x[j] - x[j + nc]
        if v:
            d[j] = v
    dual = {}
    for i, r in enumerate(rows):
        v = flip[i] * raw_duals[i]
        if v:
            dual[r] = v
    return d, obj, dual


def solve_box_dual(constraints, weights):
    """Maximize weights . p subject to |constraints_i . p| <= 1 for all i.

    ``constraints`` are sparse {var: coeff} dicts over variables
    0..len(weights)-1.  The origin is feasible, so the slack basis
    starts the simplex directly.  Returns (p, value) with p a dense
    list of Fractions.  Every weighted variable must appear in some
    constraint; that keeps the objective bounded.
    """
    m = len(constraints)
    n = len(weights)
    width = 2 * n + 2 * m + 1
    T = []
    for sgn in (_ONE, -_ONE):
        for i, con in enumerate(constraints):
            row = [_ZERO] * width
            for e, v in con.items():
                v = sgn * Fraction(v)
                row[e] = v
                row[e + n] = -v
            row[2 * n + (i if sgn == 1 else m + i)] = _ONE
            row[-1] = _ONE
            T.append(row)
    basis = list(range(2 * n, 2 * n + 2 * m))
    cost = [_ZERO] * width
    for e, w in enumerate(weights):
        w = Fraction(w)
        if w:
            cost[e] = -w
            cost[e + n] = w
    _optimize(T, cost, basis, 2 * m, 2 * n + 2 * m)
    p = [_ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            p[b] += T[i][-1]
        elif b < 2 * n:
            p[b - n] -= T[i][-1]
    # cost[-1] carries the negated reduced objective; minimizing -w.p
    # leaves the maximum of w.p there directly
    return p, cost[-1]
