"""Dense exact linear algebra over any exact field.

Works with any element type supporting +, -, *, / and truthiness (Fraction,
RationalFunction).  Pass `zero` and `one` when the field is not the rationals.
Matrices are lists of row lists; no input is mutated.
"""
from __future__ import annotations

from fractions import Fraction

_QZERO = Fraction(0)
_QONE = Fraction(1)


def rref(rows, *, zero=_QZERO):
    """Reduced row-echelon form.

    Returns (reduced_rows, pivot_columns) with zero rows dropped.  Over an
    exact field the result is canonical for the row space.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(m)):
            if m[i][c] != zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [e / pv for e in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != zero:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, *, zero=_QZERO) -> int:
    return len(rref(rows, zero=zero)[0])


def nullspace(rows, ncols: int, *, zero=_QZERO, one=_QONE):
    """Basis of the right nullspace, returned in reduced row-echelon form."""
    reduced, pivots = rref(rows, zero=zero)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, pc in enumerate(pivots):
            v[pc] = zero - reduced[i][f]
        basis.append(v)
    return rref(basis, zero=zero)[0]


def solve(rows, rhs, *, zero=_QZERO):
    """One exact solution of rows·x = rhs, or None when inconsistent.

    Free variables are set to zero, which makes the returned solution
    deterministic; it is the unique solution when the columns are independent.
    """
    if not rows:
        return None if any(e != zero for e in rhs) else []
    ncols = len(rows[0])
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, zero=zero)
    if ncols in pivots:
        return None
    x = [zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = reduced[i][ncols]
    return x


def invert(rows, *, zero=_QZERO, one=_QONE):
    """Matrix inverse by Gauss-Jordan; raises ValueError on singular input."""
    n = len(rows)
    augmented = []
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ValueError("matrix must be square")
        ident = [one if j == i else zero for j in range(n)]
        augmented.append(list(r) + ident)
    reduced, pivots = rref(augmented, zero=zero)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in reduced]


def in_row_space(rows, vector, *, zero=_QZERO) -> bool:
    reduced, _ = rref(rows, zero=zero)
    extended, _ = rref(reduced + [list(vector)], zero=zero)
    return len(extended) == len(reduced)


def identity(n, *, zero=_QZERO, one=_QONE):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a, b, *, zero=_QZERO):
    out = []
    for row in a:
        out_row = []
        for j in range(len(b[0])):
            s = zero
            for k, e in enumerate(row):
                if e != zero:
                    s = s + e * b[k][j]
            out_row.append(s)
        out.append(out_row)
    return out
