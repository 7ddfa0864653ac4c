"""Exact linear algebra over Fraction / QuadExt / CycloNum entries.

Determinants use fraction-free (Bareiss) elimination when the scalar domain
supports exact division, falling back to cofactor expansion for ring-only
scalars (small matrices over roots of unity).  Kernels, ranks and inverses go
through exact reduced row echelon form.  Nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import QuadExt, is_zero_scalar


def zero_like(x):
    return x - x


def one_like(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(1)
    if isinstance(x, QuadExt):
        return QuadExt(1, 0, x.d)
    from .cyclotomic import CycloNum

    if isinstance(x, CycloNum):
        return CycloNum.from_rational(x.order, 1)
    raise TypeError(f"no multiplicative identity for {type(x).__name__}")


def identity_matrix(n: int, like=Fraction(1)):
    one = one_like(like)
    zero = zero_like(like)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(1, k)), a[i][0] * b[0][j])
             for j in range(m)] for i in range(n)]


def mat_vec(a, v):
    n, k = len(a), len(v)
    return [sum((a[i][t] * v[t] for t in range(1, k)), a[i][0] * v[0]) for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _supports_division(x) -> bool:
    return isinstance(x, (int, Fraction, QuadExt))


def det_bareiss(m):
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [list(row) for row in m]
    one = one_like(a[0][0])
    sign = 1
    prev = one
    for k in range(n - 1):
        if is_zero_scalar(a[k][k]):
            for i in range(k + 1, n):
                if not is_zero_scalar(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return zero_like(a[0][0])
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = zero_like(a[i][k])
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def det_cofactor(m):
    """Division-free determinant; intended for small ring-valued matrices."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def det(m):
    n = len(m)
    if n == 0:
        return Fraction(1)
    if _supports_division(m[0][0]):
        return det_bareiss(m)
    return det_cofactor(m)


def rref(m):
    """Exact reduced row echelon form; returns (rows, pivot_columns)."""
    a = [list(row) for row in m]
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if not is_zero_scalar(a[i][c]):
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and not is_zero_scalar(a[i][c]):
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m) -> int:
    return len(rref(m)[1])


def nullspace(m):
    """Exact basis of the right kernel, one vector per free column."""
    if not m:
        return []
    cols = len(m[0])
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    zero = zero_like(m[0][0])
    one = one_like(m[0][0])
    basis = []
    for fc in free:
        v = [zero] * cols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def kernel_vector(m):
    """One exact nonzero kernel vector, or None if the kernel is trivial.

    Deterministic: the first free column (lowest index) gets coefficient 1.
    """
    basis = nullspace(m)
    return basis[0] if basis else None


def solve(a, b):
    """Solve a x = b exactly; returns None when inconsistent (a need not be square)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [list(a[i]) + [b[i]] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    zero = zero_like(aug[0][0]) if rows else Fraction(0)
    x = [zero] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def inverse(m):
    n = len(m)
    aug = [list(m[i]) + list(identity_matrix(n, like=m[0][0])[i]) for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]
