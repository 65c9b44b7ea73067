"""Exact linear algebra over Q(k).

Elimination is fraction-free: rows are scaled to integer polynomial entries
and reduced by Bareiss' algorithm, so every intermediate entry is a minor of
the input and no rank decision depends on a numerical tolerance.
"""

from flint import fmpz_poly

from .kfield import ONE, ZERO, RatK, as_ratk

__all__ = [
    "ResourceBoundError",
    "check_size",
    "echelon_ff",
    "nullspace",
    "rank",
    "rref",
    "kernel",
    "matmul",
    "matvec",
    "identity",
    "mat_add_scalar",
    "mat_power",
    "transpose",
    "solve_in_columns",
    "lcm_den",
]


class ResourceBoundError(RuntimeError):
    """A computation would exceed the configured size bound."""


def check_size(cells: int, what: str = "matrix"):
    import os

    bound = os.environ.get("CMS_MAX_CELLS")
    if bound is not None and cells > int(bound):
        raise ResourceBoundError("%s with %d cells exceeds CMS_MAX_CELLS=%s" % (what, cells, bound))


_ONE_P = fmpz_poly([1])
_ZERO_P = fmpz_poly([])


def _lcm(a: fmpz_poly, b: fmpz_poly) -> fmpz_poly:
    if a.is_one():
        return b
    if b.is_one():
        return a
    return (a * b) / a.gcd(b)


def lcm_den(values) -> fmpz_poly:
    out = _ONE_P
    for v in values:
        if v and not v.den.is_one():
            out = _lcm(out, v.den)
    return out


def _int_row(row):
    """Scale a RatK row to integer polynomials (up to a unit)."""
    row = [as_ratk(x) for x in row]
    L = lcm_den(row)
    return [x.num * (L / x.den) if x else _ZERO_P for x in row]


def echelon_ff(rows, ncols=None):
    """Fraction-free row echelon form.

    Returns (E, pivots) where E is a list of integer-polynomial rows in echelon
    form and pivots[t] is the pivot column of E[t].
    """
    M = [_int_row(r) for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    check_size(len(M) * ncols, "elimination matrix")
    nrows = len(M)
    prev = _ONE_P
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        best = None
        for i in range(r, nrows):
            v = M[i][c]
            if not v.is_zero():
                if best is None or v.degree() < M[best][c].degree() or (
                        v.degree() == M[best][c].degree() and v.height_bits() < M[best][c].height_bits()):
                    best = i
                    if v.degree() == 0 and abs(int(v[0])) == 1:
                        break
        if best is None:
            continue
        M[r], M[best] = M[best], M[r]
        pr = M[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            row = M[i]
            a = row[c]
            if a.is_zero():
                if not prev.is_one():
                    for j in range(c + 1, ncols):
                        if not row[j].is_zero():
                            row[j] = (p * row[j]) / prev
                        # zero entries stay zero
                else:
                    for j in range(c + 1, ncols):
                        if not row[j].is_zero():
                            row[j] = p * row[j]
                continue
            for j in range(c + 1, ncols):
                x = row[j]
                y = pr[j]
                if x.is_zero():
                    if y.is_zero():
                        continue
                    v = -(a * y)
                elif y.is_zero():
                    v = p * x
                else:
                    v = p * x - a * y
                row[j] = v / prev if not prev.is_one() and not v.is_zero() else v
            row[c] = _ZERO_P
        prev = p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(rows, ncols=None) -> int:
    if not rows:
        return 0
    return len(echelon_ff(rows, ncols)[1])


def _back_solve(E, pivots, ncols, free_col):
    """Nullspace vector with x[free_col] = 1 and zero at the other free columns."""
    x = [ZERO] * ncols
    x[free_col] = ONE
    for t in range(len(E) - 1, -1, -1):
        p = pivots[t]
        if p > free_col:
            continue  # forced to zero
        row = E[t]
        acc = ZERO
        for c in range(p + 1, free_col + 1):
            if x[c] and not row[c].is_zero():
                acc = acc + RatK._raw(row[c], _ONE_P) * x[c]
        if acc:
            x[p] = -acc / RatK._raw(row[p], _ONE_P)
    return x


def nullspace(rows, ncols):
    """Basis of {x : rows . x = 0}.

    Returns (basis, free) where basis[t] has entry 1 at column free[t], entry 0
    at the other free columns, and is supported on columns <= free[t].
    """
    if not rows:
        return [[ONE if c == f else ZERO for c in range(ncols)] for f in range(ncols)], list(range(ncols))
    E, piv = echelon_ff(rows, ncols)
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    return [_back_solve(E, piv, ncols, f) for f in free], free


def rref(rows, ncols=None):
    """Reduced row echelon form over Q(k): (rows, pivots)."""
    if not rows:
        return [], []
    if ncols is None:
        ncols = len(rows[0])
    E, piv = echelon_ff(rows, ncols)
    R = []
    for t, row in enumerate(E):
        lead = RatK._raw(row[piv[t]], _ONE_P)
        R.append([RatK._raw(v, _ONE_P) / lead if not v.is_zero() else ZERO for v in row])
    for t in range(len(R) - 1, -1, -1):
        p = piv[t]
        for s in range(t):
            f = R[s][p]
            if f:
                R[s] = [a - f * b if b else a for a, b in zip(R[s], R[t])]
    return R, piv


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def kernel(A):
    """Basis (list of column vectors) of the kernel of the square/rect matrix A."""
    ncols = len(A[0]) if A else 0
    basis, _ = nullspace(A, ncols)
    return basis


def identity(d):
    return [[ONE if i == j else ZERO for j in range(d)] for i in range(d)]


def matmul(A, B):
    n = len(A)
    k = len(B)
    m = len(B[0]) if B else 0
    check_size(n * m, "matrix product")
    Bt = transpose(B)
    out = []
    for i in range(n):
        Ai = A[i]
        nz = [(t, Ai[t]) for t in range(k) if Ai[t]]
        row = []
        for j in range(m):
            col = Bt[j]
            acc = ZERO
            for t, a in nz:
                b = col[t]
                if b:
                    acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def matvec(A, v):
    out = []
    for row in A:
        acc = ZERO
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def mat_add_scalar(A, c):
    c = as_ratk(c)
    return [[(x + c) if i == j else x for j, x in enumerate(row)] for i, row in enumerate(A)]


def mat_power(A, e: int):
    if e == 0:
        return identity(len(A))
    result = None
    base = A
    while e:
        if e & 1:
            result = base if result is None else matmul(result, base)
        e >>= 1
        if e:
            base = matmul(base, base)
    return result


def solve_in_columns(cols, v):
    """Coefficients y with sum_t y_t cols[t] = v, or None if v is not in the span."""
    n = len(v)
    ncols = len(cols) + 1
    rows = [[cols[t][i] for t in range(len(cols))] + [v[i]] for i in range(n)]
    basis, free = nullspace(rows, ncols)
    # need a kernel vector with last coordinate nonzero; the last column is
    # free exactly when v lies in the span of independent columns
    for vec, f in zip(basis, free):
        if f == ncols - 1:
            return [-x for x in vec[:-1]]
    return None
