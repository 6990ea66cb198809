"""Exact integer and rational linear algebra on small dense matrices.

Matrices are tuples of tuples of Python ints (rows); vectors are tuples of
ints.  Everything is arbitrary precision: no floating point enters any
computation in this module.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple[int, ...]
Mat = tuple[tuple[int, ...], ...]


def freeze(rows) -> Mat:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Mat, v: Vec) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(v: Vec, c: int) -> Vec:
    return tuple(c * x for x in v)


def vec_content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def sign_normalize(v: Vec) -> Vec:
    """Pick the representative of {v, -v} whose first nonzero entry is positive."""
    for x in v:
        if x > 0:
            return v
        if x < 0:
            return tuple(-y for y in v)
    return v


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b), g >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def det(a: Mat) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(a) -> int:
    """Rank over the rationals (entries may be ints or Fractions)."""
    if not a:
        return 0
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def inertia(a) -> tuple[int, int, int]:
    """Signature (n_plus, n_minus, n_zero) of a symmetric matrix.

    Uses exact congruence diagonalization over the rationals; valid for
    singular inputs (the zero count is the rank deficit).
    """
    work = [[Fraction(x) for x in row] for row in a]
    pos = neg = zero = 0
    while work:
        n = len(work)
        k = next((i for i in range(n) if work[i][i] != 0), None)
        if k is None:
            pair = next(
                ((i, j) for i in range(n) for j in range(i + 1, n) if work[i][j] != 0),
                None,
            )
            if pair is None:
                zero += n
                break
            i, j = pair
            # All diagonal entries vanish, so e_i += e_j makes the new
            # (i,i) entry equal to twice the nonzero pairing.
            for t in range(n):
                work[i][t] += work[j][t]
            for t in range(n):
                work[t][i] += work[t][j]
            k = i
        d = work[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        nxt = []
        for i in range(n):
            if i == k:
                continue
            f = work[i][k] / d
            nxt.append(
                [work[i][j] - f * work[k][j] for j in range(n) if j != k]
            )
        work = nxt
    return pos, neg, zero


def _hnf_inplace(m: list[list[int]], u: list[list[int]] | None) -> int:
    """Row-reduce m to Hermite normal form in place; mirror row ops on u.

    Returns the rank.  Pivots are positive, entries above a pivot are
    reduced into [0, pivot).
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        # Clear column c below row r with gcd steps.
        while True:
            nz = [i for i in range(r, rows) if m[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(m[i][c]), i))
            if i0 != r:
                m[r], m[i0] = m[i0], m[r]
                if u is not None:
                    u[r], u[i0] = u[i0], u[r]
            done = True
            for i in range(r + 1, rows):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if u is not None:
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if m[r][c] == 0:
            continue
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
            if u is not None:
                u[r] = [-x for x in u[r]]
        piv = m[r][c]
        for i in range(r):
            q = m[i][c] // piv
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                if u is not None:
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return r


def hnf(a) -> Mat:
    """Canonical row Hermite normal form with zero rows dropped."""
    m = [list(row) for row in a]
    if not m:
        return ()
    r = _hnf_inplace(m, None)
    return freeze(m[:r])


def hnf_with_transform(a) -> tuple[Mat, Mat, int]:
    """Return (H, U, rank) with U unimodular, U @ a == H in HNF."""
    m = [list(row) for row in a]
    rows = len(m)
    u = [list(row) for row in identity(rows)]
    r = _hnf_inplace(m, u)
    return freeze(m), freeze(u), r


def kernel(a) -> Mat:
    """Basis (HNF rows) of the integer kernel {x : a @ x == 0}.

    The result spans a saturated sublattice of Z^n, n = number of columns.
    """
    at = [list(row) for row in transpose(a)]
    if not at:
        return ()
    h, u, r = hnf_with_transform(at)
    return hnf(u[r:])


def left_kernel(a) -> Mat:
    """Basis (HNF rows) of {x : x @ a == 0}."""
    m = [list(row) for row in a]
    if not m:
        return ()
    h, u, r = hnf_with_transform(m)
    return hnf(u[r:])


def snf_diagonal(a) -> list[int]:
    """Nonzero invariant factors of a, in divisibility order d1 | d2 | ...."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag: list[int] = []
    top = 0
    while top < rows and top < cols:
        if all(m[i][j] == 0 for i in range(top, rows) for j in range(top, cols)):
            break
        while True:
            i0, j0 = min(
                (
                    (i, j)
                    for i in range(top, rows)
                    for j in range(top, cols)
                    if m[i][j] != 0
                ),
                key=lambda ij: (abs(m[ij[0]][ij[1]]), ij),
            )
            m[top], m[i0] = m[i0], m[top]
            for row in m:
                row[top], row[j0] = row[j0], row[top]
            p = m[top][top]
            dirty = False
            for i in range(top + 1, rows):
                if m[i][top] != 0:
                    q = m[i][top] // p
                    m[i] = [x - q * y for x, y in zip(m[i], m[top])]
                    dirty = dirty or m[i][top] != 0
            for j in range(top + 1, cols):
                if m[top][j] != 0:
                    q = m[top][j] // p
                    for i in range(rows):
                        m[i][j] -= q * m[i][top]
                    dirty = dirty or m[top][j] != 0
            if dirty:
                continue
            # Pivot divides every remaining entry, or absorb a bad row.
            bad = next(
                (
                    (i, j)
                    for i in range(top + 1, rows)
                    for j in range(top + 1, cols)
                    if m[i][j] % p != 0
                ),
                None,
            )
            if bad is None:
                break
            m[top] = [x + y for x, y in zip(m[top], m[bad[0]])]
        diag.append(abs(m[top][top]))
        top += 1
    diag.sort()
    return diag


def solve(a: Mat, b: Vec) -> tuple[Fraction, ...] | None:
    """Unique rational solution of a @ x == b, or None if none exists.

    Requires a to have full column rank (the use sites guarantee it);
    inconsistent systems return None.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in row] + [Fraction(bb)] for row, bb in zip(a, b)]
    r = 0
    pivots = []
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if m[i][cols] != 0:
            return None
    if len(pivots) < cols:
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return tuple(x)


def solve_int(a: Mat, b: Vec) -> Vec | None:
    """Integer solution of a @ x == b, or None."""
    x = solve(a, b)
    if x is None or any(f.denominator != 1 for f in x):
        return None
    return tuple(int(f) for f in x)


def inverse_unimodular(a: Mat) -> Mat:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(a)
    cols = []
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        x = solve_int(a, e)
        if x is None:
            raise ValueError("matrix is not unimodular")
        cols.append(x)
    return freeze(zip(*cols))


def saturate(rows) -> Mat:
    """Saturation of the row span: all integer vectors in its Q-span (HNF)."""
    h = hnf(rows)
    if not h:
        return ()
    k = kernel(h)
    if not k:
        return identity(len(h[0]))
    return kernel(k)


def intersect_rowspans(b1, b2) -> Mat:
    """HNF basis of the intersection of two integer row-span lattices."""
    b1 = hnf(b1)
    b2 = hnf(b2)
    if not b1 or not b2:
        return ()
    stacked = list(b1) + list(b2)
    rel = left_kernel(stacked)
    out = []
    for row in rel:
        combo = [0] * len(b1[0])
        for c, brow in zip(row[: len(b1)], b1):
            for j, x in enumerate(brow):
                combo[j] += c * x
        out.append(combo)
    return hnf(out)


def completion_with_first_row(c: Vec) -> Mat:
    """A unimodular matrix whose first row is the primitive vector c."""
    n = len(c)
    if vec_content(c) != 1:
        raise ValueError("vector is not primitive")
    col = [[x] for x in c]
    h, u, r = hnf_with_transform(col)
    # u @ c^T == (1, 0, ..., 0)^T, so the first column of u^{-1} is c.
    v = transpose(inverse_unimodular(u))
    assert v[0] == tuple(c)
    return v


def row_span_contains(basis, v) -> bool:
    """Whether v lies in the Q-span of the basis rows (entries rational)."""
    if all(x == 0 for x in v):
        return True
    if not basis:
        return False
    stacked = list(basis) + [list(v)]
    return rank(stacked) == rank(basis)
