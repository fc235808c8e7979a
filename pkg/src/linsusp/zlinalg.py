"""Exact integer matrix algebra: Smith/Hermite normal forms, lattice
membership, GL(2,Z) tuple matching.

Matrices are lists of lists of Python ints (arbitrary precision is
load-bearing: fold blowup can make entries large).
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)]
            for i in range(n)]


def mat_vec(a: Matrix, v: Sequence[int]) -> List[int]:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def copy(a: Matrix) -> Matrix:
    return [row[:] for row in a]


def det(a: Matrix) -> int:
    """Integer determinant by fraction-free Gaussian elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
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


def is_unimodular(a: Matrix) -> bool:
    return len(a) == len(a[0]) and det(a) in (1, -1)


def smith_normal_form(a: Matrix) -> Tuple[Matrix, Matrix, Matrix]:
    """(U, D, V) with U*A*V = D, D diagonal with d_i | d_{i+1}, U and V
    unimodular."""
    m = copy(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        for j in range(cols):
            m[dst][j] += q * m[src][j]
        for j in range(rows):
            u[dst][j] += q * u[src][j]

    def add_col(dst, src, q):
        for r in m:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    def negate_row(i):
        for j in range(cols):
            m[i][j] = -m[i][j]
        for j in range(rows):
            u[i][j] = -u[i][j]

    def smallest_pivot(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = m[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        return best

    t = 0
    while t < rows and t < cols:
        while True:
            # re-selecting the smallest pivot every round keeps the
            # entries polynomially bounded
            piv = smallest_pivot(t)
            if piv is None:
                break
            swap_rows(t, piv[1])
            swap_cols(t, piv[2])
            done = True
            for i in range(t + 1, rows):
                if m[i][t]:
                    add_row(i, t, -(m[i][t] // m[t][t]))
                    if m[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if m[t][j]:
                    add_col(j, t, -(m[t][j] // m[t][t]))
                    if m[t][j]:
                        done = False
            if not done:
                continue
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if m[i][j] % m[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if m[t][t] and m[t][t] < 0:
            negate_row(t)
        if m[t][t] == 0:
            break
        t += 1
    return u, m, v


def snf_diagonal(a: Matrix) -> List[int]:
    _, d, _ = smith_normal_form(a)
    n = min(len(d), len(d[0]) if d else 0)
    return [d[i][i] for i in range(n)]


def lattice_member(target: Sequence[int], gens: Matrix) -> Optional[List[int]]:
    """Coefficients x with gens * x = target (gens has generators as
    columns), or None."""
    rows = len(gens)
    if rows != len(target):
        raise ValueError("dimension mismatch")
    cols = len(gens[0]) if rows and gens[0] is not None else 0
    if rows == 0:
        return []
    if cols == 0:
        return [] if all(t == 0 for t in target) else None
    u, d, v = smith_normal_form(gens)
    rhs = mat_vec(u, target)
    y = [0] * cols
    r = min(rows, cols)
    for i in range(rows):
        di = d[i][i] if i < r else 0
        if di == 0:
            if rhs[i] != 0:
                return None
        else:
            if rhs[i] % di:
                return None
            if i < cols:
                y[i] = rhs[i] // di
    return mat_vec(v, y)


def gl2_match(pairs: Sequence[Tuple[Sequence[int], Sequence[int]]]
              ) -> Optional[Matrix]:
    """A single A in GL(2,Z) with A*s = t for every (s, t) pair, or None."""
    srcs = [tuple(s) for (s, _) in pairs]
    # rank of the source span
    basis: List[Tuple[int, int]] = []
    for s in srcs:
        if s == (0, 0):
            continue
        if not basis:
            basis.append(s)
        elif len(basis) == 1:
            if basis[0][0] * s[1] - basis[0][1] * s[0] != 0:
                basis.append(s)
        if len(basis) == 2:
            break

    def check(a: Matrix) -> Optional[Matrix]:
        if not is_unimodular(a):
            return None
        for (s, t) in pairs:
            if (a[0][0] * s[0] + a[0][1] * s[1] != t[0]
                    or a[1][0] * s[0] + a[1][1] * s[1] != t[1]):
                return None
        return a

    if len(basis) == 0:
        # all sources zero: identity works iff all targets zero
        return check(identity(2))
    if len(basis) == 2:
        s1, s2 = basis
        t1 = next(t for (s, t) in pairs if tuple(s) == s1)
        t2 = next(t for (s, t) in pairs if tuple(s) == s2)
        ds = s1[0] * s2[1] - s1[1] * s2[0]
        # A = T * S^-1, integrality required
        raw = [[t1[0] * s2[1] - t2[0] * s1[1], -t1[0] * s2[0] + t2[0] * s1[0]],
               [t1[1] * s2[1] - t2[1] * s1[1], -t1[1] * s2[0] + t2[1] * s1[0]]]
        if any(x % ds for row in raw for x in row):
            return None
        return check([[x // ds for x in row] for row in raw])
    # rank one: sources proportional; write s = d * s0 with s0 primitive
    s1 = basis[0]
    g = _gcd(s1[0], s1[1])
    s0 = (s1[0] // g, s1[1] // g)
    # consistency and the primitive target
    t0: Optional[Tuple[int, int]] = None
    for (s, t) in pairs:
        s = tuple(s)
        if s == (0, 0):
            if tuple(t) != (0, 0):
                return None
            continue
        d = s[0] // s0[0] if s0[0] else s[1] // s0[1]
        if (s0[0] * d, s0[1] * d) != s:
            return None
        if t[0] % d or t[1] % d:
            return None
        cand = (t[0] // d, t[1] // d)
        if t0 is None:
            t0 = cand
        elif t0 != cand:
            return None
    assert t0 is not None
    if _gcd(t0[0], t0[1]) != 1:
        return None
    # complete s0 to a basis: find (p, q) with s0[0]*q - s0[1]*p = 1
    x, y = _bezout(s0[0], s0[1])  # x*s0[0] + y*s0[1] = 1
    w = (-y, x)  # det [s0 w] = s0[0]*x + s0[1]*y ... sign fixed below
    # solve A*s0 = t0, A*w free: choose z with det(A) = +-1
    # det([t0 z]) = t0[0]*z[1] - t0[1]*z[0] must be +-det([s0 w])
    dsw = s0[0] * w[1] - s0[1] * w[0]
    xz, yz = _bezout(t0[0], -t0[1])  # t0[0]*xz - t0[1]*yz = g = 1
    z = (yz * dsw, xz * dsw)
    # A = [t0 z] * [s0 w]^-1
    dm = dsw
    raw = [[t0[0] * w[1] - z[0] * s0[1], -t0[0] * w[0] + z[0] * s0[0]],
           [t0[1] * w[1] - z[1] * s0[1], -t0[1] * w[0] + z[1] * s0[0]]]
    if any(v % dm for row in raw for v in row):
        return None
    return check([[v // dm for v in row] for row in raw])


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _bezout(a: int, b: int) -> Tuple[int, int]:
    """(x, y) with x*a + y*b = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    g, r = a, b
    while r:
        q = g // r
        g, r = r, g - q * r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0


def mat_pow(a: Matrix, n: int) -> Matrix:
    out = identity(len(a))
    for _ in range(n):
        out = matmul(out, a)
    return out


def is_unipotent(a: Matrix) -> bool:
    n = len(a)
    m = [[a[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    return all(x == 0 for row in mat_pow(m, n) for x in row)
