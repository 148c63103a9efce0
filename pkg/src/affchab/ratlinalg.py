"""Exact linear algebra over the rationals.

Matrices are lists of rows of Fractions.  No floating point anywhere;
everything downstream that consumes intersection matrices relies on exact
results here.
"""

from fractions import Fraction
from math import lcm


def mat(rows):
    return [[Fraction(x) for x in row] for row in rows]


def identity(n):
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            x = a[i][t]
            if x == 0:
                continue
            for j in range(m):
                out[i][j] += x * b[t][j]
    return out


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def is_symmetric(a):
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(len(a)))


def rref(a):
    """Reduced row echelon form; returns (rref_matrix, pivot_columns)."""
    m = [row[:] for row in mat(a)]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a):
    if not a:
        return 0
    return len(rref(a)[1])


def inverse(a):
    """Inverse of a square nonsingular matrix."""
    n = len(a)
    aug = [row[:] + identity(n)[i] for i, row in enumerate(mat(a))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def full_rank_factorization(a):
    """A = B C with B of full column rank and C of full row rank."""
    red, pivots = rref(a)
    r = len(pivots)
    b = [[row[c] for c in pivots] for row in mat(a)]
    c = red[:r]
    return b, c


def moore_penrose(a):
    """The Moore-Penrose pseudoinverse, exactly over Q.

    Computed from a full-rank factorization A = BC as
    C^T (C C^T)^-1 (B^T B)^-1 B^T.  For A = 0 the result is the zero
    matrix of transposed shape.
    """
    n, m = len(a), len(a[0])
    if rank(a) == 0:
        return [[Fraction(0)] * n for _ in range(m)]
    b, c = full_rank_factorization(a)
    bt, ct = transpose(b), transpose(c)
    mid = matmul(inverse(matmul(c, ct)), inverse(matmul(bt, b)))
    return matmul(ct, matmul(mid, bt))


def common_denominator(a):
    """Least common denominator of all entries."""
    out = 1
    for row in a:
        for x in row:
            out = lcm(out, Fraction(x).denominator)
    return out


def kernel_basis(a):
    """Basis of the right kernel of A."""
    red, pivots = rref(a)
    cols = len(a[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis
