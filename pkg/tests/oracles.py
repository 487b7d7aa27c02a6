"""Slow reference computations that share no code with the package.

Everything here works on lists of ``Fraction`` (or ints mod p) with plain
Gaussian elimination, so a bug in the flint layer cannot hide itself.
"""
from fractions import Fraction
from itertools import product


def to_rows(m):
    """LinMap -> list of rows of Fraction (or int for F_p)."""
    if m.field.p is None:
        return [[Fraction(str(x)) for x in row] for row in m.tolist()]
    return [[int(x) % m.field.p for x in row] for row in m.tolist()]


def rank(rows, p=None):
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if (rows[i][c] % p if p else rows[i][c])), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, p) if p else 1 / rows[r][c]
        rows[r] = [(x * inv) % p if p else x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                k = rows[i][c]
                rows[i] = [(x - k * y) % p if p else x - k * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def matmul(a, b, p=None):
    out = [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]
    return [[x % p for x in row] for row in out] if p else out


def act(rows, i):
    """Column i of a matrix as a list."""
    return [row[i] for row in rows]


def balanced_tensor_dim(m_dim, n_dim, r_dim, ract, lact, p=None):
    """dim of M (x)_R N from the balancing relations (x.b) (x) y - x (x) (b.y).

    ``ract`` has columns x*r_dim+b, ``lact`` has columns b*n_dim+y.
    """
    relations = []
    for x, b, y in product(range(m_dim), range(r_dim), range(n_dim)):
        xb = act(ract, x * r_dim + b)
        by = act(lact, b * n_dim + y)
        v = [0] * (m_dim * n_dim)
        for i in range(m_dim):
            v[i * n_dim + y] += xb[i]
        for j in range(n_dim):
            v[x * n_dim + j] -= by[j]
        relations.append(v)
    return m_dim * n_dim - rank(relations, p)


def structure_constants(alg):
    """c[i][j] = coordinates of e_i e_j."""
    rows = to_rows(alg.mul)
    n = alg.dim
    return [[act(rows, i * n + j) for j in range(n)] for i in range(n)]


def is_associative(c, p=None):
    n = len(c)

    def mul(x, y):
        out = [0] * n
        for i, j in product(range(n), range(n)):
            if x[i] and y[j]:
                for k in range(n):
                    out[k] += x[i] * y[j] * c[i][j][k]
        return [v % p for v in out] if p else out

    basis = [[int(k == i) for k in range(n)] for i in range(n)]
    return all(mul(mul(x, y), z) == mul(x, mul(y, z)) for x, y, z in product(basis, repeat=3))


def group_table(n):
    """Cyclic group of order n, basis g^0..g^(n-1)."""
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _rational_sqrt(q):
    from math import isqrt
    q = Fraction(q)
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    return Fraction(n, d) if n * n == q.numerator and d * d == q.denominator else None


def split_idempotents(c, unit):
    """For a 2-dim commutative algebra over Q given by structure constants,
    return orthogonal idempotents (e1, e2) with e1 + e2 = 1, or None.

    Pick x outside span(1), write x^2 = a x + b 1 and split by the roots
    of t^2 - a t - b.
    """
    def mul(x, y):
        return [sum(x[i] * y[j] * c[i][j][k] for i in range(2) for j in range(2)) for k in range(2)]

    one = [Fraction(u) for u in unit]
    x = [Fraction(1), Fraction(0)] if one[1] != 0 else [Fraction(0), Fraction(1)]
    xx = mul(x, x)
    det = x[0] * one[1] - x[1] * one[0]
    a = (xx[0] * one[1] - xx[1] * one[0]) / det
    b = (x[0] * xx[1] - x[1] * xx[0]) / det
    root = _rational_sqrt(a * a + 4 * b)
    if root is None or root == 0:
        return None
    r1, r2 = (a + root) / 2, (a - root) / 2
    e1 = [(x[k] - r2 * one[k]) / (r1 - r2) for k in range(2)]
    e2 = [one[k] - e1[k] for k in range(2)]
    return e1, e2, mul
