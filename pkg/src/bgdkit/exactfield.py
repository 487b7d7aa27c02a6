"""Exact scalars and dense linear maps over Q or F_p.

Matrices are backed by python-flint (``fmpq_mat`` / ``nmod_mat``).  Every
basis produced here (kernels, cokernels, solutions) is read off a reduced
row echelon form, which is unique, so results are reproducible bit for bit.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

import flint

from .errors import BudgetExceeded, DimensionMismatch, MalformedInput, NoSolution


# flint aborts the process when an allocation fails; refuse well before that
MAX_ENTRIES = 1 << 26


class Field:
    """The rationals (``p is None``) or the prime field F_p."""

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if p < 2 or not flint.fmpz(p).is_prime():
                raise MalformedInput(f"{p} is not prime")
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"F{self.p}"

    def scalar(self, x):
        if self.p is None:
            if isinstance(x, flint.fmpq):
                return x
            if isinstance(x, Fraction):
                return flint.fmpq(x.numerator, x.denominator)
            if isinstance(x, str):
                return self.parse(x)
            return flint.fmpq(int(x))
        if isinstance(x, flint.nmod):
            return x
        if isinstance(x, (Fraction, flint.fmpq)):
            num, den = (x.numerator, x.denominator) if isinstance(x, Fraction) else (int(x.p), int(x.q))
            return flint.nmod(num, self.p) / flint.nmod(den, self.p)
        if isinstance(x, str):
            return self.parse(x)
        return flint.nmod(int(x), self.p)

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def one(self):
        return self.scalar(1)

    def parse(self, token):
        """Parse an int or a string ``"n"`` / ``"n/d"``."""
        if isinstance(token, bool):
            raise MalformedInput(f"bad scalar {token!r}")
        if isinstance(token, int):
            return self.scalar(token)
        if not isinstance(token, str):
            raise MalformedInput(f"bad scalar {token!r}")
        try:
            frac = Fraction(token.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad scalar {token!r}") from exc
        if self.p is not None and frac.denominator % self.p == 0:
            raise MalformedInput(f"{token!r} is not defined mod {self.p}")
        return self.scalar(frac)

    def format(self, x):
        """Rationals serialize as strings, residues as ints."""
        if self.p is None:
            x = self.scalar(x)
            return str(int(x.p)) if x.q == 1 else f"{int(x.p)}/{int(x.q)}"
        return int(self.scalar(x))

    def mat(self, rows: int, cols: int, entries=None):
        if rows * cols > MAX_ENTRIES:
            raise BudgetExceeded(f"a dense {rows}x{cols} matrix exceeds {MAX_ENTRIES} entries")
        if entries is None:
            return flint.fmpq_mat(rows, cols) if self.p is None else flint.nmod_mat(rows, cols, self.p)
        if self.p is None:
            return flint.fmpq_mat(rows, cols, entries)
        return flint.nmod_mat(rows, cols, [int(e) for e in entries], self.p)


QQ = Field()


def _fill(field: Field, rows: int, cols: int, items):
    """A matrix from ``((row, col), value)`` pairs on a zero background."""
    mat = field.mat(rows, cols)
    for (i, j), v in items:
        mat[i, j] = v
    return mat


@lru_cache(maxsize=None)
def prime_field(p: int) -> Field:
    return Field(p)


class LinMap:
    """A linear map k^cols -> k^rows given by an exact matrix.

    Composition is ``g @ f`` (apply ``f`` first).  Instances are treated as
    immutable.
    """

    __slots__ = ("field", "mat", "rows", "cols")

    def __init__(self, field: Field, mat):
        self.field = field
        self.mat = mat
        self.rows = mat.nrows()
        self.cols = mat.ncols()

    # construction

    @classmethod
    def from_rows(cls, field: Field, rows, cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged matrix")
        flat = [field.scalar(x) for r in rows for x in r]
        return cls(field, field.mat(len(rows), cols, flat))

    @classmethod
    def from_entries(cls, field: Field, rows: int, cols: int, entries):
        return cls(field, field.mat(rows, cols, list(entries)))

    @classmethod
    def from_columns(cls, field: Field, columns, rows: int):
        columns = [list(c) for c in columns]
        out = [field.zero] * (rows * len(columns))
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise DimensionMismatch("column length mismatch")
            for i, x in enumerate(col):
                out[i * len(columns) + j] = field.scalar(x)
        return cls(field, field.mat(rows, len(columns), out))

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int):
        return cls(field, field.mat(rows, cols))

    @classmethod
    def identity(cls, field: Field, n: int):
        return _identity(field, n)

    @classmethod
    def from_sparse(cls, field: Field, rows: int, cols: int, triples):
        """Build from ``(row, col, value)`` triples; repeated positions add."""
        acc = {}
        for i, j, v in triples:
            acc[i, j] = acc.get((i, j), field.zero) + field.scalar(v)
        return cls(field, _fill(field, rows, cols, acc.items()))

    # arithmetic

    def _check(self, other):
        if not isinstance(other, LinMap) or other.field != self.field:
            raise DimensionMismatch("field mismatch")

    def __matmul__(self, other: "LinMap") -> "LinMap":
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot compose {self.shape} after {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return LinMap.zero(self.field, self.rows, other.cols)
        if isinstance(other, _Permutation):
            # column j of the product is column targets[j] of self
            where = other.sources
            items = (((i, where[j]), x) for i, j, x in self.nonzeros())
            return LinMap(self.field, _fill(self.field, self.rows, other.cols, items))
        if isinstance(self, _Permutation):
            targets = self.targets
            items = (((targets[i], j), x) for i, j, x in other.nonzeros())
            return LinMap(self.field, _fill(self.field, self.rows, other.cols, items))
        return LinMap(self.field, self.mat * other.mat)

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        if self.rows == 0 or self.cols == 0:
            return self
        return LinMap(self.field, self.mat + other.mat)

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        if self.rows == 0 or self.cols == 0:
            return self
        return LinMap(self.field, self.mat - other.mat)

    def __neg__(self):
        if self.rows == 0 or self.cols == 0:
            return self
        return LinMap(self.field, -self.mat)

    def scale(self, c) -> "LinMap":
        if self.rows == 0 or self.cols == 0:
            return self
        return LinMap(self.field, self.mat * self.field.scalar(c))

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        if other.field != self.field or other.shape != self.shape:
            return False
        if self.rows == 0 or self.cols == 0:
            return True
        return self.mat == other.mat

    __hash__ = None

    # inspection

    @property
    def shape(self):
        return (self.rows, self.cols)

    def nonzeros(self):
        """``(row, col, value)`` for every nonzero entry, row-major."""
        cols = self.cols
        return [(k // cols, k % cols, x) for k, x in enumerate(self.entries()) if x]

    def entries(self) -> list:
        if self.rows == 0 or self.cols == 0:
            return []
        return list(self.mat.entries())

    def tolist(self) -> list[list]:
        e = self.entries()
        return [e[i * self.cols:(i + 1) * self.cols] for i in range(self.rows)]

    def entry(self, i: int, j: int):
        return self.mat[i, j]

    def column(self, j: int) -> list:
        return [self.mat[i, j] for i in range(self.rows)]

    def col_map(self, j: int) -> "LinMap":
        """The j-th column as a map k -> k^rows."""
        return LinMap.from_entries(self.field, self.rows, 1, self.column(j))

    def select_columns(self, cols) -> "LinMap":
        cols = list(cols)
        e = self.entries()
        out = [e[i * self.cols + j] for i in range(self.rows) for j in cols]
        return LinMap.from_entries(self.field, self.rows, len(cols), out)

    def select_rows(self, rows) -> "LinMap":
        rows = list(rows)
        e = self.entries()
        out = [e[i * self.cols + j] for i in rows for j in range(self.cols)]
        return LinMap.from_entries(self.field, len(rows), self.cols, out)

    def is_zero(self) -> bool:
        zero = self.field.zero
        return all(x == zero for x in self.entries())

    def first_nonzero_column(self):
        """Index of the first column containing a nonzero entry, or None."""
        e = self.entries()
        zero = self.field.zero
        for j in range(self.cols):
            for i in range(self.rows):
                if e[i * self.cols + j] != zero:
                    return j
        return None

    def transpose(self) -> "LinMap":
        if self.rows == 0 or self.cols == 0:
            return LinMap.zero(self.field, self.cols, self.rows)
        return LinMap(self.field, self.mat.transpose())

    @property
    def T(self):
        return self.transpose()

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return _rref(self)[1].__len__()

    def inverse(self) -> "LinMap":
        if self.rows != self.cols:
            raise DimensionMismatch("only square maps can be inverted")
        if self.rows == 0:
            return self
        if self.rank() != self.rows:
            raise NoSolution("map is not invertible")
        return LinMap(self.field, self.mat.inv())

    def is_injective(self) -> bool:
        return self.rank() == self.cols

    def is_surjective(self) -> bool:
        return self.rank() == self.rows

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def __repr__(self):
        return f"LinMap({self.field!r}, {self.rows}x{self.cols}, {self.tolist()})"


@lru_cache(maxsize=None)
def _identity(field: Field, n: int) -> LinMap:
    out = [field.zero] * (n * n)
    for i in range(n):
        out[i * n + i] = field.one
    return LinMap(field, field.mat(n, n, out))


def _rref(f: LinMap):
    """Return (entries of the rref as row lists, pivot columns)."""
    if f.rows == 0 or f.cols == 0:
        return [], []
    r, rank = f.mat.rref()
    e = list(r.entries())
    rows = [e[i * f.cols:(i + 1) * f.cols] for i in range(rank)]
    zero = f.field.zero
    pivots = []
    for row in rows:
        for j, x in enumerate(row):
            if x != zero:
                pivots.append(j)
                break
    return rows, pivots


def vector(field: Field, values) -> LinMap:
    """A column vector, i.e. a map k -> k^n."""
    values = [field.scalar(v) for v in values]
    return LinMap.from_entries(field, len(values), 1, values)


def basis_vector(field: Field, n: int, i: int) -> LinMap:
    out = [field.zero] * n
    out[i] = field.one
    return LinMap.from_entries(field, n, 1, out)


def kernel(f: LinMap):
    """Return ``(sub_dim, incl)`` with ``f @ incl == 0`` and incl of full column rank."""
    field = f.field
    if f.rows == 0 or f.cols == 0:
        return f.cols, LinMap.identity(field, f.cols)
    rows, pivots = _rref(f)
    free = [j for j in range(f.cols) if j not in set(pivots)]
    out = [field.zero] * (f.cols * len(free))
    width = len(free)
    for k, j in enumerate(free):
        out[j * width + k] = field.one
        for row, p in zip(rows, pivots):
            out[p * width + k] = -row[j]
    return len(free), LinMap.from_entries(field, f.cols, width, out)


def cokernel(f: LinMap):
    """Return ``(quotient_dim, proj, section)`` for ``codomain(f) / image(f)``.

    The quotient basis is the set of standard basis vectors of the codomain
    that are not pivots of rref(f^T); ``section`` includes them.
    """
    field = f.field
    n = f.rows
    if n == 0 or f.cols == 0:
        ident = LinMap.identity(field, n)
        return n, ident, ident
    rows, pivots = _rref(f.transpose())
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    q = len(free)
    proj = [field.zero] * (q * n)
    sec = [field.zero] * (n * q)
    for k, j in enumerate(free):
        proj[k * n + j] = field.one
        sec[j * q + k] = field.one
        for row, p in zip(rows, pivots):
            proj[k * n + p] = -row[j]
    return q, LinMap.from_entries(field, q, n, proj), LinMap.from_entries(field, n, q, sec)


def solve(f: LinMap, target: LinMap):
    """Solve ``f @ x == target`` for a column (or block of columns) ``target``.

    Returns ``(x, kernel_incl)``.  Raises NoSolution when target is not in
    the image of f.
    """
    field = f.field
    if target.rows != f.rows:
        raise DimensionMismatch("target length does not match codomain")
    k = target.cols
    _, kern = kernel(f)
    if f.rows == 0:
        return LinMap.zero(field, f.cols, k), kern
    aug = hstack([f, target])
    rows, pivots = _rref(aug)
    if any(p >= f.cols for p in pivots):
        raise NoSolution("target is not in the image")
    out = [field.zero] * (f.cols * k)
    for row, p in zip(rows, pivots):
        for c in range(k):
            out[p * k + c] = row[f.cols + c]
    return LinMap.from_entries(field, f.cols, k, out), kern


def solve_left(a: LinMap, b: LinMap) -> LinMap:
    """Solve ``x @ a == b`` for x."""
    x, _ = solve(a.transpose(), b.transpose())
    return x.transpose()


def hstack(maps) -> LinMap:
    maps = list(maps)
    field = maps[0].field
    rows = maps[0].rows
    if any(m.rows != rows for m in maps):
        raise DimensionMismatch("hstack row mismatch")
    cols = sum(m.cols for m in maps)
    ents = [m.entries() for m in maps]
    out = []
    for i in range(rows):
        for m, e in zip(maps, ents):
            out.extend(e[i * m.cols:(i + 1) * m.cols])
    return LinMap.from_entries(field, rows, cols, out)


def vstack(maps) -> LinMap:
    maps = list(maps)
    field = maps[0].field
    cols = maps[0].cols
    if any(m.cols != cols for m in maps):
        raise DimensionMismatch("vstack column mismatch")
    out = []
    for m in maps:
        out.extend(m.entries())
    return LinMap.from_entries(field, sum(m.rows for m in maps), cols, out)


def kron(f: LinMap, g: LinMap) -> LinMap:
    """The tensor product f (x) g; basis e_i (x) e_j has index i*dim2 + j."""
    field = f.field
    f._check(g)
    m2, n2 = g.rows, g.cols
    rows, cols = f.rows * m2, f.cols * n2
    if rows == 0 or cols == 0:
        return LinMap.zero(field, rows, cols)
    b = g.nonzeros()
    items = (((i1 * m2 + i2, j1 * n2 + j2), x * y) for i1, j1, x in f.nonzeros() for i2, j2, y in b)
    return LinMap(field, _fill(field, rows, cols, items))


def compose_first_factor(x: LinMap, b: LinMap, k: int) -> LinMap:
    """``x @ kron(b, identity(k))`` without forming the Kronecker product."""
    field = x.field
    if x.cols != b.rows * k:
        raise DimensionMismatch(f"cannot compose {x.shape} after {b.rows}x{b.cols} (x) id_{k}")
    r, ni, nj = x.rows, b.rows, b.cols
    folded = LinMap(field, _fill(field, r * k, ni, (((row * k + c % k, c // k), v) for row, c, v in x.nonzeros())))
    y = folded @ b
    return LinMap(field, _fill(field, r, nj * k, (((i // k, c * k + i % k), v) for i, c, v in y.nonzeros())))


def kron_all(maps) -> LinMap:
    maps = list(maps)
    out = maps[0]
    for m in maps[1:]:
        out = kron(out, m)
    return out


def permute_factors(field: Field, dims, perm) -> LinMap:
    """Reorder tensor factors: output factor k is input factor ``perm[k]``."""
    return _permute_factors(field, tuple(dims), tuple(perm))


class _Permutation(LinMap):
    """A permutation matrix sending basis vector j to ``targets[j]``;
    composition with it only moves entries."""

    __slots__ = ("targets", "sources")

    def __init__(self, field: Field, targets):
        n = len(targets)
        super().__init__(field, _fill(field, n, n, (((t, j), field.one) for j, t in enumerate(targets))))
        self.targets = tuple(targets)
        sources = [0] * n
        for j, t in enumerate(targets):
            sources[t] = j
        self.sources = tuple(sources)


@lru_cache(maxsize=None)
def _permute_factors(field: Field, dims, perm) -> LinMap:
    n = len(dims)
    out_dims = [dims[perm[k]] for k in range(n)]
    targets = []
    for idx in product(*[range(d) for d in dims]):
        dst = 0
        for k in range(n):
            dst = dst * out_dims[k] + idx[perm[k]]
        targets.append(dst)
    return _Permutation(field, targets)


def swap(field: Field, m: int, n: int) -> LinMap:
    """The symmetry k^m (x) k^n -> k^n (x) k^m."""
    return permute_factors(field, [m, n], [1, 0])


def unravel(index: int, dims) -> tuple:
    """Flat tensor index -> 1-based multi-index (for witnesses)."""
    out = []
    for d in reversed(list(dims)):
        out.append(index % d + 1)
        index //= d
    return tuple(reversed(out))
