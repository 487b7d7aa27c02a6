"""Finite-dimensional unital algebras given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CommutationFailure, DimensionMismatch
from .exactfield import Field, LinMap, basis_vector, kron, swap, unravel
from .report import Report, compare


@dataclass(frozen=True, eq=False)
class Algebra:
    """``mul`` is dim x dim^2 with column i*dim+j holding e_i e_j."""

    field: Field
    dim: int
    mul: LinMap
    unit: LinMap
    name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatch("algebra dimension must be positive")
        if self.mul.shape != (self.dim, self.dim * self.dim):
            raise DimensionMismatch(f"mul has shape {self.mul.shape}, expected ({self.dim}, {self.dim ** 2})")
        if self.unit.shape != (self.dim, 1):
            raise DimensionMismatch(f"unit has shape {self.unit.shape}, expected ({self.dim}, 1)")

    @classmethod
    def from_constants(cls, field: Field, consts, unit, name=""):
        """``consts[i][j][k]`` is the coefficient of e_k in e_i e_j."""
        n = len(consts)
        triples = []
        for i in range(n):
            if len(consts[i]) != n:
                raise DimensionMismatch("structure constants are not n x n x n")
            for j in range(n):
                if len(consts[i][j]) != n:
                    raise DimensionMismatch("structure constants are not n x n x n")
                for k in range(n):
                    triples.append((k, i * n + j, field.scalar(consts[i][j][k])))
        mul = LinMap.from_sparse(field, n, n * n, triples)
        unit = LinMap.from_entries(field, len(unit), 1, [field.scalar(u) for u in unit])
        return cls(field, n, mul, unit, name)

    def constants(self):
        n = self.dim
        return [[self.mul.column(i * n + j) for j in range(n)] for i in range(n)]

    @property
    def identity(self) -> LinMap:
        return LinMap.identity(self.field, self.dim)

    def e(self, i: int) -> LinMap:
        return basis_vector(self.field, self.dim, i)

    def times(self, x: LinMap, y: LinMap) -> LinMap:
        return self.mul @ kron(x, y)

    def left_mult(self, x: LinMap) -> LinMap:
        """The operator y -> x y."""
        return self.mul @ kron(x, self.identity)

    def right_mult(self, x: LinMap) -> LinMap:
        return self.mul @ kron(self.identity, x)

    def same_as(self, other: "Algebra") -> bool:
        return (self.field == other.field and self.dim == other.dim
                and self.mul == other.mul and self.unit == other.unit)

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, {self.field!r})"


@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    source: Algebra
    target: Algebra
    map: LinMap

    def __post_init__(self):
        if self.map.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatch(
                f"morphism matrix has shape {self.map.shape}, expected ({self.target.dim}, {self.source.dim})")


def validate_algebra(a: Algebra) -> Report:
    rep = Report("algebra")
    n = a.dim
    ident = a.identity
    compare(rep, "associativity", a.mul @ kron(a.mul, ident), a.mul @ kron(ident, a.mul), (n, n, n))
    compare(rep, "left-unit", a.mul @ kron(a.unit, ident), ident, (n,))
    compare(rep, "right-unit", a.mul @ kron(ident, a.unit), ident, (n,))
    return rep


_OPPOSITES: dict = {}


def opposite(a: Algebra) -> Algebra:
    """The opposite algebra; commutative algebras are their own opposite and
    opposite(opposite(a)) returns ``a`` itself."""
    hit = _OPPOSITES.get(id(a))
    if hit is not None and hit[0] is a:
        return hit[1]
    op = Algebra(a.field, a.dim, a.mul @ swap(a.field, a.dim, a.dim), a.unit,
                 a.name + "^op" if a.name else "")
    if op.mul == a.mul:
        op = a
    _OPPOSITES[id(a)] = (a, op)
    _OPPOSITES[id(op)] = (op, a)
    return op


def tensor_algebra(a: Algebra, b: Algebra, name="") -> Algebra:
    """a (x) b with the componentwise product."""
    f = a.field
    middle = kron(kron(LinMap.identity(f, a.dim), swap(f, b.dim, a.dim)), LinMap.identity(f, b.dim))
    mul = kron(a.mul, b.mul) @ middle
    return Algebra(f, a.dim * b.dim, mul, kron(a.unit, b.unit), name)


def enveloping(r: Algebra) -> Algebra:
    """R (x) R^op."""
    return _enveloping(r)


@lru_cache(maxsize=None)
def _enveloping(r: Algebra) -> Algebra:
    return tensor_algebra(r, opposite(r), (r.name + "^e") if r.name else "")


def check_morphism(m: AlgebraMorphism) -> Report:
    rep = Report("algebra-morphism")
    s, t, f = m.source, m.target, m.map
    compare(rep, "multiplicativity", f @ s.mul, t.mul @ kron(f, f), (s.dim, s.dim))
    compare(rep, "unitality", f @ s.unit, t.unit)
    return rep


def chi_from_st(s: AlgebraMorphism, t: AlgebraMorphism) -> AlgebraMorphism:
    """chi(r (x) r') = s(r) t(r') on R^e, provided the ranges of s and t commute."""
    a = s.target
    r = s.source
    if t.target is not a and not t.target.same_as(a):
        raise DimensionMismatch("s and t have different targets")
    if t.source.dim != r.dim:
        raise DimensionMismatch("s and t have differently sized sources")
    st = kron(s.map, t.map)
    lhs = a.mul @ st
    rhs = a.mul @ swap(a.field, a.dim, a.dim) @ st
    col = (lhs - rhs).first_nonzero_column()
    if col is not None:
        raise CommutationFailure("ranges of s and t do not commute", unravel(col, (r.dim, r.dim)))
    return AlgebraMorphism(enveloping(r), a, lhs)


def structure_from_table(field: Field, table, unit_index=0, name=""):
    """Algebra with basis b_0..b_{n-1} and b_i b_j = b_{table[i][j]} (a monoid algebra)."""
    n = len(table)
    consts = [[[1 if k == table[i][j] else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    unit = [1 if k == unit_index else 0 for k in range(n)]
    return Algebra.from_constants(field, consts, unit, name)


def product_algebra(field: Field, n: int, name="") -> Algebra:
    """k^n with componentwise product (orthogonal idempotents e_1..e_n)."""
    consts = [[[1 if (i == j == k) else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    return Algebra.from_constants(field, consts, [1] * n, name)


def matrix_algebra(field: Field, n: int, name="") -> Algebra:
    """n x n matrices, basis E_ij at index i*n+j."""
    d = n * n
    consts = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(n):
        for j in range(n):
            for l in range(n):
                consts[i * n + j][j * n + l][i * n + l] = 1
    unit = [1 if (k // n == k % n) else 0 for k in range(d)]
    return Algebra.from_constants(field, consts, unit, name)


def ground(field: Field) -> Algebra:
    return _ground(field)


@lru_cache(maxsize=None)
def _ground(field: Field) -> Algebra:
    return Algebra(field, 1, LinMap.identity(field, 1), LinMap.identity(field, 1), "k")
