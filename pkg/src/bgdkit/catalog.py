"""Built-in example objects, each packaged as an :class:`ObjectFile`."""
from __future__ import annotations

from .algebra import Algebra, AlgebraMorphism, opposite, product_algebra, structure_from_table, tensor_algebra
from .bialgebroid import LeftBialgebroid
from .errors import UnknownCatalogId
from .exactfield import LinMap, QQ, kron, prime_field
from .serialize import ObjectFile, SweedlerRecord

CATALOG_IDS = ("K1", "C2", "F2C2", "IDEM", "ENV2", "SWEEDLER_C2", "BROKEN_GAMMA", "BROKEN_PI")


def _line(field, name) -> Algebra:
    return Algebra(field, 1, LinMap.identity(field, 1), LinMap.identity(field, 1), name)


def _diagonal_lift(field, n: int) -> LinMap:
    """e_i -> e_i (x) e_i."""
    return LinMap.from_sparse(field, n * n, n, [(i * n + i, i, 1) for i in range(n)])


def _monoid_bialgebra(field, table, name: str, lift=None) -> ObjectFile:
    """k[G] for a finite monoid G over the ground field: group-like basis."""
    a = structure_from_table(field, table, 0, "A")
    r = _line(field, "R")
    n = a.dim
    unit = a.unit
    pi = LinMap.from_rows(field, [[1] * n])
    gamma = lift if lift is not None else _diagonal_lift(field, n)
    of = ObjectFile(field)
    of.algebras.update({"A": a, "R": r})
    of.bialgebroids[name] = LeftBialgebroid(a, r, unit, unit, gamma, pi, name)
    return of


def _k1() -> ObjectFile:
    f = QQ
    a, r = _line(f, "A"), _line(f, "R")
    one = LinMap.identity(f, 1)
    of = ObjectFile(f)
    of.algebras.update({"A": a, "R": r})
    of.bialgebroids["K1"] = LeftBialgebroid(a, r, one, one, one, one, "K1")
    return of


def enveloping_bialgebroid(r: Algebra, name: str = "") -> LeftBialgebroid:
    """R (x) R^op: s(x) = x (x) 1, t(y) = 1 (x) y,
    gamma(x (x) y) = (x (x) 1) (x) (1 (x) y), pi(x (x) y) = xy."""
    f = r.field
    n = r.dim
    a = tensor_algebra(r, opposite(r), "A")
    ident = LinMap.identity(f, n)
    s = kron(ident, r.unit)
    t = kron(r.unit, ident)
    gamma = kron(s, t)
    return LeftBialgebroid(a, r, s, t, gamma, r.mul, name)


def _env2() -> ObjectFile:
    f = QQ
    r = product_algebra(f, 2, "R")
    b = enveloping_bialgebroid(r, "ENV2")
    of = ObjectFile(f)
    of.algebras.update({"A": b.total, "R": r})
    of.bialgebroids["ENV2"] = b
    return of


def _sweedler_c2() -> ObjectFile:
    f = QQ
    a = structure_from_table(f, [[0, 1], [1, 0]], 0, "A")
    r = _line(f, "R")
    of = ObjectFile(f)
    of.algebras.update({"A": a, "R": r})
    iota = AlgebraMorphism(r, a, a.unit)
    of.morphisms["iota"] = iota
    of.corings["SWEEDLER_C2"] = SweedlerRecord(iota)
    return of


def _broken_gamma() -> ObjectFile:
    """k[C2] with gamma(g) = g (x) 1: multiplicative fails in the counit."""
    f = QQ
    lift = LinMap.from_sparse(f, 4, 2, [(0, 0, 1), (2, 1, 1)])
    return _monoid_bialgebra(f, [[0, 1], [1, 0]], "BROKEN_GAMMA", lift)


def _broken_pi() -> ObjectFile:
    """A = Q over R = Q x Q with s = t the first projection and pi(1) = e_1."""
    f = QQ
    a = _line(f, "A")
    r = product_algebra(f, 2, "R")
    st = LinMap.from_rows(f, [[1, 0]])
    pi = LinMap.from_rows(f, [[1], [0]])
    of = ObjectFile(f)
    of.algebras.update({"A": a, "R": r})
    of.bialgebroids["BROKEN_PI"] = LeftBialgebroid(a, r, st, st, LinMap.identity(f, 1), pi, "BROKEN_PI")
    return of


_BUILDERS = {
    "K1": _k1,
    "C2": lambda: _monoid_bialgebra(QQ, [[0, 1], [1, 0]], "C2"),
    "F2C2": lambda: _monoid_bialgebra(prime_field(2), [[0, 1], [1, 0]], "F2C2"),
    "IDEM": lambda: _monoid_bialgebra(QQ, [[0, 1], [1, 1]], "IDEM"),
    "ENV2": _env2,
    "SWEEDLER_C2": _sweedler_c2,
    "BROKEN_GAMMA": _broken_gamma,
    "BROKEN_PI": _broken_pi,
}


def catalog(ident: str) -> ObjectFile:
    """A fresh object file for a catalog id."""
    try:
        build = _BUILDERS[ident]
    except KeyError:
        raise UnknownCatalogId(f"unknown catalog id {ident!r}; known: {', '.join(CATALOG_IDS)}") from None
    return build()


def catalog_bialgebroid(ident: str) -> LeftBialgebroid:
    return catalog(ident).bialgebroids[ident]
