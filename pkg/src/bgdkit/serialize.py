"""JSON object files: algebras, morphisms, bimodules, bialgebroids,
entwining structures and corings over one field.

Maps into or out of module tensor products are written as lifts through the
plain tensor product over the field (``*_lift`` keys); quotient bases never
appear in a file.  Rationals are strings ``"n"`` or ``"n/d"``, residues mod p
are integers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, AlgebraMorphism
from .bialgebroid import LeftBialgebroid
from .bimodule import Bimodule, descend, tensor
from .coring import Coring, InternalCoring, sweedler_coring
from .entwining import EntwiningStructure, InternalComonoid, InternalMonoid
from .errors import BgdError, MalformedInput
from .exactfield import Field, LinMap, prime_field, QQ


@dataclass(eq=False)
class EntwiningRecord:
    """A left entwining (S, L, psi) given by lifts.

    ``mul_lift``: S (x) S -> S, ``cmul_lift``: L -> L (x) L and
    ``psi_lift``: S (x) L -> L (x) S, all over the field.
    """

    base: Algebra
    monoid: Bimodule
    comonoid: Bimodule
    mul_lift: LinMap
    unit: LinMap
    cmul_lift: LinMap
    counit: LinMap
    psi_lift: LinMap

    def build(self) -> EntwiningStructure:
        """Descend the lifts; NotBalanced if one of them ignores the relations."""
        s, l = self.monoid, self.comonoid
        mul = descend(self.mul_lift, tensor(s, s))
        cmul = tensor(l, l).proj @ self.cmul_lift
        psi = descend(tensor(l, s).proj @ self.psi_lift, tensor(s, l))
        return EntwiningStructure(InternalMonoid(s, mul, self.unit), InternalComonoid(l, cmul, self.counit), psi)

    @classmethod
    def from_structure(cls, e: EntwiningStructure) -> "EntwiningRecord":
        mon, com = e.monoid, e.comonoid
        s, l = mon.carrier, com.carrier
        ss, ll, sl, ls = tensor(s, s), tensor(l, l), tensor(s, l), tensor(l, s)
        return cls(e.base, s, l, mon.mul @ ss.proj, mon.unit, ll.section @ com.cmul, com.counit,
                   ls.section @ e.psi @ sl.proj)


@dataclass(eq=False)
class CoringRecord:
    """An A-coring on a bimodule, coproduct given as a lift C -> C (x) C."""

    over: Algebra
    carrier: Bimodule
    cmul_lift: LinMap
    counit: LinMap

    def build(self) -> Coring:
        cc = tensor(self.carrier, self.carrier)
        return Coring(self.over, self.carrier, cc.proj @ self.cmul_lift, self.counit)

    @classmethod
    def from_coring(cls, c: Coring) -> "CoringRecord":
        return cls(c.over, c.carrier, c.cc.section @ c.cmul, c.counit)


@dataclass(eq=False)
class SweedlerRecord:
    """The internal Sweedler coring of an algebra morphism R -> A."""

    iota: AlgebraMorphism

    def build(self) -> InternalCoring:
        return sweedler_coring(self.iota)


@dataclass(eq=False)
class ObjectFile:
    field: Field
    algebras: dict = dc_field(default_factory=dict)
    morphisms: dict = dc_field(default_factory=dict)
    bimodules: dict = dc_field(default_factory=dict)
    bialgebroids: dict = dc_field(default_factory=dict)
    entwinings: dict = dc_field(default_factory=dict)
    corings: dict = dc_field(default_factory=dict)

    SECTIONS = ("algebras", "morphisms", "bimodules", "bialgebroids", "entwinings", "corings")

    def lookup(self, name: str):
        """(section, object) for a name; MalformedInput if it is unknown."""
        for section in self.SECTIONS:
            table = getattr(self, section)
            if name in table:
                return section, table[name]
        raise MalformedInput(f"no object named {name!r}")

    def names(self) -> list:
        return [n for section in self.SECTIONS for n in getattr(self, section)]

    def name_of(self, obj) -> str:
        for section in self.SECTIONS:
            for name, x in getattr(self, section).items():
                if x is obj:
                    return name
        raise MalformedInput(f"object {obj!r} has no name in this file")

    def add_algebra(self, name: str, a: Algebra) -> Algebra:
        self.algebras.setdefault(name, a)
        return self.algebras[name]


# writing

def _field_json(f: Field):
    return "Q" if f.p is None else {"Fp": f.p}


def _matrix_json(m: LinMap):
    fmt = m.field.format
    e = m.entries()
    return [[fmt(e[i * m.cols + j]) for j in range(m.cols)] for i in range(m.rows)]


def _algebra_json(a: Algebra):
    fmt = a.field.format
    n = a.dim
    e = a.mul.entries()
    mul = [[[fmt(e[k * n * n + i * n + j]) for k in range(n)] for j in range(n)] for i in range(n)]
    return {"dim": n, "mul": mul, "unit": [fmt(x) for x in a.unit.column(0)]}


def to_json(of: ObjectFile) -> dict:
    out = {"field": _field_json(of.field)}
    name = of.name_of
    if of.algebras:
        out["algebras"] = {k: _algebra_json(a) for k, a in of.algebras.items()}
    if of.morphisms:
        out["morphisms"] = {k: {"source": name(m.source), "target": name(m.target), "matrix": _matrix_json(m.map)}
                            for k, m in of.morphisms.items()}
    if of.bimodules:
        out["bimodules"] = {k: {"base": name(m.base), "dim": m.dim, "lact": _matrix_json(m.lact),
                                "ract": _matrix_json(m.ract)} for k, m in of.bimodules.items()}
    if of.bialgebroids:
        out["bialgebroids"] = {k: {"A": name(b.total), "R": name(b.base), "s": _matrix_json(b.s),
                                   "t": _matrix_json(b.t), "gamma_lift": _matrix_json(b.gamma_lift),
                                   "pi": _matrix_json(b.pi)} for k, b in of.bialgebroids.items()}
    if of.entwinings:
        out["entwinings"] = {k: {"base": name(e.base), "monoid": name(e.monoid), "comonoid": name(e.comonoid),
                                 "mul_lift": _matrix_json(e.mul_lift), "unit": _matrix_json(e.unit),
                                 "cmul_lift": _matrix_json(e.cmul_lift), "counit": _matrix_json(e.counit),
                                 "psi_lift": _matrix_json(e.psi_lift)} for k, e in of.entwinings.items()}
    if of.corings:
        cor = {}
        for k, c in of.corings.items():
            if isinstance(c, SweedlerRecord):
                cor[k] = {"sweedler": name(c.iota)}
            else:
                cor[k] = {"over": name(c.over), "carrier": name(c.carrier),
                          "cmul_lift": _matrix_json(c.cmul_lift), "counit": _matrix_json(c.counit)}
        out["corings"] = cor
    return out


def dumps(of: ObjectFile) -> str:
    return json.dumps(to_json(of), indent=2, ensure_ascii=False) + "\n"


# reading

def _need(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise MalformedInput(f"{where}: missing key {key!r}")
    return d[key]


def _parse_field(x) -> Field:
    if x == "Q":
        return QQ
    if isinstance(x, dict) and set(x) == {"Fp"} and isinstance(x["Fp"], int) and not isinstance(x["Fp"], bool):
        return prime_field(x["Fp"])
    raise MalformedInput(f"bad field descriptor {x!r}")


def _parse_matrix(f: Field, rows, shape, where: str) -> LinMap:
    nr, nc = shape
    if not isinstance(rows, list) or len(rows) != nr or any(not isinstance(r, list) or len(r) != nc for r in rows):
        got = (len(rows), len(rows[0]) if rows and isinstance(rows[0], list) else 0) if isinstance(rows, list) else "?"
        raise MalformedInput(f"{where}: expected a {nr}x{nc} matrix, got {got}")
    return LinMap.from_entries(f, nr, nc, [f.parse(x) for r in rows for x in r])


def _parse_vector(f: Field, v, n: int, where: str) -> LinMap:
    """A length-n list or an n x 1 column."""
    if isinstance(v, list) and len(v) == n and all(not isinstance(x, list) for x in v):
        return LinMap.from_entries(f, n, 1, [f.parse(x) for x in v])
    return _parse_matrix(f, v, (n, 1), where)


def _parse_algebra(f: Field, name: str, d) -> Algebra:
    where = f"algebra {name}"
    n = _need(d, "dim", where)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MalformedInput(f"{where}: bad dimension {n!r}")
    mul = _need(d, "mul", where)
    ok = (isinstance(mul, list) and len(mul) == n
          and all(isinstance(r, list) and len(r) == n for r in mul)
          and all(isinstance(c, list) and len(c) == n for r in mul for c in r))
    if not ok:
        raise MalformedInput(f"{where}: mul must be a {n}x{n}x{n} array")
    consts = [[[f.parse(x) for x in c] for c in r] for r in mul]
    unit = _parse_vector(f, _need(d, "unit", where), n, f"{where} unit")
    return Algebra.from_constants(f, consts, unit.column(0), name)


def _ref(table: dict, key, what: str, where: str):
    if not isinstance(key, str) or key not in table:
        raise MalformedInput(f"{where}: unknown {what} {key!r}")
    return table[key]


def loads(text: str) -> ObjectFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedInput("an object file is a JSON object")
    unknown = set(data) - {"field", *ObjectFile.SECTIONS}
    if unknown:
        raise MalformedInput(f"unknown top-level keys {sorted(unknown)}")
    f = _parse_field(_need(data, "field", "file"))
    of = ObjectFile(f)
    try:
        _load_sections(of, data)
    except MalformedInput:
        raise
    except BgdError as exc:
        raise MalformedInput(str(exc), exc.witness) from exc
    return of


def _section(data, key):
    x = data.get(key, {})
    if not isinstance(x, dict):
        raise MalformedInput(f"section {key!r} must be an object")
    return x


def _load_sections(of: ObjectFile, data: dict):
    f = of.field
    for name, d in _section(data, "algebras").items():
        of.algebras[name] = _parse_algebra(f, name, d)
    alg = of.algebras
    for name, d in _section(data, "morphisms").items():
        where = f"morphism {name}"
        src = _ref(alg, _need(d, "source", where), "algebra", where)
        dst = _ref(alg, _need(d, "target", where), "algebra", where)
        m = _parse_matrix(f, _need(d, "matrix", where), (dst.dim, src.dim), where)
        of.morphisms[name] = AlgebraMorphism(src, dst, m)
    for name, d in _section(data, "bimodules").items():
        where = f"bimodule {name}"
        r = _ref(alg, _need(d, "base", where), "algebra", where)
        n = _need(d, "dim", where)
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise MalformedInput(f"{where}: bad dimension {n!r}")
        lact = _parse_matrix(f, _need(d, "lact", where), (n, r.dim * n), f"{where} lact")
        ract = _parse_matrix(f, _need(d, "ract", where), (n, n * r.dim), f"{where} ract")
        of.bimodules[name] = Bimodule.over(r, n, lact, ract, name)
    for name, d in _section(data, "bialgebroids").items():
        where = f"bialgebroid {name}"
        a = _ref(alg, _need(d, "A", where), "algebra", where)
        r = _ref(alg, _need(d, "R", where), "algebra", where)
        s = _parse_matrix(f, _need(d, "s", where), (a.dim, r.dim), f"{where} s")
        t = _parse_matrix(f, _need(d, "t", where), (a.dim, r.dim), f"{where} t")
        g = _parse_matrix(f, _need(d, "gamma_lift", where), (a.dim * a.dim, a.dim), f"{where} gamma_lift")
        pi = _parse_matrix(f, _need(d, "pi", where), (r.dim, a.dim), f"{where} pi")
        of.bialgebroids[name] = LeftBialgebroid(a, r, s, t, g, pi, name)
    bim = of.bimodules
    for name, d in _section(data, "entwinings").items():
        where = f"entwining {name}"
        r = _ref(alg, _need(d, "base", where), "algebra", where)
        s = _ref(bim, _need(d, "monoid", where), "bimodule", where)
        l = _ref(bim, _need(d, "comonoid", where), "bimodule", where)
        for x in (s, l):
            if x.base is not r:
                raise MalformedInput(f"{where}: bimodule {x.name} is not over {r.name}")
        ns, nl, nr = s.dim, l.dim, r.dim
        of.entwinings[name] = EntwiningRecord(
            r, s, l,
            _parse_matrix(f, _need(d, "mul_lift", where), (ns, ns * ns), f"{where} mul_lift"),
            _parse_matrix(f, _need(d, "unit", where), (ns, nr), f"{where} unit"),
            _parse_matrix(f, _need(d, "cmul_lift", where), (nl * nl, nl), f"{where} cmul_lift"),
            _parse_matrix(f, _need(d, "counit", where), (nr, nl), f"{where} counit"),
            _parse_matrix(f, _need(d, "psi_lift", where), (nl * ns, ns * nl), f"{where} psi_lift"))
    for name, d in _section(data, "corings").items():
        where = f"coring {name}"
        if isinstance(d, dict) and "sweedler" in d:
            of.corings[name] = SweedlerRecord(_ref(of.morphisms, d["sweedler"], "morphism", where))
            continue
        a = _ref(alg, _need(d, "over", where), "algebra", where)
        c = _ref(bim, _need(d, "carrier", where), "bimodule", where)
        if c.base is not a:
            raise MalformedInput(f"{where}: carrier is not an {a.name}-bimodule")
        n = c.dim
        of.corings[name] = CoringRecord(
            a, c,
            _parse_matrix(f, _need(d, "cmul_lift", where), (n * n, n), f"{where} cmul_lift"),
            _parse_matrix(f, _need(d, "counit", where), (a.dim, n), f"{where} counit"))


def load(path: str) -> ObjectFile:
    """Read an object file; ``-`` means standard input."""
    import sys

    if path == "-":
        return loads(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc


def dump(of: ObjectFile, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(of))
