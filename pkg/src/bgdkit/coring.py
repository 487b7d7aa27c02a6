"""Corings over algebras, internal corings over monoids in R-bimodules,
group-likes, comodules, coinvariants and the Galois map."""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

from .algebra import Algebra, AlgebraMorphism
from .bimodule import (Bimodule, check_bimodule_map, descend, descend_flat, induced_map,
                       left_unitor, reassoc, regular, right_unitor, tensor, validate_bimodule)
from .entwining import EntwiningStructure, InternalMonoid, _safe, check_left_entwining
from .errors import BgdError, BudgetExceeded, DimensionMismatch, NoSolution, UnsupportedField
from .exactfield import LinMap, cokernel, kernel, kron, kron_all, solve
from .report import Report, compare

DEFAULT_BUDGET = 2 ** 16


@dataclass(eq=False)
class Coring:
    """An A-coring: ``cmul`` maps C -> C (x)_A C and ``counit`` maps C -> A."""

    over: Algebra
    carrier: Bimodule
    cmul: LinMap
    counit: LinMap

    @property
    def carrier_dim(self) -> int:
        return self.carrier.dim

    @property
    def lact(self) -> LinMap:
        return self.carrier.lact

    @property
    def ract(self) -> LinMap:
        return self.carrier.ract

    @property
    def cc(self):
        return tensor(self.carrier, self.carrier)

    @property
    def field(self):
        return self.over.field


def validate_coring(c: Coring) -> Report:
    rep = Report("coring")
    a, x = c.over, c.carrier
    rep.extend(validate_bimodule(x), "bimodule:")
    if not rep.ok:
        return rep
    cc = c.cc
    reg = regular(a)
    if c.cmul.shape != (cc.dim, x.dim) or c.counit.shape != (a.dim, x.dim):
        raise DimensionMismatch("coring structure maps have the wrong shape")
    rep.extend(check_bimodule_map(c.cmul, x, cc, "cmul"))
    rep.extend(check_bimodule_map(c.counit, x, reg, "counit"))

    def coassoc():
        left = tensor(cc, x)
        right = tensor(x, cc)
        lhs = induced_map(c.cmul, x.identity, cc, left) @ c.cmul
        rhs = reassoc(right, left) @ induced_map(x.identity, c.cmul, cc, right) @ c.cmul
        compare(rep, "coassociativity", lhs, rhs, (x.dim,))

    def counit_left():
        lhs = left_unitor(x) @ induced_map(c.counit, x.identity, cc, tensor(reg, x)) @ c.cmul
        compare(rep, "counit-left", lhs, x.identity, (x.dim,))

    def counit_right():
        rhs = right_unitor(x) @ induced_map(x.identity, c.counit, cc, tensor(x, reg)) @ c.cmul
        compare(rep, "counit-right", rhs, x.identity, (x.dim,))

    for label, fn in (("coassociativity", coassoc), ("counit-left", counit_left), ("counit-right", counit_right)):
        _safe(rep, label, fn)
    rep.derived["carrier_dim"] = x.dim
    return rep


# Internal corings


class InternalTensor(Bimodule):
    """C (x)_S C inside R-bimodules: a quotient of C (x)_R C."""

    def __init__(self, carrier: Bimodule, monoid: InternalMonoid, lact: LinMap, ract: LinMap):
        s = monoid.carrier
        cc = tensor(carrier, carrier)
        cs_c = tensor(tensor(carrier, s), carrier)
        c_sc = tensor(carrier, tensor(s, carrier))
        rel = (induced_map(ract, carrier.identity, cs_c, cc)
               - induced_map(carrier.identity, lact, c_sc, cc) @ reassoc(cs_c, c_sc))
        dim, proj, section = cokernel(rel)
        self.outer = cc
        self.proj, self.section = proj, section
        r = carrier.base
        ir = r.identity
        lam = proj @ cc.lact @ kron(ir, section)
        rho = proj @ cc.ract @ kron(section, ir)
        super().__init__(carrier.field, dim, ((r, lam),), ((r, rho),))

    @property
    def flat(self) -> LinMap:
        return self.proj @ self.outer.flat


@dataclass(eq=False)
class InternalCoring:
    """A coring over the monoid S in R-bimodules.

    ``lact``: S (x)_R C -> C, ``ract``: C (x)_R S -> C, ``cmul``: C -> C (x)_S C
    (as the :class:`InternalTensor` ``quotient``), ``counit``: C -> S.
    """

    monoid: InternalMonoid
    carrier: Bimodule
    lact: LinMap
    ract: LinMap
    cmul: LinMap
    counit: LinMap
    quotient: InternalTensor

    @property
    def base(self) -> Algebra:
        return self.carrier.base


def build_internal_coring(monoid, carrier, lact, ract, cmul_raw, counit) -> InternalCoring:
    """``cmul_raw`` maps C into C (x)_R C; it is pushed to the internal quotient."""
    q = InternalTensor(carrier, monoid, lact, ract)
    return InternalCoring(monoid, carrier, lact, ract, q.proj @ cmul_raw, counit, q)


_UNDERLYING: dict = {}


def underlying_algebra(monoid: InternalMonoid) -> Algebra:
    """The k-algebra structure of a monoid in R-bimodules (cached per monoid)."""
    hit = _UNDERLYING.get(id(monoid))
    if hit is not None and hit[0] is monoid:
        return hit[1]
    s = monoid.carrier
    alg = Algebra(s.field, s.dim, monoid.mul @ monoid.ss.proj, monoid.one, s.name)
    _UNDERLYING[id(monoid)] = (monoid, alg)
    return alg


@dataclass(eq=False)
class Flattening:
    coring: Coring
    iso: LinMap
    report: Report


def flatten_coring(ic: InternalCoring, over: Algebra | None = None) -> Flattening:
    """Forget to vector spaces: an A-coring over the algebra underlying S.

    The internal quotient C (x)_S C is compared with the flat C (x)_A C by
    the map induced from the identity of C (x) C; it must be an isomorphism
    commuting with both projections.
    """
    rep = Report("flatten")
    a = over if over is not None else underlying_algebra(ic.monoid)
    s = ic.monoid.carrier
    carrier = ic.carrier
    lam = ic.lact @ tensor(s, carrier).proj
    rho = ic.ract @ tensor(carrier, s).proj
    flat_c = Bimodule.over(a, carrier.dim, lam, rho, name=carrier.name)
    flat_cc = tensor(flat_c, flat_c)
    inner = ic.quotient
    iso = flat_cc.proj @ inner.outer.section @ inner.section
    rep.add("quotient-dims", inner.dim == flat_cc.dim, None, f"{inner.dim} internal vs {flat_cc.dim} flat")
    compare(rep, "projections-commute", iso @ inner.proj @ inner.outer.proj, flat_cc.proj,
            (carrier.dim, carrier.dim))
    rep.add("comparison-invertible", iso.is_invertible())
    rep.derived["internal_quotient_dim"] = inner.dim
    rep.derived["flat_quotient_dim"] = flat_cc.dim
    return Flattening(Coring(a, flat_c, iso @ ic.cmul, ic.counit), iso, rep)


def validate_internal_coring(ic: InternalCoring) -> Report:
    rep = Report("internal-coring")
    s, c = ic.monoid.carrier, ic.carrier
    try:
        rep.extend(check_bimodule_map(ic.lact, tensor(s, c), c, "lact"))
        rep.extend(check_bimodule_map(ic.ract, tensor(c, s), c, "ract"))
        rep.extend(check_bimodule_map(ic.cmul, c, ic.quotient, "cmul"))
        rep.extend(check_bimodule_map(ic.counit, c, s, "counit"))
    except BudgetExceeded:
        raise
    except BgdError as exc:
        rep.add("R-linearity", False, exc.witness, str(exc))
        return rep
    fl = flatten_coring(ic)
    rep.extend(fl.report)
    rep.extend(validate_coring(fl.coring), "flat:")
    rep.derived.update(fl.report.derived)
    return rep


def sweedler_coring(iota: AlgebraMorphism) -> InternalCoring:
    """A (x)_R A with coproduct x (x) y -> (x (x) 1) (x)_A (1 (x) y) and counit
    the multiplication."""
    r, a = iota.source, iota.target
    ia = a.identity
    a_r = Bimodule.over(r, a.dim, a.mul @ kron(iota.map, ia), a.mul @ kron(ia, iota.map), name="A")
    mon = InternalMonoid(a_r, descend(a.mul, tensor(a_r, a_r)), iota.map)
    c = tensor(a_r, a_r)
    lact = descend_flat(c.proj @ kron(a.mul, ia), tensor(a_r, c))
    ract = descend_flat(c.proj @ kron(ia, a.mul), tensor(c, a_r))
    cc = tensor(c, c)
    raw = cc.flat @ kron_all([ia, a.unit, a.unit, ia])
    cmul_raw = descend(raw, c)
    counit = descend(a.mul, c)
    return build_internal_coring(mon, c, lact, ract, cmul_raw, counit)


@dataclass(eq=False)
class EntwiningCoring:
    coring: InternalCoring | None
    coring_report: Report
    entwining_report: Report

    @property
    def equivalent(self) -> bool:
        return self.coring_report.ok == self.entwining_report.ok


def coring_from_entwining(e: EntwiningStructure) -> EntwiningCoring:
    """The datum (L (x) S, (L (x) mu)(psi (x) S), L (x) mu, cmul (x) S, counit (x) S),
    validated as a coring and compared with the entwining axioms."""
    ent_rep = check_left_entwining(e)
    rep = Report("coring-from-entwining")
    try:
        ic = _entwining_coring(e)
    except BudgetExceeded:
        raise
    except BgdError as exc:
        rep.add("construction", False, exc.witness, str(exc))
        return EntwiningCoring(None, rep, ent_rep)
    rep.extend(validate_internal_coring(ic))
    rep.derived["carrier_dim"] = ic.carrier.dim
    return EntwiningCoring(ic, rep, ent_rep)


def _entwining_coring(e: EntwiningStructure) -> InternalCoring:
    mon, com, psi = e.monoid, e.comonoid, e.psi
    s, l = mon.carrier, com.carrier
    ss = mon.ss
    c = tensor(l, s)
    sl = tensor(s, l)
    l_ss = tensor(l, ss)
    c_s = tensor(c, s)
    l_mu = induced_map(l.identity, mon.mul, l_ss, c)
    ract = l_mu @ reassoc(c_s, l_ss)
    s_c = tensor(s, c)
    sl_s = tensor(sl, s)
    lact = ract @ induced_map(psi, s.identity, sl_s, c_s) @ reassoc(s_c, sl_s)
    ll_s = tensor(com.ll, s)
    cc = tensor(c, c)
    one = mon.one
    j_raw = cc.flat @ kron_all([l.identity, one, l.identity, s.identity])
    j = descend_flat(j_raw, ll_s)
    cmul_raw = j @ induced_map(com.cmul, s.identity, c, ll_s)
    reg = regular(e.base)
    counit = left_unitor(s) @ induced_map(com.counit, s.identity, c, tensor(reg, s))
    return build_internal_coring(mon, c, lact, ract, cmul_raw, counit)


# Group-likes and comodules


def check_grouplike(c: Coring, g: LinMap) -> Report:
    rep = Report("grouplike")
    if g.shape != (c.carrier_dim, 1):
        raise DimensionMismatch(f"group-like candidate has shape {g.shape}, expected ({c.carrier_dim}, 1)")
    compare(rep, "gcp", c.cmul @ g, c.cc.proj @ kron(g, g))
    compare(rep, "gcu", c.counit @ g, c.over.unit)
    return rep


def enumerate_grouplikes(c: Coring, budget: int | None = None) -> list[LinMap]:
    """All group-likes of a coring over F_p by exhaustive search."""
    f = c.field
    if f.p is None:
        raise UnsupportedField("group-like enumeration needs a finite field")
    if budget is None:
        budget = int(os.environ.get("BGD_BUDGET", DEFAULT_BUDGET))
    n = c.carrier_dim
    if f.p ** n > budget:
        raise BudgetExceeded(f"{f.p}^{n} candidates exceed the budget {budget}")
    out = []
    proj, cmul, counit, unit = c.cc.proj, c.cmul, c.counit, c.over.unit
    for values in product(range(f.p), repeat=n):
        g = LinMap.from_entries(f, n, 1, [f.scalar(v) for v in values])
        if counit @ g == unit and cmul @ g == proj @ kron(g, g):
            out.append(g)
    return out


_RIGHT_REGULAR: dict = {}


def right_regular(a: Algebra) -> Bimodule:
    """A as a right A-module only."""
    hit = _RIGHT_REGULAR.get(id(a))
    if hit is not None and hit.rights[0][0] is a:
        return hit
    m = Bimodule(a.field, a.dim, (), ((a, a.mul),), name="A")
    _RIGHT_REGULAR[id(a)] = m
    return m


@dataclass(eq=False)
class Comodule:
    """A right C-comodule: a right A-module with coaction M -> M (x)_A C."""

    carrier: Bimodule
    coaction: LinMap


def check_comodule(c: Coring, m: Comodule) -> Report:
    rep = Report("comodule")
    x = m.carrier
    mc = tensor(x, c.carrier)
    rep.extend(check_bimodule_map(m.coaction, x, mc, "coaction"))

    def comcp():
        a = tensor(mc, c.carrier)
        b = tensor(x, c.cc)
        lhs = induced_map(m.coaction, c.carrier.identity, mc, a) @ m.coaction
        rhs = reassoc(b, a) @ induced_map(x.identity, c.cmul, mc, b) @ m.coaction
        compare(rep, "comcp", lhs, rhs, (x.dim,))

    def comcu():
        reg = regular(c.over)
        lhs = right_unitor(x) @ induced_map(x.identity, c.counit, mc, tensor(x, reg)) @ m.coaction
        compare(rep, "comcu", lhs, x.identity, (x.dim,))

    _safe(rep, "comcp", comcp)
    _safe(rep, "comcu", comcu)
    return rep


def coaction_from_grouplike(c: Coring, g: LinMap) -> Comodule:
    """A as a right comodule: a -> 1 (x) g.a."""
    a = c.over
    m = right_regular(a)
    mc = tensor(m, c.carrier)
    tau = mc.proj @ kron(a.unit, c.ract @ kron(g, a.identity))
    return Comodule(m, tau)


def grouplike_of_comodule(c: Coring, m: Comodule) -> LinMap:
    """Recover g from a coaction on A: identify A (x)_A C with C and evaluate at 1."""
    a = c.over
    mc = tensor(m.carrier, c.carrier)
    to_c = descend(c.lact, mc)
    return to_c @ m.coaction @ a.unit


def coinvariants(c: Coring, m: Comodule, g: LinMap):
    """Equalizer of the coaction and x -> x (x) g."""
    mc = tensor(m.carrier, c.carrier)
    return kernel(m.coaction - mc.proj @ kron(m.carrier.identity, g))


@dataclass(eq=False)
class GaloisResult:
    coinv_dim: int
    coinv_incl: LinMap
    b_algebra: Algebra
    cb: Coring
    kappa: LinMap
    rank: int
    invertible: bool
    report: Report


def galois(c: Coring, g: LinMap) -> GaloisResult:
    """Coinvariant subalgebra B, the coring A (x)_B A and kappa(a (x) b) = a.g.b."""
    rep = Report("galois")
    a = c.over
    f = a.field
    ia = a.identity
    gl = check_grouplike(c, g)
    rep.extend(gl)
    com = coaction_from_grouplike(c, g)
    bdim, incl = coinvariants(c, com, g)
    try:
        mu_b, _ = solve(incl, a.mul @ kron(incl, incl))
        eta_b, _ = solve(incl, a.unit)
    except NoSolution as exc:
        raise BgdError("coinvariants are not a subalgebra") from exc
    b = Algebra(f, bdim, mu_b, eta_b, "B")
    lower = Bimodule(f, a.dim, ((a, a.mul),), ((b, a.mul @ kron(ia, incl)),), name="A")
    upper = Bimodule(f, a.dim, ((b, a.mul @ kron(incl, ia)),), ((a, a.mul),), name="A")
    cb_mod = tensor(lower, upper)
    cbcb = tensor(cb_mod, cb_mod)
    cb_cmul = descend(cbcb.flat @ kron_all([ia, a.unit, a.unit, ia]), cb_mod)
    cb_counit = descend(a.mul, cb_mod)
    cb = Coring(a, cb_mod, cb_cmul, cb_counit)
    kappa = descend(c.lact @ kron(ia, c.ract @ kron(g, ia)), cb_mod)
    rank = kappa.rank()
    invertible = kappa.rows == kappa.cols and rank == kappa.rows
    rep.add("coinvariants-contain-unit", kernel_contains(incl, a.unit))
    rep.extend(check_bimodule_map(kappa, cb_mod, c.carrier, "kappa"))
    compare(rep, "kappaprop", kappa @ cb_mod.proj @ kron(a.unit, a.unit), g)
    try:
        compare(rep, "kappa-comultiplicative", c.cmul @ kappa,
                induced_map(kappa, kappa, cbcb, c.cc) @ cb_cmul, (cb_mod.dim,))
    except BudgetExceeded:
        raise
    except BgdError as exc:
        rep.add("kappa-comultiplicative", False, exc.witness, str(exc))
    compare(rep, "kappa-counital", c.counit @ kappa, cb_counit, (cb_mod.dim,))
    rep.derived.update({"coinvariant_dim": bdim, "cb_dim": cb_mod.dim, "carrier_dim": c.carrier_dim,
                        "kappa_rank": rank, "galois": invertible})
    return GaloisResult(bdim, incl, b, cb, kappa, rank, invertible, rep)


def kernel_contains(incl: LinMap, v: LinMap) -> bool:
    try:
        solve(incl, v)
        return True
    except NoSolution:
        return False
