"""Monoids, comonoids and entwining structures in R-R-bimodules."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra
from .bimodule import (Bimodule, DualPair, check_bimodule_map, dual_of_tensor, induced_map,
                       left_unitor, reassoc, regular, right_unitor, tensor, transpose, unit_dual)
from .errors import BgdError, BudgetExceeded, DimensionMismatch
from .exactfield import LinMap, kron
from .report import Report, compare


@dataclass(eq=False)
class InternalMonoid:
    """``mul`` is defined on S (x)_R S; ``unit`` maps R -> S."""

    carrier: Bimodule
    mul: LinMap
    unit: LinMap

    @property
    def base(self) -> Algebra:
        return self.carrier.base

    @property
    def ss(self):
        return tensor(self.carrier, self.carrier)

    @property
    def one(self) -> LinMap:
        """The image of 1_R."""
        return self.unit @ self.base.unit


@dataclass(eq=False)
class InternalComonoid:
    """``cmul`` maps L -> L (x)_R L; ``counit`` maps L -> R."""

    carrier: Bimodule
    cmul: LinMap
    counit: LinMap

    @property
    def base(self) -> Algebra:
        return self.carrier.base

    @property
    def ll(self):
        return tensor(self.carrier, self.carrier)


@dataclass(eq=False)
class EntwiningStructure:
    """Left entwining: psi maps S (x)_R L -> L (x)_R S.

    A right entwining uses the same container with psi: C (x)_R P -> P (x)_R C
    where P is the monoid and C the comonoid.
    """

    monoid: InternalMonoid
    comonoid: InternalComonoid
    psi: LinMap

    @property
    def base(self) -> Algebra:
        return self.monoid.base


def _safe(rep: Report, label: str, fn):
    """Run a check that may raise; an exception becomes a failed entry."""
    try:
        return fn()
    except BudgetExceeded:
        raise
    except BgdError as exc:
        rep.add(label, False, exc.witness, str(exc))
        return None


def check_monoid(mon: InternalMonoid) -> Report:
    rep = Report("monoid")
    s = mon.carrier
    r = mon.base
    ss = mon.ss
    reg = regular(r)
    rep.extend(check_bimodule_map(mon.mul, ss, s, "mul"))
    rep.extend(check_bimodule_map(mon.unit, reg, s, "unit"))

    def assoc():
        left = tensor(ss, s)
        right = tensor(s, ss)
        lhs = mon.mul @ induced_map(mon.mul, s.identity, left, ss) @ left.flat
        rhs = mon.mul @ induced_map(s.identity, mon.mul, right, ss) @ right.flat
        compare(rep, "associativity", lhs, rhs, left.leaf_dims)

    def units():
        lu = mon.mul @ induced_map(mon.unit, s.identity, tensor(reg, s), ss)
        compare(rep, "left-unit", lu, left_unitor(s), (r.dim, s.dim))
        ru = mon.mul @ induced_map(s.identity, mon.unit, tensor(s, reg), ss)
        compare(rep, "right-unit", ru, right_unitor(s), (s.dim, r.dim))

    _safe(rep, "associativity", assoc)
    _safe(rep, "units", units)
    return rep


def check_comonoid(com: InternalComonoid) -> Report:
    rep = Report("comonoid")
    l = com.carrier
    r = com.base
    ll = com.ll
    reg = regular(r)
    rep.extend(check_bimodule_map(com.cmul, l, ll, "cmul"))
    rep.extend(check_bimodule_map(com.counit, l, reg, "counit"))

    def coassoc():
        left = tensor(ll, l)
        right = tensor(l, ll)
        lhs = induced_map(com.cmul, l.identity, ll, left) @ com.cmul
        rhs = reassoc(right, left) @ induced_map(l.identity, com.cmul, ll, right) @ com.cmul
        compare(rep, "coassociativity", lhs, rhs, (l.dim,))

    def counits():
        lhs = left_unitor(l) @ induced_map(com.counit, l.identity, ll, tensor(reg, l)) @ com.cmul
        compare(rep, "left-counit", lhs, l.identity, (l.dim,))
        rhs = right_unitor(l) @ induced_map(l.identity, com.counit, ll, tensor(l, reg)) @ com.cmul
        compare(rep, "right-counit", rhs, l.identity, (l.dim,))

    _safe(rep, "coassociativity", coassoc)
    _safe(rep, "counits", counits)
    return rep


def check_left_entwining(e: EntwiningStructure) -> Report:
    """The four left entwining identities, each compared on raw generators."""
    rep = Report("left-entwining")
    mon, com, psi = e.monoid, e.comonoid, e.psi
    s, l = mon.carrier, com.carrier
    r = e.base
    reg = regular(r)
    sl, ls = tensor(s, l), tensor(l, s)
    if psi.shape != (ls.dim, sl.dim):
        raise DimensionMismatch(f"psi has shape {psi.shape}, expected ({ls.dim}, {sl.dim})")
    rep.extend(check_bimodule_map(psi, sl, ls, "psi"))
    one = mon.one

    def entwi():
        lhs = psi @ sl.proj @ kron(one, l.identity)
        rhs = ls.proj @ kron(l.identity, one)
        compare(rep, "entwi", lhs, rhs, (l.dim,))

    def entwii():
        lhs = left_unitor(s) @ induced_map(com.counit, s.identity, ls, tensor(reg, s)) @ psi
        rhs = right_unitor(s) @ induced_map(s.identity, com.counit, sl, tensor(s, reg))
        compare(rep, "entwii", lhs @ sl.proj, rhs @ sl.proj, (s.dim, l.dim))

    def entwiii():
        ss = mon.ss
        start = tensor(ss, l)
        lhs = psi @ induced_map(mon.mul, l.identity, start, sl) @ start.flat
        a = tensor(s, sl)
        b = tensor(s, ls)
        c = tensor(sl, s)
        d = tensor(ls, s)
        f = tensor(l, ss)
        step = induced_map(s.identity, psi, a, b) @ a.flat
        step = induced_map(psi, s.identity, c, d) @ reassoc(b, c) @ step
        step = induced_map(l.identity, mon.mul, f, ls) @ reassoc(d, f) @ step
        compare(rep, "entwiii", lhs, step, start.leaf_dims)

    def entwiv():
        ll = com.ll
        a = tensor(s, ll)
        b = tensor(sl, l)
        c = tensor(ls, l)
        d = tensor(l, sl)
        f = tensor(l, ls)
        g = tensor(ll, s)
        step = induced_map(s.identity, com.cmul, sl, a)
        step = induced_map(psi, l.identity, b, c) @ reassoc(a, b) @ step
        step = induced_map(l.identity, psi, d, f) @ reassoc(c, d) @ step
        step = reassoc(f, g) @ step
        rhs = induced_map(com.cmul, s.identity, ls, g) @ psi
        compare(rep, "entwiv", step @ sl.proj, rhs @ sl.proj, (s.dim, l.dim))

    for label, fn in (("entwi", entwi), ("entwii", entwii), ("entwiii", entwiii), ("entwiv", entwiv)):
        _safe(rep, label, fn)
    return rep


def check_right_entwining(e: EntwiningStructure) -> Report:
    """Right entwining psi: C (x) P -> P (x) C with P = e.monoid, C = e.comonoid."""
    rep = Report("right-entwining")
    mon, com, psi = e.monoid, e.comonoid, e.psi
    p, c = mon.carrier, com.carrier
    r = e.base
    reg = regular(r)
    cp, pc = tensor(c, p), tensor(p, c)
    if psi.shape != (pc.dim, cp.dim):
        raise DimensionMismatch(f"psi has shape {psi.shape}, expected ({pc.dim}, {cp.dim})")
    rep.extend(check_bimodule_map(psi, cp, pc, "psi"))
    one = mon.one

    def rentwi():
        lhs = psi @ cp.proj @ kron(c.identity, one)
        rhs = pc.proj @ kron(one, c.identity)
        compare(rep, "rentwi", lhs, rhs, (c.dim,))

    def rentwii():
        lhs = right_unitor(p) @ induced_map(p.identity, com.counit, pc, tensor(p, reg)) @ psi
        rhs = left_unitor(p) @ induced_map(com.counit, p.identity, cp, tensor(reg, p))
        compare(rep, "rentwii", lhs @ cp.proj, rhs @ cp.proj, (c.dim, p.dim))

    def rentwiii():
        cc = com.ll
        a = tensor(cc, p)
        b = tensor(c, cp)
        f = tensor(c, pc)
        g = tensor(cp, c)
        h = tensor(pc, c)
        k = tensor(p, cc)
        step = induced_map(com.cmul, p.identity, cp, a)
        step = induced_map(c.identity, psi, b, f) @ reassoc(a, b) @ step
        step = induced_map(psi, c.identity, g, h) @ reassoc(f, g) @ step
        lhs = step
        rhs = reassoc(k, h) @ induced_map(p.identity, com.cmul, pc, k) @ psi
        compare(rep, "rentwiii", lhs @ cp.proj, rhs @ cp.proj, (c.dim, p.dim))

    def rentwiv():
        pp = mon.ss
        start = tensor(c, pp)
        lhs = psi @ induced_map(c.identity, mon.mul, start, cp) @ start.flat
        a = tensor(cp, p)
        b = tensor(pc, p)
        f = tensor(p, cp)
        g = tensor(p, pc)
        h = tensor(pp, c)
        step = reassoc(start, a) @ start.flat
        step = induced_map(psi, p.identity, a, b) @ step
        step = induced_map(p.identity, psi, f, g) @ reassoc(b, f) @ step
        step = induced_map(mon.mul, c.identity, h, pc) @ reassoc(g, h) @ step
        compare(rep, "rentwiv", lhs, step, start.leaf_dims)

    for label, fn in (("rentwi", rentwi), ("rentwii", rentwii), ("rentwiii", rentwiii), ("rentwiv", rentwiv)):
        _safe(rep, label, fn)
    return rep


@dataclass(eq=False)
class DualEntwining:
    """The right entwining (L^r, S^r, psi^r) together with the duals used."""

    structure: EntwiningStructure
    dual_s: DualPair
    dual_l: DualPair
    dual_ss: DualPair
    dual_ll: DualPair
    dual_sl: DualPair
    dual_ls: DualPair


def dualize_entwining(e: EntwiningStructure, dual_s: DualPair, dual_l: DualPair) -> DualEntwining:
    """Transpose every structure map of a left entwining.

    The monoid L^r has multiplication cmul^r and unit counit^r; the comonoid
    S^r has comultiplication mul^r and counit unit^r; psi^r is the transpose
    of psi between (L (x) S)^r = S^r (x) L^r and (S (x) L)^r = L^r (x) S^r.
    """
    mon, com = e.monoid, e.comonoid
    if dual_s.object is not mon.carrier or dual_l.object is not com.carrier:
        raise DimensionMismatch("duals do not belong to the given carriers")
    r = e.base
    du = unit_dual(r)
    dss = dual_of_tensor(dual_s, dual_s)
    dll = dual_of_tensor(dual_l, dual_l)
    dsl = dual_of_tensor(dual_s, dual_l)
    dls = dual_of_tensor(dual_l, dual_s)
    p_mul = transpose(com.cmul, dual_l, dll)
    p_unit = transpose(com.counit, dual_l, du)
    c_cmul = transpose(mon.mul, dss, dual_s)
    c_counit = transpose(mon.unit, du, dual_s)
    psi_r = transpose(e.psi, dsl, dls)
    monoid = InternalMonoid(dual_l.dual, p_mul, p_unit)
    comonoid = InternalComonoid(dual_s.dual, c_cmul, c_counit)
    return DualEntwining(EntwiningStructure(monoid, comonoid, psi_r), dual_s, dual_l, dss, dll, dsl, dls)
