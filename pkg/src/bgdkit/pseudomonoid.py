"""Pseudo-monoids in the bicategory of bimodules and strong monoidal maps into
the canonical pseudo-monoid over R^e.

Composites of the A-(A (x) A)-bimodule M are kept in reduced form:
``M o_k N`` is M tensored with N over the k-th right A-slot of M, which is
isomorphic to M (x)_{A(x)A} (N (x) A) for k = 0 and to
M (x)_{A(x)A} (A (x) N) for k = 1.  Coherence cells are explicit matrices and
bracketings are compared after :func:`reassoc`.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .algebra import Algebra, AlgebraMorphism, check_morphism, chi_from_st, enveloping, opposite
from .bialgebroid import LeftBialgebroid
from .bimodule import (Bimodule, check_bimodule_map, descend, descend_flat, induced_map,
                       reassoc, regular, right_unitor, tensor)
from .entwining import _safe
from .errors import ConditionFailure, IdentificationFailure, NotBalanced
from .exactfield import LinMap, compose_first_factor, kron, kron_all, permute_factors, unravel
from .report import Report, compare


@dataclass(eq=False)
class PseudoMonoidData:
    """(A, M, J, l, r, a).

    ``m_carrier`` has one left and two right A-slots, ``j_carrier`` one left
    A-slot.  ``l`` maps M o_0 J -> A, ``r`` maps M o_1 J -> A and ``a`` maps
    M o_0 M -> M o_1 M.  ``aux`` holds auxiliary isomorphisms by name.
    """

    monoid: Algebra
    m_carrier: Bimodule
    j_carrier: Bimodule
    l: LinMap
    r: LinMap
    a: LinMap
    aux: dict = dc_field(default_factory=dict)

    @property
    def field(self):
        return self.monoid.field

    @property
    def mj1(self):
        return tensor(self.m_carrier, self.j_carrier, 0, 0)

    @property
    def mj2(self):
        return tensor(self.m_carrier, self.j_carrier, 1, 0)

    @property
    def mm1(self):
        return tensor(self.m_carrier, self.m_carrier, 0, 0)

    @property
    def mm2(self):
        return tensor(self.m_carrier, self.m_carrier, 1, 0)


@dataclass(eq=False)
class StrongMonoidalData:
    """chi: R^e -> A, sigma: m o (chi* (x) chi*) -> M, iota: R -> J.

    The target chi* (x)_A M is identified with M itself, and chi* (x)_A J with J.
    """

    base: Algebra
    chi: AlgebraMorphism
    sigma: LinMap
    iota: LinMap


@lru_cache(maxsize=None)
def canonical_pseudomonoid(r: Algebra) -> PseudoMonoidData:
    """(R^e, m, j) with m = R (x) R (x) R.

    (a (x) b).xyz = ax (x) y (x) zb, xyz.(a (x) b) in the first slot is
    xa (x) by (x) z and in the second x (x) yc (x) dz; j = R with
    (a (x) b).x = axb.
    """
    f = r.field
    n = r.dim
    re = enveloping(r)
    one = LinMap.identity(f, n)
    mul = r.mul
    mul3 = mul @ kron(mul, one)
    lam = kron_all([mul, one, mul]) @ permute_factors(f, [n] * 5, [0, 2, 3, 4, 1])
    rho1 = kron_all([mul, mul, one]) @ permute_factors(f, [n] * 5, [0, 3, 4, 1, 2])
    rho2 = kron_all([one, mul, mul]) @ permute_factors(f, [n] * 5, [0, 1, 3, 4, 2])
    m = Bimodule(f, n ** 3, ((re, lam),), ((re, rho1), (re, rho2)), name="m")
    j = Bimodule(f, n, ((re, mul3),), (), name="j")

    mj1 = tensor(m, j, 0, 0)
    l = descend(kron(mul3, one) @ permute_factors(f, [n] * 4, [0, 3, 1, 2]), mj1)
    mj2 = tensor(m, j, 1, 0)
    rr = descend(kron(one, mul3) @ permute_factors(f, [n] * 4, [0, 1, 3, 2]), mj2)
    mm1, mm2 = tensor(m, m, 0, 0), tensor(m, m, 1, 0)
    u = r.unit
    raw = kron_all([mul, one, u, u, mul, one]) @ permute_factors(f, [n] * 6, [0, 3, 4, 5, 1, 2])
    a = descend(mm2.proj @ raw, mm1)
    return PseudoMonoidData(re, m, j, l, rr, a)


def _check_iso(rep: Report, label: str, f: LinMap, src: Bimodule, dst: Bimodule):
    rep.extend(check_bimodule_map(f, src, dst, label))
    ok = f.is_invertible()
    rep.add(f"{label}-invertible", ok, None if ok else (1,), f"rank {f.rank()} of {f.rows}x{f.cols}")


def pentagon_sides(p: PseudoMonoidData):
    """Both pentagon composites as maps out of ((xy)z)w, in the bracketing
    tensor(M, M o_0 M, 0, 0), landing in tensor(M o_1 M, M, 2, 0)."""
    m = p.m_carrier
    ident = m.identity
    m11, m12 = p.mm1, p.mm2
    a = p.a
    start2 = tensor(m, m11, 0, 0)
    start1 = tensor(m11, m, 0, 0)
    # a at the root, then a at the root of (xy)(zw)
    s1 = induced_map(a, ident, start1, tensor(m12, m, 0, 0))
    mid = tensor(m11, m, 2, 0)
    s1 = induced_map(a, ident, mid, tensor(m12, m, 2, 0)) @ reassoc(tensor(m12, m, 0, 0), mid, [0, 2, 1]) @ s1
    side1 = s1 @ reassoc(start2, start1)
    # a inside the left branch, a at the root, a inside the right branch
    s2 = induced_map(ident, a, start2, tensor(m, m12, 0, 0))
    q = tensor(m11, m, 1, 0)
    s2 = induced_map(a, ident, q, tensor(m12, m, 1, 0)) @ reassoc(tensor(m, m12, 0, 0), q) @ s2
    q = tensor(m, m11, 1, 0)
    s2 = induced_map(ident, a, q, tensor(m, m12, 1, 0)) @ reassoc(tensor(m12, m, 1, 0), q) @ s2
    side2 = reassoc(tensor(m, m12, 1, 0), tensor(m12, m, 2, 0)) @ s2
    return side1, side2, start2


def triangle_sides(p: PseudoMonoidData):
    """Both triangle composites out of (x 1) y, in the bracketing
    tensor(M, M o_1 J, 0, 0), landing in M."""
    m, j = p.m_carrier, p.j_carrier
    ident = m.identity
    reg = regular(p.monoid)
    start = tensor(m, p.mj2, 0, 0)
    via_r = right_unitor(m, 0) @ induced_map(ident, p.r, start, tensor(m, reg, 0, 0))
    q = tensor(p.mm1, j, 1, 0)
    step = induced_map(p.a, j.identity, q, tensor(p.mm2, j, 1, 0)) @ reassoc(start, q)
    q2 = tensor(m, p.mj1, 1, 0)
    step = reassoc(tensor(p.mm2, j, 1, 0), q2) @ step
    via_l = right_unitor(m, 1) @ induced_map(ident, p.l, q2, tensor(m, reg, 1, 0)) @ step
    return via_l, via_r, start


def check_pseudomonoid(p: PseudoMonoidData) -> Report:
    """l, r, a are invertible bimodule maps; pentagon and triangle hold."""
    rep = Report("pseudomonoid")
    reg = regular(p.monoid)
    _safe(rep, "l", lambda: _check_iso(rep, "l", p.l, p.mj1, reg))
    _safe(rep, "r", lambda: _check_iso(rep, "r", p.r, p.mj2, reg))
    _safe(rep, "a", lambda: _check_iso(rep, "a", p.a, p.mm1, p.mm2))

    def pentagon():
        side1, side2, start = pentagon_sides(p)
        compare(rep, "pentagon", side1 @ start.flat, side2 @ start.flat, start.leaf_dims)

    def triangle():
        via_l, via_r, start = triangle_sides(p)
        compare(rep, "triangle", via_l @ start.flat, via_r @ start.flat, start.leaf_dims)

    _safe(rep, "pentagon", pentagon)
    _safe(rep, "triangle", triangle)
    rep.derived["m_dim"] = p.m_carrier.dim
    rep.derived["j_dim"] = p.j_carrier.dim
    return rep


def _on_classes(raw: LinMap, q, extra: int) -> LinMap:
    """Pass a map defined on A (x) A (x) k^extra to (A (x)_R A) (x) k^extra."""
    ident = LinMap.identity(q.field, extra)
    g = raw @ kron(q.section, ident)
    bad = (g @ kron(q.proj, ident) - raw).first_nonzero_column()
    if bad is not None:
        raise NotBalanced("map does not factor through A (x)_R A", unravel(bad, (q.left.dim, q.right.dim, extra)))
    return g


def chi_star(r: Algebra, a: Algebra, chi: LinMap) -> Bimodule:
    """A as a left R^e-module through chi and a right A-module."""
    return _chi_star(r, a, chi)


_CHI_STAR: dict = {}


def _chi_star(r, a, chi):
    key = (id(r), id(a), id(chi))
    hit = _CHI_STAR.get(key)
    if hit is not None and hit[0] is chi:
        return hit[1]
    re = enveloping(r)
    mod = Bimodule(a.field, a.dim, ((re, a.mul @ kron(chi, a.identity)),), ((a, a.mul),), name="chi*")
    _CHI_STAR[key] = (chi, mod)
    return mod


def sigma_domain(r: Algebra, a: Algebra, chi: LinMap):
    """m o (chi* (x) chi*): generators xyz (x) a1 (x) a2."""
    m = canonical_pseudomonoid(r).m_carrier
    cs = chi_star(r, a, chi)
    return tensor(tensor(m, cs, 0, 0), cs, 1, 0)


def phi_map(b: LeftBialgebroid, chi: LinMap) -> LinMap:
    """xyz (x) a1 (x) a2 -> [s(x)a1 (x) s(y)t(z)a2] on A (x)_R A."""
    a, r = b.total, b.base
    f = b.field
    dom = sigma_domain(r, a, chi)
    n = r.dim
    left = a.mul @ kron(b.s, a.identity)
    st = a.mul @ kron(b.s, b.t)
    right = a.mul @ kron(st, a.identity)
    raw = kron(left, right) @ permute_factors(f, [n, n, n, a.dim, a.dim], [0, 3, 1, 2, 4])
    return descend_flat(b.LL.proj @ raw, dom)


def phi_inverse(b: LeftBialgebroid, chi: LinMap) -> LinMap:
    """[x (x) y] -> 1 1 1 (x) x (x) y."""
    a, r = b.total, b.base
    dom = sigma_domain(r, a, chi)
    u = r.unit
    raw = dom.flat @ kron(kron_all([u, u, u]), LinMap.identity(b.field, a.dim * a.dim))
    return descend(raw, b.LL)


def _chi(b: LeftBialgebroid) -> AlgebraMorphism:
    a, r = b.total, b.base
    return chi_from_st(AlgebraMorphism(r, a, b.s), AlgebraMorphism(opposite(r), a, b.t))


def pseudomonoid_from_bialgebroid(b: LeftBialgebroid):
    """(A, M_A, J_A, l_A, r_A, a_A) with sigma = phi and iota the identity of R.

    Assumes ``b`` passes validation; failures of the construction surface as
    NotBalanced or IdentificationFailure.
    """
    a, r = b.total, b.base
    f = b.field
    ia, ir = a.identity, r.identity
    mm = b.M
    ll = b.LL
    j = Bimodule(f, r.dim, ((a, b.pi @ a.mul @ kron(ia, b.s)),), (), name="J")

    # l[x (x) y] o u = s(pi(x s(u))) y
    raw = kron(b.s @ b.pi @ a.mul @ kron(ia, b.s), ia) @ permute_factors(f, [a.dim, a.dim, r.dim], [0, 2, 1])
    l = descend(_on_classes(a.mul @ raw, ll, r.dim), tensor(mm, j, 0, 0))
    # r[x (x) y] o u = t(pi(y t(u))) x
    raw = kron(b.t @ b.pi @ a.mul @ kron(ia, b.t), ia) @ permute_factors(f, [a.dim, a.dim, r.dim], [1, 2, 0])
    rr = descend(_on_classes(a.mul @ raw, ll, r.dim), tensor(mm, j, 1, 0))

    oo = b.one_one
    lll, rll = tensor(ll, b.L), tensor(b.L, ll)
    mm1, mm2 = tensor(mm, mm, 0, 0), tensor(mm, mm, 1, 0)
    # xi[x (x) y (x) z] = [1 (x) z] o_0 [x (x) y]
    raw = kron(b.rho2 @ kron(oo, ia), ll.proj) @ permute_factors(f, [a.dim] * 3, [2, 0, 1])
    xi = descend_flat(mm1.proj @ raw, lll)
    # zeta[x (x) y (x) z] = [x (x) 1] o_1 [y (x) z]
    zeta = descend_flat(mm2.proj @ kron(b.rho1 @ kron(oo, ia), ll.proj), rll)
    # inverses: [x (x) y] o_0 n -> [x.n (x) y] and [x (x) y] o_1 n -> [x (x) y.n]
    raw = kron(b.lambda_m, ia) @ permute_factors(f, [a.dim, a.dim, ll.dim], [0, 2, 1])
    xi_inv = descend(_on_classes(lll.proj @ raw, ll, ll.dim), mm1)
    zeta_inv = descend(_on_classes(rll.proj @ kron(ia, b.lambda_m), ll, ll.dim), mm2)
    for label, g, h in (("xi", xi, xi_inv), ("zeta", zeta, zeta_inv)):
        if g @ h != LinMap.identity(f, g.rows) or h @ g != LinMap.identity(f, h.rows):
            raise IdentificationFailure(f"{label} and its candidate inverse do not compose to the identity")
    assoc = zeta @ reassoc(lll, rll) @ xi_inv

    # l^-1(x) = [1 (x) x] o_0 1 and r^-1(x) = [x (x) 1] o_1 1
    u = r.unit
    l_inv = tensor(mm, j, 0, 0).proj @ kron(b.rho2 @ kron(oo, ia), u)
    r_inv = tensor(mm, j, 1, 0).proj @ kron(b.rho1 @ kron(oo, ia), u)

    chi = _chi(b)
    sigma = phi_map(b, chi.map)
    aux = {"l_inv": l_inv, "r_inv": r_inv, "xi": xi, "zeta": zeta, "xi_inv": xi_inv, "zeta_inv": zeta_inv, "phi": sigma,
           "phi_inv": phi_inverse(b, chi.map)}
    p = PseudoMonoidData(a, mm, j, l, rr, assoc, aux)
    return p, StrongMonoidalData(r, chi, sigma, ir)


def canonical_strong_monoidal(r: Algebra):
    """The canonical pseudo-monoid with chi the identity of R^e;
    sigma(xyz (x) a1 (x) a2) = xyz.a1.a2 in the two right slots."""
    p = canonical_pseudomonoid(r)
    re = p.monoid
    chi = AlgebraMorphism(re, re, re.identity)
    m = p.m_carrier
    rho1, rho2 = m.rights[0][1], m.rights[1][1]
    raw = rho2 @ kron(rho1, re.identity)
    sigma = descend_flat(raw, sigma_domain(r, re, chi.map))
    return p, StrongMonoidalData(r, chi, sigma, r.identity)


def _sigma_raw(p: PseudoMonoidData, sm: StrongMonoidalData) -> LinMap:
    return sm.sigma @ sigma_domain(sm.base, p.monoid, sm.chi.map).flat


def check_strong_monoidal(p: PseudoMonoidData, sm: StrongMonoidalData) -> Report:
    """sigma and iota are invertible module maps and (Lc), (Rc), (Cc) hold
    on generators."""
    rep = Report("strong-monoidal")
    r, a = sm.base, p.monoid
    f = a.field
    n, d = r.dim, a.dim
    canon = canonical_pseudomonoid(r)
    chi = sm.chi.map
    dom = sigma_domain(r, a, chi)
    mm = p.m_carrier
    ia = a.identity
    rep.extend(check_morphism(sm.chi), "chi-")
    target = Bimodule(f, mm.dim, ((enveloping(r), mm.lefts[0][1] @ kron(chi, mm.identity)),), mm.rights)
    _safe(rep, "sigma", lambda: _check_iso(rep, "sigma", sm.sigma, dom, target))
    jt = Bimodule(f, p.j_carrier.dim, ((enveloping(r), p.j_carrier.lefts[0][1] @ kron(chi, p.j_carrier.identity)),))
    _safe(rep, "iota", lambda: _check_iso(rep, "iota", sm.iota, canon.j_carrier, jt))
    sig = _sigma_raw(p, sm)
    u = a.unit
    i3 = LinMap.identity(f, n ** 3)

    def lc():
        lhs = kron(sig @ kron_all([i3, u, ia]), sm.iota) @ permute_factors(f, [n, n, n, n, d], [0, 1, 2, 4, 3])
        lhs = p.l @ p.mj1.proj @ lhs
        rhs = a.mul @ kron(chi @ canon.l @ canon.mj1.proj, ia)
        compare(rep, "Lc", lhs, rhs, (n, n, n, n, d))

    def rc():
        lhs = kron(sig @ kron_all([i3, ia, u]), sm.iota) @ permute_factors(f, [n, n, n, n, d], [0, 1, 2, 4, 3])
        lhs = p.r @ p.mj2.proj @ lhs
        rhs = a.mul @ kron(chi @ canon.r @ canon.mj2.proj, ia)
        compare(rep, "Rc", lhs, rhs, (n, n, n, n, d))

    def cc():
        dims = [n] * 6 + [d] * 3
        lhs = kron(sig @ kron_all([i3, u, ia]), sig) @ permute_factors(f, dims, [0, 1, 2, 8, 3, 4, 5, 6, 7])
        lhs = p.a @ p.mm1.proj @ lhs
        moved = canon.mm2.section @ canon.a @ canon.mm1.proj
        rhs = kron(sig @ kron_all([i3, ia, u]), sig) @ permute_factors(f, dims, [0, 1, 2, 6, 3, 4, 5, 7, 8])
        rhs = compose_first_factor(p.mm2.proj @ rhs, moved, d ** 3)
        compare(rep, "Cc", lhs, rhs, tuple(dims))

    _safe(rep, "Lc", lc)
    _safe(rep, "Rc", rc)
    _safe(rep, "Cc", cc)
    return rep



def _first_condition_failure(rep: Report):
    for label in ("Lc", "Rc", "Cc"):
        for e in rep.entries:
            if e.label == label and not e.ok:
                return e
    for e in rep.entries:
        if not e.ok:
            return e
    return None


def _skeleton(p: PseudoMonoidData, sm: StrongMonoidalData, name: str = "") -> LeftBialgebroid:
    """s, t from chi; gamma and pi still zero."""
    r, a = sm.base, p.monoid
    f = a.field
    u = r.unit
    ir = r.identity
    s = sm.chi.map @ kron(ir, u)
    t = sm.chi.map @ kron(u, ir)
    return LeftBialgebroid(a, r, s, t, LinMap.zero(f, a.dim * a.dim, a.dim), LinMap.zero(f, r.dim, a.dim), name)


def transport(p: PseudoMonoidData, sm: StrongMonoidalData, b0: LeftBialgebroid) -> LinMap:
    """phi o sigma^-1 : M -> A (x)_R A."""
    if not sm.sigma.is_invertible():
        raise ConditionFailure("sigma is not invertible", "sigma")
    return phi_map(b0, sm.chi.map) @ sm.sigma.inverse()


def bialgebroid_from_pseudomonoid(p: PseudoMonoidData, sm: StrongMonoidalData, name: str = "") -> LeftBialgebroid:
    """gamma(x) = x.[1 (x) 1] and pi(x) = iota^-1(x.iota(1)), read through
    phi o sigma^-1."""
    rep = check_strong_monoidal(p, sm)
    bad = _first_condition_failure(rep)
    if bad is not None:
        raise ConditionFailure(f"strong monoidal data fails {bad.label}", bad.label, bad.witness)
    a, r = p.monoid, sm.base
    b0 = _skeleton(p, sm, name)
    tr = transport(p, sm, b0)
    ll = b0.LL
    lam = p.m_carrier.lefts[0][1]
    gamma = tr @ lam @ kron(a.identity, tr.inverse() @ b0.one_one)
    lam_j = p.j_carrier.lefts[0][1]
    pi = sm.iota.inverse() @ lam_j @ kron(a.identity, sm.iota @ r.unit)
    return LeftBialgebroid(a, r, b0.s, b0.t, ll.section @ gamma, pi, name)


def compare_with_bialgebroid(p: PseudoMonoidData, sm: StrongMonoidalData) -> Report:
    """Rebuild the pseudo-monoid from F(p, sm) and compare it with ``p``
    through phi o sigma^-1: the left A-module J, the maps kappa1 = l,
    kappa2 = r and zeta o xi^-1 = a."""
    rep = Report("transport")
    b = bialgebroid_from_pseudomonoid(p, sm)
    q, _ = pseudomonoid_from_bialgebroid(b)
    tr = transport(p, sm, b)
    tinv = tr.inverse()
    iota, iota_inv = sm.iota, sm.iota.inverse()
    a = p.monoid
    lam_j = iota_inv @ p.j_carrier.lefts[0][1] @ kron(a.identity, iota)
    compare(rep, "ja", lam_j, q.j_carrier.lefts[0][1], (a.dim, sm.base.dim))

    def kappa(label, k, ours, theirs, dst):
        lhs = theirs
        rhs = ours @ induced_map(tinv, iota, dst, k)
        compare(rep, label, lhs @ dst.proj, rhs @ dst.proj, (q.m_carrier.dim, q.j_carrier.dim))

    _safe(rep, "kappa1", lambda: kappa("kappa1", p.mj1, p.l, q.l, q.mj1))
    _safe(rep, "kappa2", lambda: kappa("kappa2", p.mj2, p.r, q.r, q.mj2))

    def aform():
        t11 = induced_map(tr, tr, p.mm1, q.mm1)
        t12 = induced_map(tr, tr, p.mm2, q.mm2)
        compare(rep, "aform", q.a @ t11 @ p.mm1.proj, t12 @ p.a @ p.mm1.proj, (p.m_carrier.dim,) * 2)

    _safe(rep, "aform", aform)
    return rep


def pseudomonoid_report(b: LeftBialgebroid) -> Report:
    """Everything about G(b): coherence, strong monoidality, explicit
    inverses, the comparison through F and the round trip F(G(b)) = b."""
    from .bialgebroid import bialgebroid_difference

    rep = Report("pseudomonoid")
    built = _safe(rep, "construction", lambda: pseudomonoid_from_bialgebroid(b))
    if built is None:
        return rep
    p, sm = built
    rep.extend(check_pseudomonoid(p))
    rep.extend(check_strong_monoidal(p, sm))
    f = b.field
    aux = p.aux
    ident_a = p.monoid.identity
    compare(rep, "l-inverse", p.l @ aux["l_inv"], ident_a)
    compare(rep, "r-inverse", p.r @ aux["r_inv"], ident_a)
    for label, g, h in (("xi", aux["xi"], aux["xi_inv"]), ("zeta", aux["zeta"], aux["zeta_inv"])):
        compare(rep, f"{label}-inverse", h @ g, LinMap.identity(f, g.cols))
    compare(rep, "phi-inverse", aux["phi"] @ aux["phi_inv"], LinMap.identity(f, b.LL.dim))
    rep.extend(compare_with_bialgebroid(p, sm))

    def round_trip():
        diff = bialgebroid_difference(b, bialgebroid_from_pseudomonoid(p, sm, b.name))
        rep.add("round-trip", diff is None, None, "" if diff is None else f"differs in {diff}")

    _safe(rep, "round-trip", round_trip)
    rep.derived.update({"m_dim": p.m_carrier.dim, "j_dim": p.j_carrier.dim,
                        "mm_dim": p.mm1.dim})
    return rep
