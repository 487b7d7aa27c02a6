"""Left and right bialgebroids over a base algebra R, and what they induce:
entwining structures, corings, the Galois map and the dual right bialgebroid."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra import Algebra, AlgebraMorphism, check_morphism, chi_from_st, opposite
from .bimodule import (Bimodule, check_bimodule_map, descend, tensor, validate_bimodule)
from .coring import Coring, GaloisResult, coaction_from_grouplike, coinvariants
from .entwining import EntwiningStructure, InternalComonoid, InternalMonoid, check_comonoid
from .errors import (CommutationFailure, Condition1Failure, Condition1iiFailure,
                     DimensionMismatch, IdentificationFailure, NotBalanced)
from .exactfield import LinMap, kron, kron_all, permute_factors, swap, unravel
from .report import Report, compare


@dataclass(eq=False)
class LeftBialgebroid:
    """(A, R, s, t, gamma, pi) with gamma given by a lift A -> A (x) A."""

    total: Algebra
    base: Algebra
    s: LinMap
    t: LinMap
    gamma_lift: LinMap
    pi: LinMap
    name: str = ""

    def __post_init__(self):
        a, r = self.total, self.base
        shapes = {"s": (self.s, (a.dim, r.dim)), "t": (self.t, (a.dim, r.dim)),
                  "gamma_lift": (self.gamma_lift, (a.dim * a.dim, a.dim)), "pi": (self.pi, (r.dim, a.dim))}
        for label, (m, shape) in shapes.items():
            if m.shape != shape:
                raise DimensionMismatch(f"{label} has shape {m.shape}, expected {shape}")

    @property
    def field(self):
        return self.total.field

    @cached_property
    def L(self) -> Bimodule:
        """A with r.a = s(r)a and a.r = t(r)a."""
        a, r = self.total, self.base
        ract = a.mul @ kron(self.t, a.identity) @ swap(self.field, a.dim, r.dim)
        return Bimodule.over(r, a.dim, a.mul @ kron(self.s, a.identity), ract, name="L")

    @cached_property
    def S(self) -> Bimodule:
        """A with r.a = s(r)a and a.r = a s(r)."""
        a, r = self.total, self.base
        return Bimodule.over(r, a.dim, a.mul @ kron(self.s, a.identity), a.mul @ kron(a.identity, self.s), name="S")

    @property
    def LL(self):
        return tensor(self.L, self.L)

    @property
    def LS(self):
        return tensor(self.L, self.S)

    @property
    def SL(self):
        return tensor(self.S, self.L)

    @property
    def SS(self):
        return tensor(self.S, self.S)

    @cached_property
    def gamma(self) -> LinMap:
        return self.LL.proj @ self.gamma_lift

    @cached_property
    def rho1(self) -> LinMap:
        """(x (x) y).a = xa (x) y on L (x)_R L."""
        a = self.total
        raw = self.LL.proj @ kron(a.mul, a.identity) @ permute_factors(self.field, [a.dim] * 3, [0, 2, 1])
        return _descend_right(raw, self.LL, a)

    @cached_property
    def rho2(self) -> LinMap:
        """(x (x) y).a = x (x) ya on L (x)_R L."""
        a = self.total
        return _descend_right(self.LL.proj @ kron(a.identity, a.mul), self.LL, a)

    @cached_property
    def lambda_m(self) -> LinMap:
        """a.(x (x) y) = a(1)x (x) a(2)y; exists exactly when (bgdi) holds."""
        a = self.total
        ia = a.identity
        raw = kron(a.mul, a.mul) @ permute_factors(self.field, [a.dim] * 4, [0, 2, 1, 3])
        raw = self.LL.proj @ raw @ kron(self.gamma_lift, kron(ia, ia))
        act = raw @ kron(ia, self.LL.section)
        bad = (act @ kron(ia, self.LL.proj) - raw).first_nonzero_column()
        if bad is not None:
            raise NotBalanced("the left A-action on L (x)_R L is not well defined",
                              unravel(bad, (a.dim, a.dim, a.dim)))
        return act

    @cached_property
    def M(self) -> Bimodule:
        """M_A: L (x)_R L as an A-(A (x) A)-bimodule (one left, two right A-slots)."""
        a = self.total
        return Bimodule(self.field, self.LL.dim, ((a, self.lambda_m),), ((a, self.rho1), (a, self.rho2)), name="M")

    @property
    def one_one(self) -> LinMap:
        """The class of 1 (x) 1 in L (x)_R L."""
        u = self.total.unit
        return self.LL.proj @ kron(u, u)

    def same_as(self, other: "LeftBialgebroid") -> bool:
        return bialgebroid_difference(self, other) is None


def _descend_right(raw: LinMap, q, a: Algebra) -> LinMap:
    ia = a.identity
    act = raw @ kron(q.section, ia)
    if act @ kron(q.proj, ia) != raw:
        raise NotBalanced("right action does not descend")
    return act


def bialgebroid_difference(b1: LeftBialgebroid, b2: LeftBialgebroid):
    """Name of the first structure map on which two bialgebroids differ, or None."""
    checks = [("mul", b1.total.mul, b2.total.mul), ("unit", b1.total.unit, b2.total.unit),
              ("base-mul", b1.base.mul, b2.base.mul), ("s", b1.s, b2.s), ("t", b1.t, b2.t),
              ("pi", b1.pi, b2.pi)]
    for label, x, y in checks:
        if x != y:
            return label
    if b1.LL.proj != b2.LL.proj or b1.gamma != b2.gamma:
        return "gamma"
    return None


def validate_left_bialgebroid(b: LeftBialgebroid) -> Report:
    rep = Report("left-bialgebroid")
    a, r = b.total, b.base
    rop = opposite(r)
    rep.add("s-morphism", check_morphism(AlgebraMorphism(r, a, b.s)).ok)
    rep.add("t-morphism", check_morphism(AlgebraMorphism(rop, a, b.t)).ok)
    try:
        chi_from_st(AlgebraMorphism(r, a, b.s), AlgebraMorphism(rop, a, b.t))
        rep.add("range-commute", True)
    except CommutationFailure as exc:
        rep.add("range-commute", False, exc.witness, str(exc))
    rep.extend(validate_bimodule(b.L), "L:")
    rep.extend(validate_bimodule(b.S), "S:")
    if not rep.ok:
        return rep
    com = InternalComonoid(b.L, b.gamma, b.pi)
    rep.extend(check_comonoid(com))

    try:
        b.lambda_m
        rep.add("bgdi", True)
        have_m = True
    except NotBalanced as exc:
        rep.add("bgdi", False, exc.witness, str(exc))
        have_m = False
    compare(rep, "bgdii", b.gamma @ a.unit, b.one_one)
    if have_m:
        compare(rep, "bgdiii", b.gamma @ a.mul, b.lambda_m @ kron(a.identity, b.gamma), (a.dim, a.dim))
    else:
        rep.add("bgdiii", False, None, "not evaluated: requires bgdi")
    compare(rep, "bgdiv", b.pi @ a.unit, r.unit)
    pm = b.pi @ a.mul
    ia = a.identity
    compare(rep, "bgdv(s)", b.pi @ a.mul @ kron(ia, b.s @ b.pi), pm, (a.dim, a.dim))
    compare(rep, "bgdv(t)", b.pi @ a.mul @ kron(ia, b.t @ b.pi), pm, (a.dim, a.dim))
    rep.derived["LL_dim"] = b.LL.dim
    return rep


def check_condition_1ii(b: LeftBialgebroid) -> Report:
    """gamma(a s(r)) = gamma(a).(s(r) (x) 1)."""
    rep = Report("1ii")
    a, r = b.total, b.base
    compare(rep, "1ii", b.gamma @ b.S.ract, b.rho1 @ kron(b.gamma, b.s), (a.dim, r.dim))
    return rep


def entwining_from_bialgebroid(b: LeftBialgebroid) -> EntwiningStructure:
    """psi(a (x) b) = a(1) b (x) a(2) on S (x)_R L -> L (x)_R S."""
    a = b.total
    cond = check_condition_1ii(b)
    if not cond.ok:
        raise Condition1iiFailure("gamma is not right S-linear", cond.entry("1ii").witness)
    if b.LS.proj != b.LL.proj:
        raise IdentificationFailure("L (x)_R S and L (x)_R L have different quotient bases")
    monoid = InternalMonoid(b.S, descend(a.mul, b.SS), b.s)
    comonoid = InternalComonoid(b.L, b.gamma, b.pi)
    try:
        psi = descend(b.rho1 @ kron(b.gamma, a.identity), b.SL)
    except NotBalanced as exc:
        raise Condition1iiFailure("psi is not balanced", exc.witness) from exc
    return EntwiningStructure(monoid, comonoid, psi)


def coring_from_bialgebroid(b: LeftBialgebroid) -> Coring:
    """L (x)_R S with left action a(1)x (x) a(2)y, right action x (x) ya,
    coproduct x(1) (x) 1 (x)_A x(2) (x) y and counit s(pi(x))y."""
    a = b.total
    ia = a.identity
    ls = b.LS
    carrier = Bimodule.over(a, ls.dim, b.lambda_m, b.rho2, name="C")
    cc = tensor(carrier, carrier)
    raw = cc.proj @ kron(ls.proj @ kron(ia, a.unit), ls.proj) @ kron(b.gamma_lift, ia)
    cmul = descend(raw, ls)
    counit = descend(a.mul @ kron(b.s @ b.pi, ia), ls)
    return Coring(a, carrier, cmul, counit)


def canonical_grouplike(b: LeftBialgebroid) -> LinMap:
    u = b.total.unit
    return b.LS.proj @ kron(u, u)


@dataclass(eq=False)
class CoinvariantResult:
    dim: int
    incl: LinMap
    equals_image_t: bool


def same_column_space(x: LinMap, y: LinMap) -> bool:
    from .exactfield import hstack
    rx, ry = x.rank(), y.rank()
    return rx == ry and hstack([x, y]).rank() == rx


def coinvariants_of_A(b: LeftBialgebroid) -> CoinvariantResult:
    c = coring_from_bialgebroid(b)
    g = canonical_grouplike(b)
    com = coaction_from_grouplike(c, g)
    dim, incl = coinvariants(c, com, g)
    return CoinvariantResult(dim, incl, same_column_space(incl, b.t))


def hopf_check(b: LeftBialgebroid) -> GaloisResult:
    """kappa(a (x) b) = gamma(a).(1 (x) b) on A (x)_{R^op} A, balanced through t."""
    rep = Report("hopf")
    a, r = b.total, b.base
    f = a.field
    ia = a.identity
    rop = opposite(r)
    lower = Bimodule(f, a.dim, ((a, a.mul),), ((rop, a.mul @ kron(ia, b.t)),), name="t_*")
    upper = Bimodule(f, a.dim, ((rop, a.mul @ kron(b.t, ia)),), ((a, a.mul),), name="t^*")
    q = tensor(lower, upper)
    qq = tensor(q, q)
    cb = Coring(a, q, descend(qq.flat @ kron_all([ia, a.unit, a.unit, ia]), q), descend(a.mul, q))
    c = coring_from_bialgebroid(b)
    kappa = descend(b.rho2 @ kron(b.gamma, ia), q)
    rank = kappa.rank()
    invertible = kappa.rows == kappa.cols and rank == kappa.rows
    rep.extend(check_bimodule_map(kappa, q, c.carrier, "kappa"))
    compare(rep, "kappaprop", kappa @ q.proj @ kron(a.unit, a.unit), canonical_grouplike(b))
    rep.derived.update({"cb_dim": q.dim, "carrier_dim": c.carrier_dim, "kappa_rank": rank, "hopf": invertible})
    return GaloisResult(r.dim, b.t, rop, cb, kappa, rank, invertible, rep)


def trichotomy(b: LeftBialgebroid) -> dict:
    """pi surjective, s injective and pi(1) = 1 (equivalent under (1ii)/(1iii))."""
    r = b.base
    return {"pi-epi": b.pi.rank() == r.dim, "s-mono": b.s.rank() == r.dim,
            "pi-unit": b.pi @ b.total.unit == r.unit}


def bialgebroid_from_entwining(e: EntwiningStructure, t: LinMap, name: str = "") -> LeftBialgebroid:
    """Assemble (A, R, s, t, gamma, pi) from a left entwining on S = A and L = A.

    Raises Condition1Failure when pi is not an epimorphism (the witness lists
    the three equivalent failures) and Condition1iiFailure when gamma is not
    right S-linear or psi is not induced by gamma.
    """
    mon, com = e.monoid, e.comonoid
    from .coring import underlying_algebra
    a = underlying_algebra(mon)
    r = e.base
    b = LeftBialgebroid(a, r, mon.unit, t, com.ll.section @ com.cmul, com.counit, name)
    if b.L.lact != com.carrier.lact or b.L.ract != com.carrier.ract:
        raise IdentificationFailure("comonoid actions are not r.a = s(r)a and a.r = t(r)a")
    tri = trichotomy(b)
    if not tri["pi-epi"]:
        raise Condition1Failure("pi is not an epimorphism; equivalently "
                                f"s mono={tri['s-mono']}, pi(1)=1 is {tri['pi-unit']}")
    cond = check_condition_1ii(b)
    if not cond.ok:
        raise Condition1iiFailure("gamma is not right S-linear", cond.entry("1ii").witness)
    lhs = e.psi @ b.SL.proj
    rhs = b.rho1 @ kron(b.gamma, a.identity)
    col = (lhs - rhs).first_nonzero_column()
    if col is not None:
        raise Condition1iiFailure("psi is not a(1)b (x) a(2)", unravel(col, (a.dim, a.dim)))
    return b


def entwining_conditions(e: EntwiningStructure, t: LinMap) -> Report:
    """Report (1i), its equivalent forms, (1ii) and (1iii) for an entwining."""
    from .coring import underlying_algebra
    rep = Report("conditions")
    mon, com = e.monoid, e.comonoid
    a = underlying_algebra(mon)
    b = LeftBialgebroid(a, e.base, mon.unit, t, com.ll.section @ com.cmul, com.counit)
    tri = trichotomy(b)
    rep.add("1i", tri["pi-epi"])
    for k, v in tri.items():
        rep.derived[k] = v
    rep.add("trichotomy", len(set(tri.values())) == 1)
    rep.extend(check_condition_1ii(b))
    compare(rep, "1iii", e.psi @ b.SL.proj, b.rho1 @ kron(b.gamma, a.identity), (a.dim, a.dim))
    return rep


@dataclass(eq=False)
class RightBialgebroid:
    """(A, R, s, t, gamma, pi) with K = (A, r.a = a t(r), a.r = a s(r))."""

    total: Algebra
    base: Algebra
    s: LinMap
    t: LinMap
    gamma_lift: LinMap
    pi: LinMap
    name: str = ""

    @property
    def field(self):
        return self.total.field

    @cached_property
    def K(self) -> Bimodule:
        a, r = self.total, self.base
        lact = a.mul @ kron(a.identity, self.t) @ swap(self.field, r.dim, a.dim)
        return Bimodule.over(r, a.dim, lact, a.mul @ kron(a.identity, self.s), name="K")

    @property
    def KK(self):
        return tensor(self.K, self.K)

    @cached_property
    def gamma(self) -> LinMap:
        return self.KK.proj @ self.gamma_lift

    @cached_property
    def lambda_n(self) -> LinMap:
        """(a (x) b).[x (x) y] = [ax (x) by]; domain index (a*n + b)*dim + class."""
        a = self.total
        n = a.dim
        raw = self.KK.proj @ kron(a.mul, a.mul) @ permute_factors(self.field, [n] * 4, [0, 2, 1, 3])
        ia2 = LinMap.identity(self.field, n * n)
        act = raw @ kron(ia2, self.KK.section)
        if act @ kron(ia2, self.KK.proj) != raw:
            raise NotBalanced("the left (A (x) A)-action on K (x)_R K is not well defined")
        return act

    @cached_property
    def rho_n(self) -> LinMap:
        """[x (x) y].a = [x a(1) (x) y a(2)]; exists exactly when the first axiom holds."""
        a = self.total
        n = a.dim
        ia = a.identity
        raw = self.KK.proj @ kron(a.mul, a.mul) @ permute_factors(self.field, [n] * 4, [0, 2, 1, 3])
        raw = raw @ kron(kron(ia, ia), self.gamma_lift)
        act = raw @ kron(self.KK.section, ia)
        bad = (act @ kron(self.KK.proj, ia) - raw).first_nonzero_column()
        if bad is not None:
            raise NotBalanced("the right A-action on K (x)_R K is not well defined", unravel(bad, (n, n, n)))
        return act


def validate_right_bialgebroid(b: RightBialgebroid) -> Report:
    rep = Report("right-bialgebroid")
    a, r = b.total, b.base
    rop = opposite(r)
    rep.add("s-morphism", check_morphism(AlgebraMorphism(r, a, b.s)).ok)
    rep.add("t-morphism", check_morphism(AlgebraMorphism(rop, a, b.t)).ok)
    try:
        chi_from_st(AlgebraMorphism(r, a, b.s), AlgebraMorphism(rop, a, b.t))
        rep.add("range-commute", True)
    except CommutationFailure as exc:
        rep.add("range-commute", False, exc.witness, str(exc))
    rep.extend(validate_bimodule(b.K), "K:")
    if not rep.ok:
        return rep
    rep.extend(check_comonoid(InternalComonoid(b.K, b.gamma, b.pi)))
    try:
        b.rho_n
        rep.add("rbgdi", True)
        have_n = True
    except NotBalanced as exc:
        rep.add("rbgdi", False, exc.witness, str(exc))
        have_n = False
    u = a.unit
    compare(rep, "rbgdii", b.gamma @ u, b.KK.proj @ kron(u, u))
    if have_n:
        compare(rep, "rbgdiii", b.gamma @ a.mul, b.rho_n @ kron(b.gamma, a.identity), (a.dim, a.dim))
    else:
        rep.add("rbgdiii", False, None, "not evaluated: requires rbgdi")
    compare(rep, "rbgdiv", b.pi @ u, r.unit)
    pm = b.pi @ a.mul
    ia = a.identity
    compare(rep, "rbgdv(s)", b.pi @ a.mul @ kron(b.s @ b.pi, ia), pm, (a.dim, a.dim))
    compare(rep, "rbgdv(t)", b.pi @ a.mul @ kron(b.t @ b.pi, ia), pm, (a.dim, a.dim))
    rep.derived["KK_dim"] = b.KK.dim
    return rep


@dataclass(eq=False)
class DualityData:
    dual_s: object
    dual_l: object
    identification: LinMap
    b_algebra: Algebra
    q: LinMap
    gamma_r: LinMap
    pi_r: LinMap
    mu_r: LinMap
    s_r: LinMap
    psi_r: LinMap
    right_entwining: EntwiningStructure
    report: Report


def dual_bialgebroid(b: LeftBialgebroid):
    """The right bialgebroid (B, R, pi^r, q, mu^r, s^r) on the common dual of S and L.

    Returns ``(RightBialgebroid, DualityData)``; ``DualityData.report``
    records the form of both duals, the identification of their carriers,
    surjectivity of s^r and the formula for psi^r.
    """
    from .bimodule import right_dual, transpose
    from .entwining import check_right_entwining, dualize_entwining
    rep = Report("duality")
    r = b.base
    e = entwining_from_bialgebroid(b)
    dual_s = right_dual(b.S)
    dual_l = right_dual(b.L)
    sr, lr = dual_s.dual, dual_l.dual
    # L^r and S^r are built from the same functionals; the comparison map
    # assembled from cap_S and cup_L has to be the identity.
    ident = transpose(b.total.identity, dual_s, dual_l)
    if sr.dim != lr.dim or ident != LinMap.identity(b.field, lr.dim):
        raise IdentificationFailure("the dual carriers of S and L do not coincide")
    rep.add("identification", True)
    de = dualize_entwining(e, dual_s, dual_l)
    rent = de.structure
    gamma_r, pi_r = rent.monoid.mul, rent.monoid.unit
    mu_r, s_r = rent.comonoid.cmul, rent.comonoid.counit
    lrlr = tensor(lr, lr)
    b_alg = Algebra(b.field, lr.dim, gamma_r @ lrlr.proj, pi_r @ r.unit, "B")
    ib = b_alg.identity
    eta_b = b_alg.unit
    q = sr.lact @ kron(r.identity, eta_b)
    # (Lr) and (Sr)
    compare(rep, "Lr-left", lr.lact, b_alg.mul @ kron(pi_r, ib), (r.dim, lr.dim))
    compare(rep, "Lr-right", lr.ract, b_alg.mul @ kron(ib, pi_r), (lr.dim, r.dim))
    compare(rep, "Sr-left", sr.lact, b_alg.mul @ swap(b.field, b_alg.dim, b_alg.dim) @ kron(q, ib), (r.dim, sr.dim))
    compare(rep, "Sr-right", sr.ract, b_alg.mul @ kron(ib, pi_r), (sr.dim, r.dim))
    rep.add("s^r-epi", s_r.rank() == r.dim, None, f"rank {s_r.rank()} of {r.dim}")
    srsr = tensor(sr, sr)
    rb = RightBialgebroid(b_alg, r, pi_r, q, srsr.section @ mu_r, s_r, name=(b.name + "^r") if b.name else "")
    if rb.K.lact != sr.lact or rb.K.ract != sr.ract:
        raise IdentificationFailure("K does not coincide with S^r")
    # psi^r(c (x) p) = [p(1) (x) c p(2)] with mu^r(p) = [p(1) (x) p(2)]
    psi_r = rent.psi
    cp = tensor(sr, lr)
    n = b_alg.dim
    lam = rb.lambda_n @ kron(kron(eta_b, ib), mu_r)
    if tensor(lr, sr).proj != srsr.proj:
        raise IdentificationFailure("L^r (x)_R S^r and S^r (x)_R S^r have different bases")
    compare(rep, "psir", psi_r @ cp.proj, lam, (n, n))
    rep.extend(check_right_entwining(rent))
    return rb, DualityData(dual_s, dual_l, ident, b_alg, q, gamma_r, pi_r, mu_r, s_r, psi_r, rent, rep)
