from dataclasses import replace

import pytest

import expected
import oracles
from bgdkit.algebra import product_algebra, structure_from_table
from bgdkit.bialgebroid import validate_left_bialgebroid
from bgdkit.errors import ConditionFailure
from bgdkit.exactfield import QQ, prime_field
from bgdkit.pseudomonoid import (bialgebroid_from_pseudomonoid, canonical_pseudomonoid, canonical_strong_monoidal,
                                 check_pseudomonoid, check_strong_monoidal, pseudomonoid_from_bialgebroid,
                                 pseudomonoid_report)

BASES = {
    "Q": lambda: product_algebra(QQ, 1),
    "QxQ": lambda: product_algebra(QQ, 2),
    "Q[C2]": lambda: structure_from_table(QQ, oracles.group_table(2)),
    "F2[C2]": lambda: structure_from_table(prime_field(2), oracles.group_table(2)),
}


@pytest.mark.parametrize("name", BASES)
def test_canonical_pseudomonoid_coherence(name):
    r = BASES[name]()
    rep = check_pseudomonoid(canonical_pseudomonoid(r))
    assert rep.ok
    assert rep.entry("pentagon").ok and rep.entry("triangle").ok


@pytest.mark.parametrize("name", ["Q", "QxQ", "Q[C2]"])
def test_canonical_strong_monoidal_gives_enveloping_bialgebroid(name):
    r = BASES[name]()
    p, sm = canonical_strong_monoidal(r)
    assert check_strong_monoidal(p, sm).ok
    b = bialgebroid_from_pseudomonoid(p, sm)
    assert validate_left_bialgebroid(b).ok
    assert b.total.dim == r.dim ** 2


@pytest.mark.parametrize("ident", expected.VALID)
def test_pseudomonoid_of_catalog_bialgebroid(bgd, ident):
    b = bgd[ident]
    rep = pseudomonoid_report(b)
    assert rep.ok, rep.failed()
    for label in ("pentagon", "triangle", "Lc", "Rc", "Cc", "aform", "kappa1", "kappa2", "ja", "round-trip"):
        assert rep.entry(label).ok
    assert rep.derived["j_dim"] == b.base.dim


def test_doubled_sigma_breaks_linearity_conditions(bgd):
    p, sm = pseudomonoid_from_bialgebroid(bgd["C2"])
    bad = replace(sm, sigma=sm.sigma.scale(2))
    rep = check_strong_monoidal(p, bad)
    # Cc is quadratic in sigma on both sides, so scaling survives it
    assert {"Lc", "Rc"} <= set(rep.failed())
    assert rep.entry("Cc").ok
    with pytest.raises(ConditionFailure) as info:
        bialgebroid_from_pseudomonoid(p, bad)
    assert info.value.condition == "Lc"


def test_broken_gamma_has_no_pseudomonoid(bgd):
    assert not pseudomonoid_report(bgd["BROKEN_GAMMA"]).ok
