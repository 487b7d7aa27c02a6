from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import builders
from bgdkit.bialgebroid import entwining_from_bialgebroid
from bgdkit.bimodule import right_dual
from bgdkit.entwining import (check_comonoid, check_left_entwining, check_monoid, check_right_entwining,
                              dualize_entwining)
from bgdkit.errors import DimensionMismatch
from bgdkit.exactfield import QQ, LinMap, prime_field

TRIPLES = builders.triples()


@pytest.mark.parametrize("name,e,valid", TRIPLES, ids=[t[0] for t in TRIPLES])
def test_entwining_verdicts(name, e, valid):
    assert check_monoid(e.monoid).ok
    rep = check_left_entwining(e)
    assert rep.ok == valid
    for label in rep.failed():
        assert rep.entry(label).witness is not None


def test_broken_gamma_fails_counit_identity():
    e = dict((t[0], t[1]) for t in TRIPLES)["BROKEN_GAMMA"]
    assert not check_comonoid(e.comonoid).ok
    rep = check_left_entwining(e)
    assert rep.failed() == ["entwii"]
    assert rep.entry("entwii").witness == (2, 1)


@settings(max_examples=20)
@given(st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3)))
def test_scaled_psi_entwines_only_at_one(c):
    e = entwining_from_bialgebroid(builders.cyclic_bialgebra(2))
    assert check_left_entwining(builders.with_psi(e, e.psi.scale(QQ.scalar(c)))).ok == (c == 1)


@settings(max_examples=12, deadline=None)
@given(st.integers(1, 4), st.sampled_from([QQ, prime_field(2), prime_field(3)]))
def test_cyclic_group_algebras_entwine(n, field):
    e = entwining_from_bialgebroid(builders.cyclic_bialgebra(n, field))
    assert check_monoid(e.monoid).ok
    assert check_comonoid(e.comonoid).ok
    assert check_left_entwining(e).ok


@pytest.mark.parametrize("name", ["C2", "C3", "ENV2", "C2-doubled"])
def test_dual_entwining_keeps_verdict(name):
    e, valid = {t[0]: (t[1], t[2]) for t in TRIPLES}[name]
    de = dualize_entwining(e, right_dual(e.monoid.carrier), right_dual(e.comonoid.carrier))
    assert check_right_entwining(de.structure).ok == valid


def test_psi_shape_is_checked():
    e = TRIPLES[1][1]
    with pytest.raises(DimensionMismatch):
        check_left_entwining(builders.with_psi(e, LinMap.identity(QQ, 3)))
