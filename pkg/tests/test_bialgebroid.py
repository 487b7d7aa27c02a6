import pytest
from hypothesis import given, settings, strategies as st

import builders
import expected
import oracles
from bgdkit.algebra import product_algebra
from bgdkit.bialgebroid import (bialgebroid_difference, bialgebroid_from_entwining, coinvariants_of_A,
                                dual_bialgebroid, entwining_conditions, entwining_from_bialgebroid, hopf_check,
                                trichotomy, validate_left_bialgebroid, validate_right_bialgebroid)
from bgdkit.catalog import enveloping_bialgebroid
from bgdkit.errors import Condition1Failure
from bgdkit.exactfield import QQ, prime_field


@pytest.mark.parametrize("ident", expected.VALID)
def test_valid_catalog_entries(bgd, ident):
    b = bgd[ident]
    assert (b.total.dim, b.base.dim) == expected.DIMS[ident]
    assert validate_left_bialgebroid(b).ok
    assert all(trichotomy(b).values())


@pytest.mark.parametrize("ident", expected.BROKEN)
def test_broken_catalog_entries(bgd, ident):
    rep = validate_left_bialgebroid(bgd[ident])
    assert rep.failed()[0] == expected.BROKEN_FIRST_FAILURE[ident]
    assert rep.entry(rep.failed()[0]).witness is not None


@pytest.mark.parametrize("ident", expected.VALID)
def test_entwining_round_trip(bgd, ident):
    b = bgd[ident]
    e = entwining_from_bialgebroid(b)
    assert entwining_conditions(e, b.t).ok
    back = bialgebroid_from_entwining(e, b.t, b.name)
    assert bialgebroid_difference(b, back) is None
    # lifts into A (x) A are not unique; the descended coproducts must agree
    assert back.gamma == b.gamma and back.pi == b.pi and back.s == b.s and back.t == b.t


def test_broken_pi_trichotomy(bgd):
    b = bgd["BROKEN_PI"]
    assert trichotomy(b) == expected.BROKEN_PI_TRICHOTOMY
    e = entwining_from_bialgebroid(b)
    rep = entwining_conditions(e, b.t)
    assert rep.failed() == ["1i"]
    assert rep.entry("trichotomy").ok
    with pytest.raises(Condition1Failure):
        bialgebroid_from_entwining(e, b.t)


@pytest.mark.parametrize("ident", expected.VALID)
def test_kappa_rank_and_coinvariants(bgd, ident):
    b = bgd[ident]
    res = hopf_check(b)
    assert res.report.ok
    assert (res.rank, res.invertible) == expected.KAPPA[ident]
    co = coinvariants_of_A(b)
    assert co.dim == expected.COINVARIANTS[ident] == b.t.rank()
    assert co.equals_image_t


@settings(max_examples=8, deadline=None)
@given(st.integers(1, 3), st.sampled_from([QQ, prime_field(2), prime_field(3)]))
def test_group_algebras_are_hopf(n, field):
    b = builders.cyclic_bialgebra(n, field)
    assert validate_left_bialgebroid(b).ok
    res = hopf_check(b)
    assert res.invertible and res.rank == n * n
    assert coinvariants_of_A(b).dim == 1


@settings(max_examples=4, deadline=None)
@given(st.integers(1, 2))
def test_enveloping_bialgebroids(n):
    b = enveloping_bialgebroid(product_algebra(QQ, n))
    assert validate_left_bialgebroid(b).ok
    assert b.LL.dim == n ** 3
    assert hopf_check(b).invertible
    assert coinvariants_of_A(b).dim == n


@pytest.mark.parametrize("ident", ["K1", "C2", "ENV2"])
def test_dual_bialgebroid(bgd, ident):
    rb, data = dual_bialgebroid(bgd[ident])
    assert data.report.ok
    assert validate_right_bialgebroid(rb).ok
    assert data.s_r.rank() == bgd[ident].base.dim
    assert data.report.entry("psir").ok


def test_dual_of_c2_is_functions_on_c2(bgd):
    _, data = dual_bialgebroid(bgd["C2"])
    alg = data.b_algebra
    c = oracles.structure_constants(alg)
    unit = [x for row in oracles.to_rows(alg.unit) for x in row]
    split = oracles.split_idempotents(c, unit)
    assert split is not None
    e1, e2, mul = split
    assert mul(e1, e1) == e1 and mul(e2, e2) == e2
    assert mul(e1, e2) == [0, 0] and mul(e2, e1) == [0, 0]
