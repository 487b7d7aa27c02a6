import pytest
from hypothesis import given, strategies as st

import oracles
from bgdkit.algebra import (Algebra, AlgebraMorphism, check_morphism, chi_from_st, enveloping, matrix_algebra,
                            opposite, product_algebra, structure_from_table, tensor_algebra, validate_algebra)
from bgdkit.errors import CommutationFailure, DimensionMismatch
from bgdkit.exactfield import QQ, LinMap, kron, prime_field

fields = st.sampled_from([QQ, prime_field(2), prime_field(3)])
orders = st.integers(1, 4)


@given(fields, orders)
def test_cyclic_group_algebras_validate(field, n):
    a = structure_from_table(field, oracles.group_table(n))
    assert validate_algebra(a).ok
    assert oracles.is_associative(oracles.structure_constants(a), field.p)


@given(fields, st.integers(1, 3))
def test_product_and_matrix_algebras_validate(field, n):
    assert validate_algebra(product_algebra(field, n)).ok
    assert validate_algebra(matrix_algebra(field, n)).ok


def test_broken_associativity_has_witness():
    # b_i b_j = b_{(i - j) mod 3} is not associative and has no unit
    table = [[(i - j) % 3 for j in range(3)] for i in range(3)]
    a = structure_from_table(QQ, table)
    rep = validate_algebra(a)
    assert rep.failed()[0] == "associativity"
    witness = rep.entry("associativity").witness
    assert len(witness) == 3 and all(1 <= w <= 3 for w in witness)
    assert not oracles.is_associative(oracles.structure_constants(a))


def test_matrix_algebra_products():
    m2 = matrix_algebra(QQ, 2)
    # E_12 E_21 = E_11, E_21 E_12 = E_22
    assert m2.times(m2.e(1), m2.e(2)) == m2.e(0)
    assert m2.times(m2.e(2), m2.e(1)) == m2.e(3)
    assert m2.times(m2.e(1), m2.e(1)).is_zero()


def test_opposite_reverses_products():
    m2 = matrix_algebra(QQ, 2)
    op = opposite(m2)
    assert validate_algebra(op).ok
    assert op.times(m2.e(1), m2.e(2)) == m2.times(m2.e(2), m2.e(1))
    assert opposite(op) is m2
    k2 = product_algebra(QQ, 2)
    assert opposite(k2) is k2


def test_tensor_algebra_is_componentwise():
    a = structure_from_table(QQ, oracles.group_table(2))
    m2 = matrix_algebra(QQ, 2)
    t = tensor_algebra(a, m2)
    assert t.dim == 8 and validate_algebra(t).ok
    x = kron(a.e(1), m2.e(1))
    y = kron(a.e(1), m2.e(2))
    assert t.times(x, y) == kron(a.times(a.e(1), a.e(1)), m2.times(m2.e(1), m2.e(2)))


def test_enveloping_of_noncommutative_algebra():
    m2 = matrix_algebra(QQ, 2)
    e = enveloping(m2)
    assert e.dim == 16 and validate_algebra(e).ok
    assert enveloping(m2) is e


def test_morphism_checks():
    a = structure_from_table(QQ, oracles.group_table(2))
    sign = AlgebraMorphism(a, a, LinMap.from_rows(QQ, [[1, 0], [0, -1]]))
    assert check_morphism(sign).ok
    scale = AlgebraMorphism(a, a, LinMap.from_rows(QQ, [[1, 0], [0, 2]]))
    assert check_morphism(scale).failed() == ["multiplicativity"]
    with pytest.raises(DimensionMismatch):
        AlgebraMorphism(a, a, LinMap.identity(QQ, 3))


def test_chi_from_st():
    r = product_algebra(QQ, 2)
    env = tensor_algebra(r, opposite(r))
    ident = LinMap.identity(QQ, 2)
    s = AlgebraMorphism(r, env, kron(ident, r.unit))
    t = AlgebraMorphism(r, env, kron(r.unit, ident))
    chi = chi_from_st(s, t)
    assert check_morphism(chi).ok
    assert chi.map == LinMap.identity(QQ, 4)


def test_chi_from_st_needs_commuting_ranges():
    m2 = matrix_algebra(QQ, 2)
    r = product_algebra(QQ, 2)
    # diagonal embedding twice: ranges commute
    diag = LinMap.from_rows(QQ, [[1, 0], [0, 0], [0, 0], [0, 1]])
    emb = AlgebraMorphism(r, m2, diag)
    assert check_morphism(chi_from_st(emb, emb)).ok
    # e_1 -> E11 - E12, e_2 -> E12 + E22: a conjugate copy that does not commute with the first
    other = AlgebraMorphism(r, m2, LinMap.from_rows(QQ, [[1, 0], [-1, 1], [0, 0], [0, 1]]))
    assert check_morphism(other).ok
    with pytest.raises(CommutationFailure) as info:
        chi_from_st(emb, other)
    assert info.value.witness is not None


def test_algebra_shape_validation():
    with pytest.raises(DimensionMismatch):
        Algebra(QQ, 2, LinMap.identity(QQ, 2), LinMap.identity(QQ, 2))
