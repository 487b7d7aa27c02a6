import pytest
from hypothesis import given, settings, strategies as st

import oracles
from bgdkit.algebra import product_algebra, structure_from_table
from bgdkit.bimodule import (Bimodule, check_bimodule_map, check_snakes, descend, left_unitor, reassoc,
                             regular, right_dual, right_unitor, tensor, validate_bimodule)
from bgdkit.errors import NotBalanced
from bgdkit.exactfield import QQ, LinMap, prime_field

import expected


def graded(r, labels, name=""):
    """Bimodule over k^n with e_i . x . e_j = x iff x has label (i, j)."""
    f, n, d = r.field, r.dim, len(labels)
    lact = LinMap.from_sparse(f, d, n * d, [(x, b * d + x, 1) for x, (b, _) in enumerate(labels)])
    ract = LinMap.from_sparse(f, d, d * n, [(x, x * n + b, 1) for x, (_, b) in enumerate(labels)])
    return Bimodule.over(r, d, lact, ract, name)


@st.composite
def graded_pairs(draw):
    n = draw(st.integers(1, 3))
    field = draw(st.sampled_from([QQ, prime_field(3)]))
    r = product_algebra(field, n)
    label = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    m = graded(r, draw(st.lists(label, min_size=1, max_size=4)))
    k = graded(r, draw(st.lists(label, min_size=1, max_size=4)))
    return r, m, k


def composable(m_labels, n_labels):
    return sum(1 for _, j in m_labels for i, _ in n_labels if i == j)


@given(graded_pairs())
def test_graded_bimodules_validate(case):
    _, m, n = case
    assert validate_bimodule(m).ok and validate_bimodule(n).ok


@given(graded_pairs())
def test_quotient_dim_matches_oracles(case):
    r, m, n = case
    q = tensor(m, n)
    p = r.field.p
    assert q.dim == oracles.balanced_tensor_dim(m.dim, n.dim, r.dim, oracles.to_rows(m.ract),
                                                oracles.to_rows(n.lact), p)
    labels = lambda b: [(next(i for i in range(r.dim) if b.lact.entry(x, i * b.dim + x) == 1),
                         next(j for j in range(r.dim) if b.ract.entry(x, x * r.dim + j) == 1))
                        for x in range(b.dim)]
    assert q.dim == composable(labels(m), labels(n))


@given(graded_pairs())
def test_projection_is_balanced_and_split(case):
    _, m, n = case
    q = tensor(m, n)
    assert (q.proj @ q.relation).is_zero()
    assert q.proj @ q.section == LinMap.identity(q.field, q.dim)
    assert validate_bimodule(q).ok


@settings(max_examples=25)
@given(graded_pairs())
def test_associator_is_invertible(case):
    _, m, n = case
    left = tensor(tensor(m, n), m)
    right = tensor(m, tensor(n, m))
    iso = reassoc(left, right)
    assert iso.is_invertible()
    assert iso @ left.flat == right.flat


@given(graded_pairs())
def test_unitors_are_isomorphisms(case):
    _, m, _ = case
    assert left_unitor(m).is_invertible()
    assert right_unitor(m).is_invertible()


@settings(max_examples=25)
@given(graded_pairs())
def test_right_dual_snakes(case):
    _, m, _ = case
    pair = right_dual(m)
    assert pair.dual.dim == m.dim
    assert check_snakes(pair).ok


def test_catalog_quotient_dims(bgd):
    for ident, b in bgd.items():
        ll = b.LL
        assert ll.dim == expected.LL_DIM[ident], ident
        assert ll.dim == oracles.balanced_tensor_dim(b.L.dim, b.L.dim, b.base.dim, oracles.to_rows(b.L.ract),
                                                     oracles.to_rows(b.L.lact), b.field.p)


def test_base_tensor_base_is_base(bgd):
    for ident, b in bgd.items():
        reg = regular(b.base)
        rr = tensor(reg, reg)
        assert rr.dim == b.base.dim, ident
        assert left_unitor(reg).is_invertible()


def test_catalog_duals(bgd):
    for ident in ("K1", "C2", "ENV2"):
        b = bgd[ident]
        for carrier in (b.S, b.L):
            assert check_snakes(right_dual(carrier)).ok, ident


def test_descend_rejects_unbalanced_maps():
    r = product_algebra(QQ, 2)
    m = graded(r, [(0, 0), (0, 1)])
    n = graded(r, [(0, 0), (1, 1)])
    q = tensor(m, n)
    # x_1 (x) y_2 is zero in the quotient, so a functional seeing it does not descend
    f = LinMap.from_sparse(QQ, 1, 4, [(0, 1, 1)])
    with pytest.raises(NotBalanced) as info:
        descend(f, q)
    assert info.value.witness is not None


def test_broken_action_is_reported():
    r = structure_from_table(QQ, oracles.group_table(2))
    # g acting by 2 is not an action of C2
    lact = LinMap.from_rows(QQ, [[1, 2]])
    m = Bimodule.over(r, 1, lact, LinMap.from_rows(QQ, [[1, 1]]))
    rep = validate_bimodule(m)
    assert "left-assoc" in rep.failed()
    assert check_bimodule_map(LinMap.identity(QQ, 1), m, m).ok
