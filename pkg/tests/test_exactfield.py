from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from bgdkit.errors import BudgetExceeded, DimensionMismatch, MalformedInput, NoSolution
from bgdkit.exactfield import (QQ, LinMap, cokernel, kernel, kron, permute_factors, prime_field, solve,
                               swap, unravel)

F5 = prime_field(5)

small = st.integers(min_value=-3, max_value=3)
fractions = st.builds(Fraction, small, st.integers(min_value=1, max_value=4))


@st.composite
def matrices(draw, field=QQ, max_dim=5):
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    entries = draw(st.lists(fractions if field.p is None else small, min_size=rows * cols, max_size=rows * cols))
    return LinMap.from_entries(field, rows, cols, [field.scalar(x) for x in entries])


fields = st.sampled_from([QQ, F5, prime_field(2)])


@st.composite
def any_matrix(draw):
    return draw(matrices(draw(fields)))


@given(any_matrix())
def test_rank_matches_oracle(m):
    assert m.rank() == oracles.rank(oracles.to_rows(m), m.field.p)


@given(any_matrix())
def test_kernel_is_exact(m):
    dim, incl = kernel(m)
    assert dim == m.cols - m.rank()
    assert (m @ incl).is_zero()
    assert incl.rank() == dim


@given(any_matrix())
def test_cokernel_splits(m):
    q, proj, sec = cokernel(m)
    assert q == m.rows - m.rank()
    assert (proj @ m).is_zero()
    assert proj @ sec == LinMap.identity(m.field, q)


@given(any_matrix(), st.data())
def test_solve_recovers_image_vectors(m, data):
    x = LinMap.from_entries(m.field, m.cols, 1, [m.field.scalar(data.draw(small)) for _ in range(m.cols)])
    y, _ = solve(m, m @ x)
    assert m @ y == m @ x


def test_solve_outside_image():
    m = LinMap.from_rows(QQ, [[1, 0], [0, 0]])
    with pytest.raises(NoSolution):
        solve(m, LinMap.from_rows(QQ, [[0], [1]]))


@settings(max_examples=30)
@given(matrices(QQ, 3), matrices(QQ, 3), st.data())
def test_kron_mixed_product(a, b, data):
    c = LinMap.from_entries(QQ, a.cols, 2, [QQ.scalar(data.draw(small)) for _ in range(2 * a.cols)])
    d = LinMap.from_entries(QQ, b.cols, 1, [QQ.scalar(data.draw(small)) for _ in range(b.cols)])
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


def test_kron_against_oracle():
    a = LinMap.from_rows(QQ, [[1, 2], [3, 4]])
    b = LinMap.from_rows(QQ, [[0, 5], [6, 7]])
    expected = [[ra[i] * rb[j] for i in range(2) for j in range(2)]
                for ra in oracles.to_rows(a) for rb in oracles.to_rows(b)]
    assert oracles.to_rows(kron(a, b)) == expected


@given(st.permutations([0, 1, 2]))
def test_permute_factors_inverse(perm):
    dims = (2, 3, 2)
    p = permute_factors(QQ, dims, perm)
    inv = [perm.index(k) for k in range(3)]
    back = permute_factors(QQ, tuple(dims[perm[k]] for k in range(3)), inv)
    assert back @ p == LinMap.identity(QQ, 12)


def test_permute_factors_moves_basis_vectors():
    # output factor k is input factor perm[k]
    dims = (2, 3, 4)
    p = permute_factors(QQ, dims, (2, 0, 1))
    i, j, k = 1, 2, 3
    src = (i * 3 + j) * 4 + k
    dst = (k * 2 + i) * 3 + j
    assert p.entry(dst, src) == 1
    assert swap(QQ, 2, 3) == permute_factors(QQ, (2, 3), (1, 0))


def test_unravel_is_one_based():
    assert unravel(5, (2, 3)) == (2, 3)
    assert unravel(0, (4,)) == (1,)


@given(fractions)
def test_scalar_format_round_trip(x):
    assert QQ.parse(QQ.format(x)) == QQ.scalar(x)


def test_fp_arithmetic_and_parse():
    assert F5.parse("1/2") == F5.scalar(3)
    assert F5.format(F5.scalar(-1)) == 4
    with pytest.raises(MalformedInput):
        F5.parse("1/5")
    with pytest.raises(MalformedInput):
        QQ.parse("x")
    with pytest.raises(MalformedInput):
        prime_field(4)


def test_shape_errors():
    with pytest.raises(DimensionMismatch):
        LinMap.identity(QQ, 2) @ LinMap.identity(QQ, 3)
    with pytest.raises(DimensionMismatch):
        LinMap.identity(QQ, 2) @ LinMap.identity(F5, 2)


def test_oversized_dense_matrix_is_refused():
    # flint would abort the process instead of raising
    with pytest.raises(BudgetExceeded):
        permute_factors(QQ, (16, 16, 16, 16), (0, 2, 1, 3))
