from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ltsdeform.linalg import (LinAlgError, Matrix, PrimeField, QQ,
                              field_from_spec, nullspace, rank, solve)

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=7)


def small_matrix(max_dim=5):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(rationals, min_size=c, max_size=c),
                               min_size=r, max_size=r))).map(
        lambda rows: Matrix([[QQ(x) for x in row] for row in rows]))


def test_rank_identity_and_zero():
    assert rank(Matrix.identity(2)) == 2
    assert rank(Matrix.zero(2, 2)) == 0


def test_rank_dependent_rows():
    assert rank(Matrix([[1, 2], [2, 4]])) == 1


def test_nullspace_identity_is_trivial():
    assert nullspace(Matrix.identity(3)).ncols == 0


def test_nullspace_single_relation():
    ns = nullspace(Matrix([[1, -1]]))
    assert ns.ncols == 1
    assert ns.column(0) == [1, 1]


def test_nullspace_zero_matrix_full():
    ns = nullspace(Matrix.zero(2, 3))
    assert ns.ncols == 3
    assert ns == Matrix.identity(3)


def test_solve_identity():
    assert solve(Matrix.identity(3), [5, QQ(Fraction(1, 2)), -2]) == [5, Fraction(1, 2), -2]


def test_solve_underdetermined_free_vars_zero():
    assert solve(Matrix([[1, 1]]), [2]) == [2, 0]


def test_solve_inconsistent():
    assert solve(Matrix([[1], [1]]), [1, 2]) is None


def test_solve_dimension_mismatch():
    with pytest.raises(LinAlgError):
        solve(Matrix([[1, 2]]), [1, 2])


@settings(max_examples=60)
@given(small_matrix())
def test_rank_nullity(m):
    ns = nullspace(m)
    assert rank(m) + ns.ncols == m.ncols


@settings(max_examples=60)
@given(small_matrix())
def test_matrix_times_nullspace_vanishes(m):
    ns = nullspace(m)
    if ns.ncols:
        assert (m * ns).is_zero()


@settings(max_examples=60)
@given(small_matrix(), st.lists(rationals, min_size=1, max_size=5))
def test_solve_exact_or_certified_inconsistent(m, b):
    b = [QQ(x) for x in b[:m.nrows]] + [0] * max(0, m.nrows - len(b))
    x = solve(m, b)
    if x is None:
        aug = Matrix([row + [v] for row, v in zip(m.rows, b)])
        assert rank(aug) == rank(m) + 1
    else:
        assert m.apply(x) == b


@settings(max_examples=40)
@given(small_matrix())
def test_nullspace_is_deterministic_and_canonical(m):
    ns1 = nullspace(m)
    ns2 = nullspace(m)
    assert ns1 == ns2
    # each basis column carries 1 at its own free coordinate
    piv_free = []
    for j in range(ns1.ncols):
        col = ns1.column(j)
        ones = [i for i, v in enumerate(col) if v == 1]
        assert ones, "free coordinate missing"


# ---------------------------------------------------------------------------
# prime fields


def test_prime_field_requires_prime():
    with pytest.raises(LinAlgError):
        PrimeField(6)
    PrimeField(2)
    PrimeField(97)


def test_gf_canonical_representatives():
    gf = PrimeField(7)
    x = gf(10)
    assert x.val == 3
    assert gf(-1).val == 6
    assert (gf(3) + gf(5)).val == 1
    assert (gf(3) * gf(5)).val == 1
    assert gf.div(gf.one, gf(3)) == gf(5)


def test_gf_parse_rational_string():
    gf = PrimeField(7)
    assert gf.parse("1/2") == gf(4)
    with pytest.raises(LinAlgError):
        gf.parse("1/7")


def test_gf_linear_algebra():
    gf = PrimeField(5)
    m = Matrix([[gf(1), gf(2)], [gf(2), gf(4)]], gf)
    assert rank(m) == 1
    ns = nullspace(m)
    assert ns.ncols == 1
    assert (m * ns).is_zero()
    x = solve(m, [gf(3), gf(6)])
    assert x is not None
    assert m.apply(x) == [gf(3), gf(1)]


def test_field_from_spec():
    assert field_from_spec("rational") is not None
    assert field_from_spec("gf:11").p == 11
    with pytest.raises(LinAlgError):
        field_from_spec("gf:10")
    with pytest.raises(LinAlgError):
        field_from_spec("real")


def test_rational_scalars_demote_to_int():
    assert QQ(Fraction(4, 2)) == 2 and isinstance(QQ(Fraction(4, 2)), int)
    assert QQ.div(1, 3) == Fraction(1, 3)
    assert QQ.div(4, 2) == 2 and isinstance(QQ.div(4, 2), int)
    assert QQ.parse("-3/7") == Fraction(-3, 7)
    assert QQ.format(Fraction(-3, 7)) == "-3/7"
