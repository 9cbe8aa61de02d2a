from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from sorelations.exact import (G0, G1, I, ContractError, ExactMatrix, GaussianRational, HalfInt, Q,
                               inertia, inverse, nullspace, parse_halfint, rank, rref)

rats = st.fractions(min_value=-50, max_value=50, max_denominator=12)
gauss = st.builds(GaussianRational, rats, rats)


def int_matrix(n, m=None, lo=-4, hi=4):
    m = n if m is None else m
    return st.lists(st.lists(st.integers(lo, hi), min_size=m, max_size=m), min_size=n, max_size=n)


@given(gauss, gauss, gauss)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == G0


@given(gauss)
def test_inverse_and_conjugate(a):
    assume(a)
    assert a * a.inverse() == G1
    assert (a * a.conj()).is_real()
    assert (a * a.conj()).re == a.abs2()


@given(gauss, st.integers(-4, 4))
def test_pow_matches_repeated_product(a, k):
    assume(a or k >= 0)
    want = G1
    for _ in range(abs(k)):
        want = want * a
    if k < 0:
        want = want.inverse()
    assert a ** k == want


def test_i_squared():
    assert I * I == GaussianRational(-1)
    assert str(GaussianRational(Q(1, 2), -1)) in ("1/2-i", "1/2 - i", "1/2-1i")


@pytest.mark.parametrize("text,val", [("3/2", Fraction(3, 2)), ("-1.5", Fraction(-3, 2)),
                                      (".5", Fraction(1, 2)), ("2", Fraction(2))])
def test_parse_halfint(text, val):
    assert parse_halfint(text).value == val


def test_halfint_rejects_quarter():
    with pytest.raises(ContractError):
        HalfInt.of("1/4")


@given(int_matrix(3, 4), int_matrix(3, 4))
def test_matrix_ops_match_numpy(a, b):
    A = ExactMatrix(np.array(a), np.array(b))
    B = ExactMatrix(np.array(b).T, np.array(a).T)
    z = (A @ B).to_complex()
    assert np.allclose(z, A.to_complex() @ B.to_complex())
    assert (A @ B).adjoint() == B.adjoint() @ A.adjoint()


@given(int_matrix(4))
def test_rank_and_nullspace(a):
    A = ExactMatrix(np.array(a))
    r = rank(A)
    assert r == np.linalg.matrix_rank(np.array(a, dtype=float))
    ns = nullspace(A)
    if r == 4:
        assert ns is None
    else:
        assert ns.cols == 4 - r
        assert (A @ ns).is_zero()


@given(int_matrix(3))
def test_inverse_roundtrip(a):
    A = ExactMatrix(np.array(a), np.array(a).T)
    assume(rank(A) == 3)
    assert A @ inverse(A) == ExactMatrix.identity(3)


@given(int_matrix(4, lo=-3, hi=3), int_matrix(4, lo=-3, hi=3))
def test_inertia_matches_eigenvalue_signs(a, b):
    # hermitian from an arbitrary integer matrix; numpy eigenvalues are an independent route
    M = np.array(a) + 1j * np.array(b)
    H = M + M.conj().T
    h = ExactMatrix(H.real.astype(int), H.imag.astype(int))
    ev = np.linalg.eigvalsh(H)
    pos, zero, neg = inertia(h)
    assert (pos, zero, neg) == (int((ev > 1e-9).sum()), int((abs(ev) <= 1e-9).sum()), int((ev < -1e-9).sum()))


def test_inertia_needs_hermitian():
    with pytest.raises(ContractError):
        inertia(ExactMatrix.from_rows([[0, 1], [0, 0]]))


def test_rref_pivots():
    m, piv = rref(ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 0, 1]]))
    assert piv == [0, 2]
