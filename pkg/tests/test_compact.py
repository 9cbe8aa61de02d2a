import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from sorelations.cartan import B, D, RootSystem, Weight, is_dominant
from sorelations.clifford import MatrixRep
from sorelations.compact import (adjoint_rep, annihilator_operator, cartan_power, casimir_C,
                                 check_relations, module_for_weight, module_from_rep,
                                 relation_matrix, spinor_module, trivial_module, vector_rep,
                                 verify_annihilator_identity, weyl_dim)
from sorelations.exact import ContractError, ExactMatrix, Q, inverse, rank


def casimir_oracle(kind, w):
    """2 <lambda, lambda + 2 rho>: the ordered-pair Casimir from the weight alone."""
    rho = RootSystem(kind, len(w)).rho()
    return 2 * sum(Q(x) * (Q(x) + 2 * r) for x, r in zip(w, rho))


# (kind, n, highest weight, dim, a) frozen from hand computation with the oracle above
SPINORS = [
    (B, 1, "1/2", 2, Q(-1)),
    (B, 2, "1/2,1/2", 4, Q(-2)),
    (B, 3, "1/2,1/2,1/2", 8, Q(-3)),
    (D, 2, "1/2,1/2", 2, Q(-3, 2)),
    (D, 2, "1/2,-1/2", 2, Q(-3, 2)),
    (D, 3, "1/2,1/2,1/2", 4, Q(-5, 2)),
    (D, 3, "1/2,1/2,-1/2", 4, Q(-5, 2)),
]


@pytest.mark.parametrize("kind,n,hw,dim,a", SPINORS)
def test_spinor_relations(kind, n, hw, dim, a):
    m = module_for_weight(kind, n, Weight.parse(hw))
    assert m.highest_weight == Weight.parse(hw)
    assert m.dim == dim == weyl_dim(kind, m.highest_weight)
    r = check_relations(m)
    assert r.passed and r.a == a
    C = casimir_C(m)
    assert C == casimir_oracle(kind, m.highest_weight)
    assert r.a == C * Q(-2, m.rep.signature.dim)


@pytest.mark.parametrize("kind,n,k,dim", [(D, 2, 2, 3), (D, 2, 3, 4), (D, 2, 4, 5), (D, 3, 2, 10)])
def test_cartan_powers(kind, n, k, dim):
    for sign in (1, -1):
        m = cartan_power(spinor_module(kind, n, sign), k)
        assert m.dim == dim
        assert m.highest_weight[-1] * sign > 0
        r = check_relations(m)
        assert r.passed
        assert r.a == casimir_oracle(kind, m.highest_weight) * Q(-2, 2 * n)
        assert verify_annihilator_identity(m).passed


def test_so4_s_plus_casimir_is_three():
    # the ordered-pair Casimir of s_+ of so(4)
    assert casimir_C(spinor_module(D, 2, 1)) == 3


@pytest.mark.parametrize("kind,n", [(B, 2), (B, 3), (D, 3)])
def test_vector_and_adjoint_fail(kind, n):
    for rep in (vector_rep(kind, n), adjoint_rep(kind, n)):
        assert not check_relations(rep).passed


def test_so6_vector_has_nonzero_annihilator():
    m = module_from_rep(D, 3, vector_rep(D, 3))
    assert not annihilator_operator(m).is_zero()
    r = verify_annihilator_identity(m)
    assert not r.O_zero
    assert r.decomposition  # the decomposition itself is universal


def test_trivial():
    m = trivial_module(B, 2)
    r = check_relations(m)
    assert r.passed and r.a == 0


def test_reducible_casimir_rejected():
    # spinor (+) trivial of so(3)
    sp = spinor_module(B, 1).rep
    mats = {}
    for key, m in sp.mats.items():
        big = ExactMatrix.zeros(3).to_rows()
        rows = m.to_rows()
        for i in range(2):
            for j in range(2):
                big[i][j] = rows[i][j]
        mats[key] = ExactMatrix.from_rows(big)
    rep = MatrixRep(sp.signature, mats, 3)
    with pytest.raises(ContractError):
        casimir_C(rep)


@pytest.mark.parametrize("kind,w,dim", [(B, "1,0", 5), (B, "1,1", 10), (B, "2,0", 14),
                                        (D, "1,0,0", 6), (D, "1,1,0", 15), (D, "2,0,0", 20),
                                        (B, "3/2,1/2", 16)])
def test_weyl_dimension(kind, w, dim):
    assert weyl_dim(kind, Weight.parse(w)) == dim


def test_weyl_dim_rejects_non_dominant():
    with pytest.raises(ContractError):
        weyl_dim(B, Weight.parse("0,1"))


half = st.integers(0, 6).map(lambda k: Q(k, 2))


@given(st.lists(half, min_size=3, max_size=3))
def test_weyl_dim_d_type_reflection_symmetric(w):
    w = sorted(w, reverse=True)
    assume(len({x.denominator for x in w}) == 1)
    lam = Weight(w)
    assert is_dominant(D, lam)
    flipped = Weight(w[:-1] + [-w[-1]])
    assert weyl_dim(D, lam) == weyl_dim(D, flipped)
    assert weyl_dim(D, lam) >= 1


@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=4, max_size=4))
def test_relations_invariant_under_similarity(rows):
    # conjugating by an invertible matrix keeps the relations and the constant a
    P = ExactMatrix(np.array(rows))
    assume(rank(P) == 4)
    Pinv = inverse(P)
    sp = spinor_module(B, 2).rep
    rep = MatrixRep(sp.signature, {k: Pinv @ m @ P for k, m in sp.mats.items()}, 4)
    r = check_relations(rep)
    assert r.passed and r.a == -2


def test_relation_matrix_is_symmetric():
    rep = vector_rep(B, 2)
    for mu in rep.signature.labels:
        for nu in rep.signature.labels:
            assert relation_matrix(rep, mu, nu) == relation_matrix(rep, nu, mu)


def test_module_for_weight_rejects_unknown():
    with pytest.raises(ContractError):
        module_for_weight(B, 2, Weight.parse("2,0"))
