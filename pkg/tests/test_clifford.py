import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sorelations.clifford import (CliffordElement, Signature, chirality, check_blade_bracket,
                                  check_so_bracket, clifford_image, gamma_generators, gamma_rep,
                                  make_M, restrict, coordinate_projector)
from sorelations.exact import ContractError, ExactMatrix, GaussianRational, I

SIGS = [(p, N - p) for N in range(2, 6) for p in range(N + 1)]


@st.composite
def sig_and_element(draw, max_dim=5):
    N = draw(st.integers(2, max_dim))
    p = draw(st.integers(0, N))
    sig = Signature(p, N - p)
    blades = draw(st.lists(st.sets(st.sampled_from(sig.labels)), min_size=1, max_size=3))
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(blades), max_size=len(blades)))
    terms = {}
    for b, c in zip(blades, coeffs):
        terms[tuple(sorted(b, key=sig.pos))] = c
    return sig, CliffordElement(sig, terms)


@pytest.mark.parametrize("p,q", SIGS)
def test_generators_anticommute(p, q):
    sig = Signature(p, q)
    for a in sig.labels:
        for b in sig.labels:
            xa, xb = CliffordElement.generator(sig, a), CliffordElement.generator(sig, b)
            assert xa * xb + xb * xa == CliffordElement.scalar(sig, -2 * sig.eta(a, b))


@pytest.mark.parametrize("p,q", SIGS)
def test_gamma_matrices_obey_clifford_relation(p, q):
    sig = Signature(p, q)
    X = gamma_generators(sig)
    one = ExactMatrix.identity(X[sig.labels[0]].rows)
    for a in sig.labels:
        for b in sig.labels:
            assert X[a] @ X[b] + X[b] @ X[a] == one.scale(-2 * sig.eta(a, b))


@pytest.mark.parametrize("N,size", [(2, 2), (3, 2), (4, 4), (5, 4), (6, 8), (7, 8)])
def test_gamma_size_is_floor(N, size):
    assert gamma_rep(Signature(N, 0)).dim == size


@given(sig_and_element(), sig_and_element())
def test_matrix_image_is_multiplicative(x, y):
    sig, a = x
    _, b = y
    b = CliffordElement(sig, {tuple(l for l in k if l in sig.labels): v for k, v in b.terms.items()
                               if all(l in sig.labels for l in k)})
    assert clifford_image(a * b) == clifford_image(a) @ clifford_image(b)


@given(sig_and_element(), sig_and_element(), sig_and_element())
def test_blade_product_associative(x, y, z):
    sig, a = x
    b = CliffordElement(sig, {k: v for k, v in y[1].terms.items() if all(l in sig.labels for l in k)})
    c = CliffordElement(sig, {k: v for k, v in z[1].terms.items() if all(l in sig.labels for l in k)})
    assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("p,q", [(3, 0), (2, 2), (1, 3), (2, 3)])
def test_bracket_identity(p, q):
    sig = Signature(p, q)
    assert check_blade_bracket(sig) == []
    assert check_so_bracket(gamma_rep(sig)) == []


def test_bracket_detects_corruption():
    sig = Signature(3, 0)
    rep = gamma_rep(sig)
    rep.mats[1, 2] = rep.mats[1, 2].scale(2)
    assert check_so_bracket(rep, first_only=True)


def test_M_antisymmetric_and_hermitian_on_compact():
    sig = Signature(4, 0)
    rep = gamma_rep(sig)
    for a, b in sig.pairs():
        assert make_M(a, b, sig) == -make_M(b, a, sig)
        assert rep.M(a, b).is_hermitian()


def test_noncompact_boosts_antihermitian():
    sig = Signature.conformal(3)
    rep = gamma_rep(sig)
    for a, b in sig.pairs():
        m = rep.M(a, b)
        if sig.eta(a) * sig.eta(b) < 0:
            assert m.adjoint() == -m
        else:
            assert m.is_hermitian()


@pytest.mark.parametrize("N", [2, 4, 6])
def test_chirality_commutes_and_squares_to_one(N):
    sig = Signature(N, 0)
    g = chirality(sig)
    rep = gamma_rep(sig)
    assert g @ g == ExactMatrix.identity(rep.dim)
    for m in rep.mats.values():
        assert g @ m == m @ g


def test_chirality_needs_even():
    with pytest.raises(ContractError):
        chirality(Signature(3, 0))


def test_restrict_to_chiral_half():
    sig = Signature(4, 0)
    rep = gamma_rep(sig)
    g = chirality(sig).to_complex()
    keep = [i for i in range(rep.dim) if np.isclose(g[i, i], 1)]
    sub = restrict(rep, coordinate_projector(rep.dim, keep))
    assert sub.dim == 2
    assert check_so_bracket(sub) == []


def test_signature_contracts():
    with pytest.raises(ContractError):
        Signature(1, 0)
    with pytest.raises(ContractError):
        Signature(2, 1, (1, 1, 2))
    assert Signature.conformal(2).labels == (-1, 0, 1, 2)
    assert make_M(1, 2, Signature(2, 0)).terms == {(1, 2): GaussianRational(0, "1/2")}
    assert I * I == GaussianRational(-1)
