import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sorelations.cartan import NB, ND, Weight
from sorelations.classify import build_system
from sorelations.exact import G0, G1, ContractError, GaussianRational, Q
from sorelations.verma import _vadd, build_truncated, check_relations_truncated


def kostant_counts(heights, top):
    # coefficients of prod 1/(1 - q^h) up to q^top
    c = [1] + [0] * top
    for h in heights:
        for k in range(h, top + 1):
            c[k] += c[k - h]
    return c


@pytest.mark.parametrize("kind,n,hw", [(ND, 1, "-1/2,1/2"), (NB, 1, "-1/2,0"), (ND, 2, "-3/2,1/2,1/2")])
def test_pbw_counts_are_partition_numbers(kind, n, hw):
    m = build_truncated(kind, n, Weight.parse(hw), cutoff=5)
    want = kostant_counts(m.heights, 5)
    assert [m.basis.count(h) for h in range(6)] == want


@pytest.mark.parametrize("hw", ["-1,1", "-3/2,1/2", "-2,1"])
def test_sl2_norms_in_so22(hw):
    # f = E_{-(e0 - e1)}; ||f^k Omega||^2 = prod_{i<=k} i (m + i - 1), m = l1 - l0
    m = build_truncated(ND, 1, Weight.parse(hw), cutoff=6)
    lam0, lam1 = Weight.parse(hw)
    mm = lam1 - lam0
    k_root = m.pos_roots.index((1, -1))
    for k in range(1, 4):
        mono = tuple(k if i == k_root else 0 for i in range(len(m.pos_roots)))
        want = Q(1)
        for i in range(1, k + 1):
            want *= i * (mm + i - 1)
        assert m.shapovalov(mono, mono) == GaussianRational(want)


@settings(max_examples=40)
@given(st.data())
def test_action_is_a_representation(data):
    m = build_truncated(NB, 1, Weight.parse("-1,1/2"), cutoff=4)
    names = m.d.names
    x = data.draw(st.sampled_from(names))
    y = data.draw(st.sampled_from(names))
    mono = data.draw(st.sampled_from(m.basis.monomials(2)))
    lhs = {}
    _vadd(lhs, m.act_vec(x, m.act(y, mono)))
    _vadd(lhs, m.act_vec(y, m.act(x, mono)), GaussianRational(-1))
    rhs = {}
    for name, c in m.sc.bracket(x, y).items():
        _vadd(rhs, m.act(name, mono), c)
    assert lhs == rhs


def test_gram_blocks_hermitian_and_psd_at_allowed_weight():
    m = build_truncated(NB, 1, Weight.parse("-1/2,0"), cutoff=4)
    inert = m.gram_inertia()
    assert all(neg == 0 for _, _, neg in inert.values())
    assert any(zero > 0 for _, zero, _ in inert.values())
    for w in list(m.blocks)[:5]:
        assert m.gram_block(w).is_hermitian()


@pytest.mark.parametrize("kind,n,hw,a", [
    (ND, 1, "-1/2,1/2", Q(1, 2)), (ND, 1, "0,0", Q(0)), (ND, 1, "-1,-1", Q(0)),
    (NB, 1, "-1/2,0", Q(1)), (NB, 1, "-1,1/2", Q(1)),
])
def test_relations_pass_small_cutoff(kind, n, hw, a):
    m = build_truncated(kind, n, Weight.parse(hw), cutoff=4)
    r = check_relations_truncated(m)
    assert r.passed and r.a == a
    assert r.a == m.casimir_C() * Q(-2, m.d.sig.dim)
    assert r.a == -2 * build_system(kind, n).constant_at(Weight.parse(hw))


@pytest.mark.parametrize("kind,n,hw", [(ND, 1, "-1,1/2"), (NB, 1, "-1,0"), (NB, 1, "-3/2,1/2")])
def test_relations_fail_off_the_list(kind, n, hw):
    m = build_truncated(kind, n, Weight.parse(hw), cutoff=4, require_dominant=False)
    assert not check_relations_truncated(m).passed


def test_quarter_weight_needs_cutoff_four():
    # a non-half-integral weight: PSD up to height 2, a negative direction by height 4
    w = Weight([Q(-1, 4), 0])
    low = build_truncated(NB, 1, w, cutoff=2)
    assert sum(x[2] for x in low.gram_inertia().values()) == 0
    high = build_truncated(NB, 1, w, cutoff=4)
    assert sum(x[2] for x in high.gram_inertia().values()) > 0


def test_contracts():
    with pytest.raises(ContractError):
        build_truncated(ND, 1, Weight.parse("1,1"))  # not dominant
    with pytest.raises(ContractError):
        build_truncated(ND, 1, Weight.parse("-1,1"), cutoff=1)
    with pytest.raises(ContractError):
        build_truncated(ND, 1, Weight.parse("-1,1,0"))


def test_vadd_cancels():
    v = {(1,): G1}
    _vadd(v, {(1,): G1}, GaussianRational(-1))
    assert v == {}
    assert G0 == GaussianRational(0)
