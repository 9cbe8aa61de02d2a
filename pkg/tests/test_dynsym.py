import pytest
from hypothesis import given
from hypothesis import strategies as st

from sorelations.dynsym import (D1, DR, DTH, EPS, LaurentWeylOp, PolarOp, apply_to_combination,
                                apply_to_monomial, build_dynsym_1d, build_dynsym_2d, cartesian_2d,
                                commutator, polar_p2, r2d, u2d, verify_anticommutators,
                                verify_commutators, verify_table, x1d)
from sorelations.exact import ContractError, GaussianRational, I, Q

coef = st.integers(-3, 3)


@st.composite
def ops_1d(draw):
    keys = draw(st.lists(st.tuples(st.integers(-2, 2), st.integers(0, 1), st.integers(0, 2)),
                         min_size=1, max_size=3))
    return LaurentWeylOp({k: draw(coef) for k in keys})


@st.composite
def ops_2d(draw):
    keys = draw(st.lists(st.tuples(st.integers(-2, 2), st.integers(-1, 1), st.integers(0, 2),
                                   st.integers(0, 2)), min_size=1, max_size=3))
    return PolarOp({k: draw(coef) for k in keys})


@given(ops_1d(), ops_1d(), ops_1d())
def test_1d_product_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(ops_2d(), ops_2d(), ops_2d())
def test_2d_product_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(ops_1d(), ops_1d(), st.fractions(min_value=-3, max_value=3, max_denominator=2), st.integers(0, 1))
def test_1d_action_is_multiplicative(a, b, power, sign):
    # normal-ordered product versus acting twice on x^a eps^t
    mono = (Q(power), sign)
    assert apply_to_monomial(a * b, mono) == apply_to_combination(a, apply_to_monomial(b, mono))


@given(ops_2d(), ops_2d(), st.fractions(min_value=-3, max_value=3, max_denominator=2),
       st.integers(-2, 2))
def test_2d_action_is_multiplicative(a, b, power, l):
    mono = (Q(power), Q(l))
    assert apply_to_monomial(a * b, mono) == apply_to_combination(a, apply_to_monomial(b, mono))


@given(ops_2d(), ops_2d(), ops_2d())
def test_jacobi(a, b, c):
    jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
    assert jac.is_zero()


def test_canonical_commutators():
    assert commutator(D1, x1d()) == LaurentWeylOp.scalar(1)
    assert commutator(EPS, D1).is_zero()  # eps is central away from the origin
    assert EPS * EPS == LaurentWeylOp.scalar(1)
    assert commutator(DTH, u2d(1)) == u2d(1).scale(I)
    assert commutator(DR, r2d(2)) == r2d(1).scale(2)


def test_cartesian_momenta():
    x, p = cartesian_2d()
    assert commutator(x[1], p[1]) == PolarOp.scalar(I)
    assert commutator(x[1], p[2]).is_zero()
    assert commutator(p[1], p[2]).is_zero()
    assert p[1] * p[1] + p[2] * p[2] == polar_p2()


@pytest.mark.parametrize("mu,const", [("1/2", Q(-1, 2)), ("-1/2", Q(-1, 2)), ("3/2", Q(3, 2))])
def test_1d_table(mu, const):
    t = build_dynsym_1d(mu)
    comm, anti = verify_table(t)
    assert comm.passed and comm.checked == 256
    assert anti.passed and anti.checked == 16
    assert t.constant == GaussianRational(const)


@pytest.mark.parametrize("mu", ["0", "1/2"])
def test_2d_table(mu):
    t = build_dynsym_2d(mu)
    comm, anti = verify_table(t)
    assert comm.passed and comm.checked == 625
    assert anti.passed and anti.checked == 25


def test_generator_normal_forms():
    t = build_dynsym_1d("1/2")
    # Gamma = -i eps x d
    assert t.J(1, 0) == (EPS * x1d() * D1).scale(-I)
    t2 = build_dynsym_2d(0)
    assert t2.J(1, 2) == DTH.scale(-I)
    assert t2.J(3, -1) == (r2d() * DR).scale(-I) - PolarOp.scalar(GaussianRational(0, "1/2"))


def test_corrupted_table_fails():
    t = build_dynsym_1d("1/2")
    t.ops[1, 2] = t.ops[1, 2] + x1d()
    t.ops[2, 1] = -t.ops[1, 2]
    assert not verify_commutators(t).passed
    assert not verify_anticommutators(t).passed


def test_contracts():
    with pytest.raises(ContractError):
        build_dynsym_1d(0)
    with pytest.raises(ContractError):
        build_dynsym_2d(1)
    with pytest.raises(ContractError):
        x1d() + DR
