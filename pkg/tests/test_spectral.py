import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import eigh_tridiagonal

from sorelations.exact import ContractError
from sorelations.spectral import (RadialProblem, SpectrumShortfall, cluster, coefficient_1d,
                                  coefficient_2d, count_negative, eigenvalues, exact_level,
                                  richardson_check, sector_labels, solve_1d, solve_2d,
                                  solve_radial, tridiagonal)


@pytest.mark.parametrize("mu", ["1/2", "-1/2", "3/2"])
def test_1d_levels(mu):
    es = solve_1d(mu)
    for i, e in enumerate(es):
        assert abs(e - exact_level(1, mu, i)) < 5e-3 * abs(exact_level(1, mu, i))
    assert es[0] < es[1] < es[2]


def test_mu_sign_symmetry():
    assert solve_1d("1/2") == solve_1d("-1/2")


def test_coefficients():
    assert coefficient_1d("1/2") == -1 / 8
    assert coefficient_1d("3/2") == 3 / 8
    assert coefficient_2d(0) == -1 / 8
    assert coefficient_2d("1/2") == 0
    assert RadialProblem(-1 / 8).nu == 0.5
    assert RadialProblem(0).nu == 1.0


@pytest.mark.parametrize("mu,degs", [("0", [1, 3, 5]), ("1/2", [2, 4, 6])])
def test_2d_degeneracies(mu, degs):
    res = solve_2d(mu, count=3)
    assert res.degeneracies == degs
    for i, e in enumerate(res.energies):
        assert abs(e - exact_level(2, mu, i)) < 5e-3 * abs(exact_level(2, mu, i))


def test_sector_symmetry_exact():
    res = solve_2d("1/2", count=2, grid_points=2000, r_max=60)
    for l, es in res.sector_spectra.items():
        assert res.sector_spectra[-l] == es


def test_repulsive_control_has_no_bound_states():
    p = RadialProblem(10.0, coulomb_strength=0.0)
    assert count_negative(p) == 0
    with pytest.raises(SpectrumShortfall) as err:
        solve_radial(p, 1)
    assert err.value.found == 0


@settings(max_examples=8)
@given(st.sampled_from([0.0, 1.0, 3.0]), st.integers(0, 2))
def test_harmonic_control(g, k):
    # -1/2 chi'' + g/r^2 chi + r^2/2 chi: E = 2k + nu + 1/2
    p = RadialProblem(g, coulomb_strength=0.0, r_max=12.0, grid_points=4000, harmonic_strength=1.0)
    e = eigenvalues(p, k + 1)[k]
    assert abs(e - (2 * k + p.nu + 0.5)) < 1e-4


def test_matrix_matches_lapack():
    d, e = tridiagonal(RadialProblem(-1 / 8, grid_points=3000, r_max=60))
    want = eigh_tridiagonal(d, e, eigvals_only=True, select="i", select_range=(0, 2))
    got = eigenvalues(RadialProblem(-1 / 8, grid_points=3000, r_max=60), 3)
    assert np.allclose(got, want, rtol=1e-10)


def test_richardson_orders():
    crit = richardson_check(RadialProblem(coefficient_1d("1/2")), 1)
    assert not crit.flagged and 1.0 <= crit.order <= 2.5
    harm = richardson_check(RadialProblem(0.0, 0.0, 10.0, 1000, 1.0), 1)
    assert abs(harm.order - 2) < 0.1
    coarse = richardson_check(RadialProblem(coefficient_1d("1/2"), grid_points=100), 1)
    assert coarse.flagged


def test_cluster():
    assert cluster([0.0, 0.0005, 1.0, 1.0002, 1.0004, 2.0], 1e-3) == [(0.00025, 2), (1.0002, 3), (2.0, 1)]


def test_contracts():
    with pytest.raises(ContractError):
        RadialProblem(-1 / 8, grid_points=50)
    with pytest.raises(ContractError):
        RadialProblem(-0.2)
    with pytest.raises(ContractError):
        solve_radial(RadialProblem(0.0), 0)
    with pytest.raises(ContractError):
        solve_2d(0, sectors=[0, 1])
    with pytest.raises(ContractError):
        sector_labels("1/4", 2)
