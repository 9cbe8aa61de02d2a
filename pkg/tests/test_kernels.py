import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy.linalg import eigh_tridiagonal

from sorelations import kernels

floats = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def tridiag(draw):
    n = draw(st.integers(2, 40))
    d = draw(arrays(float, n, elements=floats))
    e = draw(arrays(float, n - 1, elements=floats))
    return d, e


BACKENDS = [False] + ([True] if kernels.njit is not None else [])


@pytest.mark.parametrize("jit", BACKENDS)
@given(tridiag())
def test_eigenvalues_match_lapack(jit, de):
    d, e = de
    want = eigh_tridiagonal(d, e, eigvals_only=True)
    k = min(len(d), 4)
    got = kernels.tridiag_eigvals(d, e, np.arange(k), jit=jit)
    scale = max(1.0, np.abs(want).max())
    assert np.allclose(got, want[:k], atol=1e-9 * scale)


@pytest.mark.parametrize("jit", BACKENDS)
@given(tridiag(), floats)
def test_sturm_count(jit, de, x):
    d, e = de
    ev = eigh_tridiagonal(d, e, eigvals_only=True)
    assume(np.min(np.abs(ev - x)) > 1e-8)
    assert kernels.count_below(d, e, x, jit=jit) == int((ev < x).sum())


@given(tridiag())
def test_backends_agree(de):
    if kernels.njit is None:
        pytest.skip("numba not installed")
    d, e = de
    ks = np.arange(min(3, len(d)))
    a = kernels.tridiag_eigvals(d, e, ks, jit=True)
    b = kernels.tridiag_eigvals(d, e, ks, jit=False)
    assert np.allclose(a, b, atol=1e-10 * max(1.0, np.abs(a).max()))


def test_zero_offdiagonal():
    d = np.array([3.0, -1.0, 2.0])
    got = kernels.tridiag_eigvals(d, np.zeros(2), [0, 1, 2])
    assert np.allclose(got, [-1, 2, 3])


def test_env_flag_selects_fallback():
    env = dict(os.environ, SORELATIONS_JIT="0")
    out = subprocess.run([sys.executable, "-c", "from sorelations import kernels; print(kernels.USE_JIT)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"
