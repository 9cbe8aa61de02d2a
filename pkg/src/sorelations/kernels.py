"""Eigenvalues of symmetric tridiagonal matrices by Sturm-sequence bisection.

Two interchangeable backends: a numba-compiled scalar kernel and a numpy
fallback that runs the recurrence for many shifts at once.  Set
``SORELATIONS_JIT=0`` to force the fallback (it is also used when numba is
not importable).
"""
from __future__ import annotations

import os

import numpy as np

try:  # optional accelerator
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None

USE_JIT = njit is not None and os.environ.get("SORELATIONS_JIT", "1") != "0"


def _pivmin(e2: np.ndarray) -> float:
    return np.finfo(float).tiny * max(1.0, float(e2.max(initial=0.0)))


def sturm_count_numpy(d: np.ndarray, e2: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Number of eigenvalues strictly below each shift in ``x``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    pm = _pivmin(e2)
    count = np.zeros(x.shape, dtype=np.int64)
    q = d[0] - x
    q = np.where(np.abs(q) < pm, -pm, q)
    count += q < 0
    for i in range(1, len(d)):
        q = d[i] - x - e2[i - 1] / q
        q = np.where(np.abs(q) < pm, -pm, q)
        count += q < 0
    return count


def bisect_numpy(d, e2, ks, lo, hi, tol):
    ks = np.asarray(ks, dtype=np.int64)
    a = np.full(ks.shape, lo, dtype=float)
    b = np.full(ks.shape, hi, dtype=float)
    while np.max(b - a) > tol:
        mid = 0.5 * (a + b)
        c = sturm_count_numpy(d, e2, mid)
        above = c > ks
        b = np.where(above, mid, b)
        a = np.where(above, a, mid)
    return 0.5 * (a + b)


if njit is not None:

    @njit(cache=True)
    def _count_jit(d, e2, x, pm):
        q = d[0] - x
        if abs(q) < pm:
            q = -pm
        c = 1 if q < 0 else 0
        for i in range(1, d.shape[0]):
            q = d[i] - x - e2[i - 1] / q
            if abs(q) < pm:
                q = -pm
            if q < 0:
                c += 1
        return c

    @njit(cache=True)
    def _bisect_jit(d, e2, ks, lo, hi, tol, pm):
        out = np.empty(ks.shape[0])
        for j in range(ks.shape[0]):
            a, b = lo, hi
            while b - a > tol:
                mid = 0.5 * (a + b)
                if _count_jit(d, e2, mid, pm) > ks[j]:
                    b = mid
                else:
                    a = mid
            out[j] = 0.5 * (a + b)
        return out

    def sturm_count_jit(d, e2, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        pm = _pivmin(e2)
        return np.array([_count_jit(d, e2, float(v), pm) for v in x], dtype=np.int64)


def gershgorin(d: np.ndarray, e: np.ndarray) -> tuple[float, float]:
    r = np.zeros_like(d)
    r[:-1] += np.abs(e)
    r[1:] += np.abs(e)
    return float(np.min(d - r)), float(np.max(d + r))


def tridiag_eigvals(d, e, ks, tol: float = 1e-12, jit: bool | None = None) -> np.ndarray:
    """Eigenvalues with (0-based, ascending) indices ``ks`` of the symmetric
    tridiagonal matrix with diagonal ``d`` and off-diagonal ``e``."""
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    e2 = e * e
    lo, hi = gershgorin(d, e)
    span = max(hi - lo, 1.0)
    lo, hi = lo - 1e-9 * span, hi + 1e-9 * span
    ks = np.asarray(ks, dtype=np.int64)
    use = USE_JIT if jit is None else (jit and njit is not None)
    if use:
        return _bisect_jit(d, e2, ks, lo, hi, tol * span, _pivmin(e2))
    return bisect_numpy(d, e2, ks, lo, hi, tol * span)


def count_below(d, e, x: float, jit: bool | None = None) -> int:
    d = np.ascontiguousarray(d, dtype=float)
    e2 = np.ascontiguousarray(e, dtype=float) ** 2
    use = USE_JIT if jit is None else (jit and njit is not None)
    f = sturm_count_jit if use else sturm_count_numpy
    return int(f(d, e2, x)[0])
