"""Bound states of the reduced Coulomb-type radial problems.

The radial equation

    -1/2 chi'' + g/r^2 chi - Z/r chi + 1/2 w^2 r^2 chi = E chi,   chi(r_max) = 0

is discretised after factoring out the regular behaviour at the origin:
chi = r^nu phi with nu(nu - 1) = 2g, nu >= 1/2.  This turns the operator into
the weighted Sturm-Liouville form

    -1/2 (r^{2nu} phi')' + r^{2nu} V phi = E r^{2nu} phi

which is discretised conservatively on cell centres r_i = (i - 1/2) h with a
zero-flux face at r = 0.  The face at r = 0 picks the Friedrichs extension,
also at the critical coupling g = -1/8 where a plain Dirichlet grid converges
very slowly.  Symmetrising with W^{-1/2} gives a symmetric tridiagonal matrix
whose lowest eigenvalues come from ``kernels.tridiag_eigvals``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .exact import ContractError


class SpectrumShortfall(ContractError):
    """Fewer bound states in the box than requested."""

    def __init__(self, requested: int, found: int, problem):
        super().__init__(f"requested {requested} negative eigenvalues, box holds {found} ({problem})")
        self.requested, self.found, self.problem = requested, found, problem


@dataclass(frozen=True)
class RadialProblem:
    inverse_square_coefficient: float
    coulomb_strength: float = 1.0
    r_max: float = 200.0
    grid_points: int = 20000
    harmonic_strength: float = 0.0

    def __post_init__(self):
        if self.grid_points < 100:
            raise ContractError("grid_points must be at least 100")
        if self.r_max <= 0:
            raise ContractError("r_max must be positive")
        if 2 * self.inverse_square_coefficient < -0.25 - 1e-15:
            raise ContractError("inverse-square coupling below -1/8 is not bounded below")

    @property
    def nu(self) -> float:
        return 0.5 + math.sqrt(max(0.25 + 2 * self.inverse_square_coefficient, 0.0))

    def with_grid(self, n: int) -> "RadialProblem":
        return RadialProblem(self.inverse_square_coefficient, self.coulomb_strength,
                             self.r_max, n, self.harmonic_strength)


def tridiagonal(p: RadialProblem) -> tuple[np.ndarray, np.ndarray]:
    n, h, nu = p.grid_points, p.r_max / p.grid_points, p.nu
    r = (np.arange(1, n + 1) - 0.5) * h
    faces = np.arange(1, n + 1) * h
    # r^{2nu} spans many decades for large nu; scale by the last face
    scale = faces[-1]
    w = (r / scale) ** (2 * nu)
    a = (faces / scale) ** (2 * nu)
    a_left = np.concatenate(([0.0], a[:-1]))
    pot = -p.coulomb_strength / r + 0.5 * p.harmonic_strength ** 2 * r * r
    diag = (a + a_left) / (2 * h * h * w) + pot
    off = -a[:-1] / (2 * h * h * np.sqrt(w[:-1] * w[1:]))
    return diag, off


def eigenvalues(p: RadialProblem, count: int, jit: bool | None = None) -> np.ndarray:
    """The ``count`` lowest eigenvalues, whatever their sign."""
    if count < 1:
        raise ContractError("count must be at least 1")
    d, e = tridiagonal(p)
    return kernels.tridiag_eigvals(d, e, np.arange(count), jit=jit)


def count_negative(p: RadialProblem, jit: bool | None = None) -> int:
    d, e = tridiagonal(p)
    return kernels.count_below(d, e, 0.0, jit=jit)


def solve_radial(p: RadialProblem, count: int, jit: bool | None = None) -> list[float]:
    """Lowest ``count`` bound-state energies; raises SpectrumShortfall if the
    box holds fewer negative eigenvalues."""
    if count < 1:
        raise ContractError("count must be at least 1")
    found = count_negative(p, jit)
    if found < count:
        raise SpectrumShortfall(count, found, p)
    return [float(x) for x in eigenvalues(p, count, jit)]


def coefficient_1d(mu) -> float:
    """g for -1/2 d^2 + g/x^2 - 1/|x| with g = (mu^2 - |mu|)/2."""
    mu = Fraction(mu)
    return float((mu * mu - abs(mu)) / 2)


def coefficient_2d(l) -> float:
    """Sector l of the planar problem after chi = sqrt(r) psi."""
    l = Fraction(l)
    return float((l * l - Fraction(1, 4)) / 2)


def exact_level(dim: int, mu, index: int) -> float:
    """Closed-form bound-state energy used as the reference in tests."""
    shift = abs(Fraction(mu)) if dim == 1 else Fraction(mu) + Fraction(1, 2)
    return -0.5 / float(index + shift) ** 2


@dataclass
class SpectrumResult:
    levels: list                 # (energy, l, k) sorted by energy
    grouped: list                # (mean energy, degeneracy)
    tolerance: float
    sector_spectra: dict = field(default_factory=dict)

    @property
    def energies(self) -> list[float]:
        return [e for e, _ in self.grouped]

    @property
    def degeneracies(self) -> list[int]:
        return [k for _, k in self.grouped]


def cluster(values, tol: float) -> list[tuple[float, int]]:
    """Group sorted values whose neighbours are within ``tol``."""
    groups: list[list[float]] = []
    for v in sorted(values):
        if groups and v - groups[-1][-1] <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return [(float(np.mean(g)), len(g)) for g in groups]


def sector_labels(mu, max_abs: Fraction) -> list[Fraction]:
    mu = Fraction(mu)
    if mu not in (0, Fraction(1, 2)):
        raise ContractError("planar problem needs mu in {0, 1/2}")
    out = []
    l = mu
    while l <= max_abs:
        out.append(l)
        if l:
            out.append(-l)
        l += 1
    return sorted(out)


def solve_2d(mu, sectors=None, count: int = 3, tol: float = 1e-3, r_max: float = 200.0,
             grid_points: int = 20000, workers: int = 1) -> SpectrumResult:
    """Planar spectrum assembled from the angular sectors l in mu + Z.

    With ``sectors`` omitted, every |l| <= count - 1 + mu is included, which
    makes the first ``count`` clustered levels complete.
    """
    mu = Fraction(mu)
    if sectors is None:
        sectors = sector_labels(mu, count - 1 + mu)
    sectors = [Fraction(l) for l in sectors]
    if sorted(sectors) != sorted(-l for l in sectors):
        raise ContractError("sectors must be symmetric around 0")
    for l in sectors:
        if (l - mu).denominator != 1:
            raise ContractError(f"sector {l} is not in mu + Z")

    def one(l):
        p = RadialProblem(coefficient_2d(l), 1.0, r_max, grid_points)
        return l, solve_radial(p, count)

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            spectra = dict(ex.map(one, sectors))
    else:
        spectra = dict(map(one, sectors))
    levels = sorted((e, l, k) for l, es in spectra.items() for k, e in enumerate(es))
    grouped = cluster([e for e, _, _ in levels], tol)
    # the top of the window can be incomplete; keep only the first `count` groups
    return SpectrumResult(levels, grouped[:count], tol, spectra)


def solve_1d(mu, count: int = 3, r_max: float = 200.0, grid_points: int = 20000) -> list[float]:
    return solve_radial(RadialProblem(coefficient_1d(mu), 1.0, r_max, grid_points), count)


@dataclass
class RichardsonReport:
    values: list       # eigenvalue at N, 2N, 4N
    order: float | None
    monotone: bool
    flagged: bool
    extrapolated: float | None = None


def richardson_check(p: RadialProblem, level: int, rel_tol: float = 1e-3) -> RichardsonReport:
    """Observed convergence order of one eigenvalue over grids N, 2N, 4N.

    Flagged (not fatal) when the sequence is not monotone or the last
    refinement still moves the value by more than ``rel_tol``.
    """
    n = p.grid_points
    vals = [float(eigenvalues(p.with_grid(k), level + 1)[level]) for k in (n, 2 * n, 4 * n)]
    d1, d2 = vals[0] - vals[1], vals[1] - vals[2]
    monotone = d1 * d2 > 0 and abs(d2) < abs(d1)
    order = math.log2(abs(d1 / d2)) if monotone and d2 != 0 else None
    extra = vals[2] - d2 / (2 ** order - 1) if order else None
    flagged = not monotone or abs(d2) > rel_tol * abs(vals[2])
    return RichardsonReport(vals, order, monotone, flagged, extra)
