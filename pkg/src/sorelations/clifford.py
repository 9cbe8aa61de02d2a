"""Complex Clifford algebras, the elements M_{mu nu}, and gamma matrices.

Generators obey ``X_mu X_nu + X_nu X_mu = -2 eta_{mu nu}`` with
``eta = diag(+1 x p, -1 x q)`` over an ordered list of integer labels.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .exact import G0, GaussianRational, I, ContractError, ExactMatrix


@dataclass(frozen=True)
class Signature:
    p: int
    q: int
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p + self.q < 2:
            raise ContractError("need p, q >= 0 and p + q >= 2")
        labels = tuple(self.labels) or tuple(range(1, self.p + self.q + 1))
        if len(labels) != self.p + self.q or len(set(labels)) != len(labels):
            raise ContractError("labels must be p + q distinct integers")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_pos", {l: k for k, l in enumerate(labels)})

    @classmethod
    def conformal(cls, q: int) -> "Signature":
        """so(2, q) with the labels -1, 0, 1, ..., q."""
        return cls(2, q, tuple(range(-1, q + 1)))

    @property
    def dim(self) -> int:
        return self.p + self.q

    def pos(self, label: int) -> int:
        try:
            return self._pos[label]
        except KeyError:
            raise ContractError(f"label {label} not in {self.labels}") from None

    def eta(self, a: int, b: int | None = None) -> int:
        """Metric entry; diagonal so eta^{mu nu} has the same entries."""
        if b is not None and a != b:
            return 0
        return 1 if self.pos(a) < self.p else -1

    def pairs(self) -> list[tuple[int, int]]:
        """Label pairs (a, b) with a before b."""
        L = self.labels
        return [(L[i], L[j]) for i in range(len(L)) for j in range(i + 1, len(L))]

    @property
    def compact(self) -> bool:
        return self.p == 0 or self.q == 0

    def __str__(self):
        return f"so({self.p},{self.q})" if self.q else f"so({self.p})"


# ---------------------------------------------------------------------------
# blade algebra

@dataclass
class CliffordElement:
    sig: Signature
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {tuple(k): GaussianRational.coerce(v)
                      for k, v in self.terms.items() if v}

    @classmethod
    def scalar(cls, sig, s) -> "CliffordElement":
        return cls(sig, {(): s})

    @classmethod
    def generator(cls, sig, mu: int) -> "CliffordElement":
        sig.pos(mu)
        return cls(sig, {(mu,): 1})

    def _check(self, other):
        if self.sig != other.sig:
            raise ContractError("elements over different signatures")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, G0) + v
        return CliffordElement(self.sig, t)

    def __neg__(self):
        return CliffordElement(self.sig, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = GaussianRational.coerce(s)
        return CliffordElement(self.sig, {k: v * s for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return blade_mul(self, other, self.sig)
        return self.scale(other)

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, CliffordElement) and self.sig == other.sig and self.terms == other.terms


def _basis_product(a: tuple, b: tuple, sig: Signature):
    """Product of two basis blades: (coefficient, blade)."""
    pa = [sig.pos(x) for x in a]
    pb = [sig.pos(y) for y in b]
    swaps = sum(1 for y in pb for x in pa if x > y)
    coeff = -1 if swaps % 2 else 1
    common = set(pa) & set(pb)
    for k in common:
        # X_k X_k = -eta_kk
        coeff *= -1 if k < sig.p else 1
    out = sorted(set(pa) ^ set(pb))
    return coeff, tuple(sig.labels[k] for k in out)


def blade_mul(a: CliffordElement, b: CliffordElement, sig: Signature) -> CliffordElement:
    if a.sig != sig or b.sig != sig:
        raise ContractError("signature mismatch in blade_mul")
    out: dict = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            s, blade = _basis_product(ka, kb, sig)
            v = va * vb
            out[blade] = out.get(blade, G0) + (v if s > 0 else -v)
    return CliffordElement(sig, out)


def make_M(mu: int, nu: int, sig: Signature) -> CliffordElement:
    """M_{mu nu} = (i/4)(X_mu X_nu - X_nu X_mu)."""
    if mu == nu:
        sig.pos(mu)
        return CliffordElement(sig)
    xm = CliffordElement.generator(sig, mu)
    xn = CliffordElement.generator(sig, nu)
    return (xm * xn - xn * xm).scale(GaussianRational(0, "1/4"))


def _bracket_rhs(eta, a, b, c, d):
    """-i(eta_bc M_ad - eta_ac M_bd - eta_bd M_ac + eta_ad M_bc) as (coeff, pair) terms."""
    return [(-eta(b, c), (a, d)), (eta(a, c), (b, d)), (eta(b, d), (a, c)), (-eta(a, d), (b, c))]


def check_blade_bracket(sig: Signature) -> list[tuple]:
    """Quadruples where the so(p,q) bracket fails inside the blade algebra."""
    L = sig.labels
    Ms = {(a, b): make_M(a, b, sig) for a in L for b in L}
    bad = []
    for a, b, c, d in product(L, repeat=4):
        lhs = Ms[a, b] * Ms[c, d] - Ms[c, d] * Ms[a, b]
        rhs = CliffordElement(sig)
        for s, pair in _bracket_rhs(sig.eta, a, b, c, d):
            if s:
                rhs = rhs + Ms[pair].scale(I * s)
        if lhs != rhs:
            bad.append((a, b, c, d))
    return bad


# ---------------------------------------------------------------------------
# matrix representations

@dataclass
class MatrixRep:
    """A family {M_{mu nu}} of exact matrices.

    ``mats`` holds M_{ab} for label pairs with a before b; other orders are
    produced by antisymmetry.  ``gram`` is the positive hermitian form the
    generators are self-adjoint for (identity when ``None``).
    """

    signature: Signature
    mats: dict
    dim: int
    tag: str = ""
    unitary: bool = False
    gram: ExactMatrix | None = None

    def M(self, a: int, b: int) -> ExactMatrix:
        if a == b:
            return ExactMatrix.zeros(self.dim)
        if self.signature.pos(a) < self.signature.pos(b):
            return self.mats[a, b]
        return -self.mats[b, a]

    def is_self_adjoint(self, m: ExactMatrix) -> bool:
        if self.gram is None:
            return m.is_hermitian()
        return m.adjoint() @ self.gram == self.gram @ m

    def element(self, combo: dict) -> ExactMatrix:
        """Matrix of a linear combination {(a, b): coeff} of the M's."""
        out = ExactMatrix.zeros(self.dim)
        for (a, b), c in combo.items():
            if c:
                out = out + self.M(a, b).scale(c)
        return out


def check_so_bracket(rep: MatrixRep, first_only: bool = False) -> list[tuple]:
    """Quadruples (a, b, c, d) violating the so(p,q) commutator exactly."""
    sig = rep.signature
    L = sig.labels
    pairs = sig.pairs()
    prod = {}
    for x in pairs:
        for y in pairs:
            prod[x, y] = rep.M(*x) @ rep.M(*y)

    def canon(a, b):
        return ((a, b), 1) if sig.pos(a) < sig.pos(b) else ((b, a), -1)

    bad = []
    zero = ExactMatrix.zeros(rep.dim)
    for a, b, c, d in product(L, repeat=4):
        if a == b or c == d:
            lhs = zero
        else:
            x, sx = canon(a, b)
            y, sy = canon(c, d)
            lhs = (prod[x, y] - prod[y, x]).scale(sx * sy)
        rhs = zero
        for s, pair in _bracket_rhs(sig.eta, a, b, c, d):
            if s and pair[0] != pair[1]:
                rhs = rhs + rep.M(*pair).scale(I * s)
        if lhs != rhs:
            bad.append((a, b, c, d))
            if first_only:
                break
    return bad


_S1 = ExactMatrix.from_rows([[0, 1], [1, 0]])
_S2 = ExactMatrix.from_rows([[0, -I], [I, 0]])
_S3 = ExactMatrix.from_rows([[1, 0], [0, -1]])
_ID2 = ExactMatrix.identity(2)


def _kron_all(mats) -> ExactMatrix:
    out = mats[0]
    for m in mats[1:]:
        out = out.kron(m)
    return out


def euclidean_gammas(N: int) -> list[ExactMatrix]:
    """Hermitian gamma_1..gamma_N with gamma_a gamma_b + gamma_b gamma_a = 2 delta_ab.

    Size 2^(N // 2), iterated tensor products of Pauli matrices; for odd N
    the last one is the chirality of the first N - 1.
    """
    m = N // 2
    gam = []
    for k in range(m):
        head = [_S3] * k
        tail = [_ID2] * (m - k - 1)
        gam.append(_kron_all(head + [_S1] + tail))
        gam.append(_kron_all(head + [_S2] + tail))
    if N % 2:
        gam.append(_chirality(gam) if m else ExactMatrix.identity(1))
    return gam


def _chirality(gam) -> ExactMatrix:
    m = len(gam) // 2
    out = gam[0]
    for g in gam[1:]:
        out = out @ g
    phase = [1, I, -1, -I][m % 4]
    return out.scale(phase)


def gamma_generators(sig: Signature) -> dict:
    """Matrices X_mu with X_mu X_nu + X_nu X_mu = -2 eta_{mu nu}."""
    gam = euclidean_gammas(sig.dim)
    return {l: (gam[k].scale(I) if sig.eta(l) > 0 else gam[k]) for k, l in enumerate(sig.labels)}


def gamma_rep(sig: Signature) -> MatrixRep:
    X = gamma_generators(sig)
    mats = {}
    for a, b in sig.pairs():
        mats[a, b] = (X[a] @ X[b] - X[b] @ X[a]).scale(GaussianRational(0, "1/4"))
    dim = X[sig.labels[0]].rows
    return MatrixRep(sig, mats, dim, tag=f"gamma {sig}", unitary=sig.compact)


def chirality(sig: Signature) -> ExactMatrix:
    """Hermitian involution commuting with every M_{mu nu} (even p + q only)."""
    if sig.dim % 2:
        raise ContractError("chirality needs an even number of generators")
    return _chirality(euclidean_gammas(sig.dim))


def clifford_image(elem: CliffordElement) -> ExactMatrix:
    """Matrix of a Clifford element under the gamma construction."""
    X = gamma_generators(elem.sig)
    n = X[elem.sig.labels[0]].rows
    out = ExactMatrix.zeros(n)
    for blade, c in elem.terms.items():
        m = ExactMatrix.identity(n)
        for l in blade:
            m = m @ X[l]
        out = out + m.scale(c)
    return out


def restrict(rep: MatrixRep, basis: ExactMatrix, tag: str = "") -> MatrixRep:
    """Restriction of ``rep`` to the invariant subspace spanned by the columns of ``basis``."""
    from .exact import rref, solve

    _, piv_rows = rref(basis.transpose())
    bp = basis.submatrix(piv_rows, range(basis.cols))
    mats = {}
    for key, m in rep.mats.items():
        img = m @ basis
        small = solve(bp, img.submatrix(piv_rows, range(basis.cols)))
        if basis @ small != img:
            raise ContractError("subspace is not invariant")
        mats[key] = small
    g = basis.adjoint() @ (basis if rep.gram is None else rep.gram @ basis)
    gram = None if g == ExactMatrix.identity(basis.cols) else g
    return MatrixRep(rep.signature, mats, basis.cols, tag or rep.tag, rep.unitary, gram)


def coordinate_projector(dim: int, keep) -> ExactMatrix:
    """Columns of the identity selecting the coordinates in ``keep``."""
    return ExactMatrix(np.eye(dim, dtype=np.int64)[:, list(keep)])
