"""Finite-dimensional unitary modules of so(2n+1) and so(2n) and the
representation-relation checker.

Modules are spin representations, Cartan powers of them (cyclic span of
the top tensor vector inside a tensor power) and a couple of negative
controls (vector and adjoint).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .cartan import (B, D, CartanDictionary, Weight, build_dictionary, check_kind,
                     is_dominant, is_noncompact, long_root_vector, m_combo,
                     signature_for)
from .clifford import MatrixRep, chirality, gamma_rep, restrict
from .exact import (G0, ContractError, ExactMatrix, GaussianRational, Q, hstack,
                    nullspace, rank, solve)

# ---------------------------------------------------------------------------
# relation checks on arbitrary matrix reps


@dataclass
class RelationReport:
    passed: bool
    a: GaussianRational | None = None
    first_violation: tuple | None = None


def relation_matrix(rep: MatrixRep, mu: int, nu: int) -> ExactMatrix:
    """sum_lambda {M_{mu lambda}, M^lambda_nu}."""
    sig = rep.signature
    out = ExactMatrix.zeros(rep.dim)
    for lam in sig.labels:
        if lam in (mu, nu):
            continue
        x = rep.M(mu, lam)
        y = rep.M(lam, nu)
        out = out + (x @ y + y @ x).scale(sig.eta(lam))
    return out


def check_relations(m) -> RelationReport:
    rep = m.rep if isinstance(m, CompactModule) else m
    sig = rep.signature
    labels = sig.labels
    first = labels[0]
    a = relation_matrix(rep, first, first).scalar_value()
    if a is None:
        return RelationReport(False, None, (first, first, "not scalar"))
    a = a * sig.eta(first)
    ident = ExactMatrix.identity(rep.dim)
    for i, mu in enumerate(labels):
        for nu in labels[i:]:
            want = ident.scale(a * sig.eta(mu)) if mu == nu else ExactMatrix.zeros(rep.dim)
            diff = relation_matrix(rep, mu, nu) - want
            if not diff.is_zero():
                return RelationReport(False, None, (mu, nu, diff.nonzero_entry()))
    return RelationReport(True, a)


def casimir_matrix(rep: MatrixRep) -> ExactMatrix:
    """sum over ordered pairs of M_{mu lambda} M^{mu lambda}."""
    sig = rep.signature
    out = ExactMatrix.zeros(rep.dim)
    for a, b in sig.pairs():
        m = rep.mats[a, b]
        out = out + (m @ m).scale(2 * sig.eta(a) * sig.eta(b))
    return out


def casimir_C(rep) -> GaussianRational:
    rep = rep.rep if isinstance(rep, CompactModule) else rep
    c = casimir_matrix(rep).scalar_value()
    if c is None:
        raise ContractError("reducible input: Casimir is not scalar")
    return c


# ---------------------------------------------------------------------------
# weights of concrete reps


def weyl_dim(kind: str, weight: Weight) -> int:
    n = len(weight)
    check_kind(kind, n)
    if is_noncompact(kind):
        raise ContractError("Weyl dimension formula is for the compact kinds")
    if not is_dominant(kind, weight):
        raise ContractError(f"weight {weight} is not dominant")
    from .cartan import RootSystem
    roots = RootSystem(kind, n).positive_roots
    shift = Q(1, 2) if kind == B else Q(0)
    rho = [n - i + shift for i in range(1, n + 1)]
    num = den = Q(1)
    for r in roots:
        num *= sum((w + p) * c for w, p, c in zip(weight, rho, r))
        den *= sum(p * c for p, c in zip(rho, r))
    out = num / den
    assert out.denominator == 1
    return int(out)


def _half_range(m: ExactMatrix) -> int:
    """Bound on 2|eigenvalue| of a diagonalisable matrix, from its Frobenius norm."""
    z = m.to_complex()
    return int(2 * np.sqrt(np.sum(np.abs(z) ** 2)) + 2)


def weight_spaces(rep: MatrixRep, d: CartanDictionary) -> dict:
    """Joint eigenspaces of the H_i: {weight tuple: column basis}."""
    spaces = {(): ExactMatrix.identity(rep.dim)}
    for i in d.roots.indices:
        H = rep.element(d.h_defs[i])
        bound = _half_range(H)
        nxt = {}
        for w, basis in spaces.items():
            pr, _ = _pivot_rows(basis)
            act = solve(basis.submatrix(pr, range(basis.cols)), (H @ basis).submatrix(pr, range(basis.cols)))
            found = 0
            for t in range(-bound, bound + 1):
                v = Q(t, 2)
                ker = nullspace(act - ExactMatrix.identity(act.rows).scale(v))
                if ker is not None:
                    nxt[w + (v,)] = basis @ ker
                    found += ker.cols
            if found != basis.cols:
                raise ContractError("Cartan generators are not diagonalisable with half-integer weights")
        spaces = nxt
    return spaces


def _pivot_rows(basis: ExactMatrix):
    from .exact import rref
    _, piv = rref(basis.transpose())
    return piv, len(piv)


def positive_E(rep: MatrixRep, d: CartanDictionary) -> list[ExactMatrix]:
    return [rep.element(d.e_defs[r]) for r in d.roots.positive_roots]


def highest_weight_vectors(rep: MatrixRep, d: CartanDictionary) -> ExactMatrix | None:
    Es = positive_E(rep, d)
    if not Es:
        return ExactMatrix.identity(rep.dim)
    from .exact import vstack
    return nullspace(vstack(Es))


# ---------------------------------------------------------------------------
# modules


@dataclass
class CompactModule:
    kind: str
    n: int
    rep: MatrixRep
    highest_weight: Weight
    hw_vector: ExactMatrix
    weight_table: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.rep.dim

    @property
    def dictionary(self) -> CartanDictionary:
        return build_dictionary(self.kind, self.n)


def module_from_rep(kind: str, n: int, rep: MatrixRep) -> CompactModule:
    """Wrap an irreducible rep: locate its highest weight vector and weights."""
    d = build_dictionary(kind, n)
    hw = highest_weight_vectors(rep, d)
    if hw is None or hw.cols != 1:
        raise ContractError("representation is not irreducible (highest weight space has dim != 1)")
    lam = []
    for i in d.roots.indices:
        image = rep.element(d.h_defs[i]) @ hw
        k = next(r for r in range(hw.rows) if hw[r, 0])
        val = image[k, 0] / hw[k, 0]
        if image != hw.scale(val):
            raise ContractError("highest weight vector is not an H eigenvector")
        lam.append(val.re)
    spaces = weight_spaces(rep, d)
    table = sorted(((Weight(w), b.cols) for w, b in spaces.items()), key=lambda t: t[0].entries, reverse=True)
    return CompactModule(kind, n, rep, Weight(lam), hw, table)


def spinor_module(kind: str, n: int, sign: int = 1) -> CompactModule:
    """Spin rep (B) or the half-spin rep s_sign (D)."""
    check_kind(kind, n)
    if kind not in (B, D):
        raise ContractError("spinor_module is for the compact kinds")
    sig = signature_for(kind, n)
    full = gamma_rep(sig)
    if kind == B:
        return module_from_rep(kind, n, full)
    gam = chirality(sig)
    for ev in (1, -1):
        basis = nullspace(gam - ExactMatrix.identity(full.dim).scale(ev))
        half = restrict(full, basis, tag=f"half-spin {sig}")
        mod = module_from_rep(kind, n, half)
        if (mod.highest_weight[-1] > 0) == (sign > 0):
            mod.rep.tag = f"s_{'+' if sign > 0 else '-'} of {sig}"
            return mod
    raise AssertionError("chirality split did not produce both half-spin reps")


def trivial_module(kind: str, n: int) -> CompactModule:
    sig = signature_for(kind, n)
    z = ExactMatrix.zeros(1)
    rep = MatrixRep(sig, {p: z for p in sig.pairs()}, 1, tag="trivial", unitary=True)
    return CompactModule(kind, n, rep, Weight([0] * n), ExactMatrix.identity(1), [(Weight([0] * n), 1)])


def vector_rep(kind: str, n: int) -> MatrixRep:
    """Defining rep: (M_{ab})_{cd} = -i(delta_ac delta_bd - delta_ad delta_bc)."""
    sig = signature_for(kind, n)
    N = sig.dim
    mats = {}
    for a, b in sig.pairs():
        re = np.zeros((N, N), dtype=np.int64)
        im = np.zeros((N, N), dtype=np.int64)
        pa, pb = sig.pos(a), sig.pos(b)
        im[pa, pb] = -1
        im[pb, pa] = 1
        mats[a, b] = ExactMatrix(re, im)
    return MatrixRep(sig, mats, N, tag=f"vector {sig}", unitary=sig.compact)


def adjoint_rep(kind: str, n: int) -> MatrixRep:
    """ad(M_{ab}) in the M-basis."""
    d = build_dictionary(kind, n)
    alg = d.algebra
    mats = {}
    for x in alg.pairs:
        cols = [alg.to_vector(alg.bracket_pairs(x, y)) for y in alg.pairs]
        mats[x] = ExactMatrix.from_rows([list(r) for r in zip(*cols)])
    return MatrixRep(d.sig, mats, alg.dim, tag=f"adjoint {d.sig}", unitary=d.sig.compact)


def tensor_power_rep(rep: MatrixRep, k: int) -> MatrixRep:
    ident = ExactMatrix.identity(rep.dim)
    mats = {}
    for key, m in rep.mats.items():
        tot = None
        for slot in range(k):
            term = None
            for j in range(k):
                f = m if j == slot else ident
                term = f if term is None else term.kron(f)
            tot = term if tot is None else tot + term
        mats[key] = tot
    gram = None
    if rep.gram is not None:
        gram = rep.gram
        for _ in range(k - 1):
            gram = gram.kron(rep.gram)
    return MatrixRep(rep.signature, mats, rep.dim ** k, f"{rep.tag}^(x){k}", rep.unitary, gram)


def cartan_power(base: CompactModule, k: int) -> CompactModule:
    """Irreducible submodule of base^{(x)k} generated by hw^{(x)k}."""
    if k < 0:
        raise ContractError("k must be non-negative")
    if k == 0:
        return trivial_module(base.kind, base.n)
    if k == 1:
        return base
    d = base.dictionary
    big = tensor_power_rep(base.rep, k)
    top = base.hw_vector
    for _ in range(k - 1):
        top = top.kron(base.hw_vector)
    lowering = [big.element(d.e_defs[tuple(-c for c in s)]) for s in d.roots.simple_roots]
    basis = _cyclic_span(top, lowering)
    rep = restrict(big, basis, tag=f"cartan power {k} of {base.rep.tag}")
    return module_from_rep(base.kind, base.n, rep)


def _cyclic_span(start: ExactMatrix, ops) -> ExactMatrix:
    """Span of ``start`` under the algebra generated by ``ops`` (exact closure)."""
    vecs = [start]
    frontier = [start]
    current = start
    r = 1
    while frontier:
        nxt = []
        for v in frontier:
            for op in ops:
                w = op @ v
                if w.is_zero():
                    continue
                cand = hstack([current, w])
                rc = rank(cand)
                if rc > r:
                    current, r = cand, rc
                    vecs.append(w)
                    nxt.append(w)
        frontier = nxt
    return current


# ---------------------------------------------------------------------------
# annihilator operators on D-type modules


@dataclass
class AnnihilatorReport:
    O_zero: bool
    O1_kills_hw: bool
    decomposition: bool
    cross_terms: bool
    reflected: bool

    @property
    def passed(self) -> bool:
        return self.O_zero and self.O1_kills_hw and self.decomposition and self.cross_terms


def _reflect(combo: dict, first: int) -> dict:
    """M_{1k} -> -M_{1k}: the Pin(2n) element exchanging s_+ and s_-."""
    return {k: (-v if first in k else v) for k, v in combo.items()}


def verify_annihilator_identity(m: CompactModule) -> AnnihilatorReport:
    if m.kind != D:
        raise ContractError("the annihilator identity is stated for so(2n)")
    rep, n = m.rep, m.n
    d = m.dictionary
    sig = d.sig
    reflected = m.highest_weight[-1] < 0
    fix = (lambda c: _reflect(c, 1)) if reflected else (lambda c: c)

    def E(s, t, j, k):
        return rep.element(fix(long_root_vector(sig, j, k, s, t)))

    def H(i):
        return rep.element(fix(d.h_defs[i]))

    O = ExactMatrix.zeros(rep.dim)
    for i in range(2, n + 1):
        O = O + E(-1, -1, 1, i) @ E(-1, 1, 1, i)
    Odag = _adjoint(rep, O)

    C = casimir_C(rep)
    c2 = C / 2
    ident = ExactMatrix.identity(rep.dim)
    O1 = H(1) @ H(1) - ident.scale(c2 / n)
    half = GaussianRational("1/2")
    for i in range(2, n + 1):
        for s in (1, -1):
            a, b = E(-1, -s, 1, i), E(1, s, 1, i)
            O1 = O1 + (a @ b + b @ a).scale(half)

    sumsq = ExactMatrix.zeros(rep.dim)
    for k in sig.labels:
        if k != 1:
            x = rep.element(fix(m_combo(sig, 1, k)))
            sumsq = sumsq + x @ x
    decomposition = sumsq - ident.scale(c2 / n) == O1 + O + Odag

    cross_terms = True
    for i in sig.labels:
        for j in sig.labels:
            if sig.pos(i) >= sig.pos(j):
                continue
            tot = ExactMatrix.zeros(rep.dim)
            for k in sig.labels:
                if k in (i, j):
                    continue
                x, y = rep.M(i, k), rep.M(j, k)
                tot = tot + x @ y + y @ x
            if not tot.is_zero():
                cross_terms = False
    twelve = ExactMatrix.zeros(rep.dim)
    for k in sig.labels[2:]:
        x = rep.element(fix(m_combo(sig, 1, k)))
        y = rep.element(fix(m_combo(sig, 2, k)))
        twelve = twelve + x @ y + y @ x
    cross_terms = cross_terms and twelve == (Odag - O).scale(GaussianRational(0, -2))

    return AnnihilatorReport(O.is_zero(), (O1 @ m.hw_vector).is_zero(), decomposition, cross_terms, reflected)


def annihilator_operator(m: CompactModule) -> ExactMatrix:
    """The matrix of sum_{i != 1} E_{-e1-ei} E_{-e1+ei} on the module (no reflection)."""
    sig = m.rep.signature
    O = ExactMatrix.zeros(m.rep.dim)
    for i in range(2, m.n + 1):
        O = O + m.rep.element(long_root_vector(sig, 1, i, -1, -1)) @ m.rep.element(long_root_vector(sig, 1, i, -1, 1))
    return O


def _adjoint(rep: MatrixRep, x: ExactMatrix) -> ExactMatrix:
    if rep.gram is None:
        return x.adjoint()
    return solve(rep.gram, x.adjoint() @ rep.gram)


def module_for_weight(kind: str, n: int, hw) -> CompactModule:
    """Construct a module with highest weight ``hw`` from the reps available here:
    trivial, Cartan powers of the spinors, vector and adjoint."""
    hw = hw if isinstance(hw, Weight) else Weight(hw)
    check_kind(kind, n)
    if len(hw) != n:
        raise ContractError(f"highest weight needs {n} entries")
    e = hw.entries
    if all(x == 0 for x in e):
        return trivial_module(kind, n)
    k = 2 * abs(e[0])
    if k.denominator == 1 and all(abs(x) == abs(e[0]) for x in e) and e[0] > 0:
        if kind == B and e[-1] > 0:
            return cartan_power(spinor_module(kind, n), int(k))
        if kind == D and all(x > 0 for x in e[:-1]):
            return cartan_power(spinor_module(kind, n, 1 if e[-1] > 0 else -1), int(k))
    if list(e) == [1] + [0] * (n - 1):
        return module_from_rep(kind, n, vector_rep(kind, n))
    if list(e) == [1, 1] + [0] * (n - 2) and (kind == B or n >= 3):
        return module_from_rep(kind, n, adjoint_rep(kind, n))
    raise ContractError(f"no construction available for highest weight {hw}")
