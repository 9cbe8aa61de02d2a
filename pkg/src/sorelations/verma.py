"""Truncated highest weight modules of so(2,2n+1) and so(2,2n).

The module is the Verma module: PBW monomials in the negative root vectors
applied to the highest weight vector.  Everything is exact; actions are
computed by straightening with the structure constants of the Cartan basis
and memoised per (generator, monomial).  The Shapovalov form uses
(E_a)^dagger = E_-a, H^dagger = H, which is what hermitian M's give in the
dictionary of ``cartan``.

Relation checks go through the Shapovalov pairing, so they are statements
about the irreducible quotient: Q u is required to lie in the radical.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property

from .cartan import (CartanDictionary, Weight, build_dictionary, check_kind, is_dominant,
                     is_noncompact, m_combo)
from .exact import G0, G1, ContractError, ExactMatrix, GaussianRational, Q, inertia

Vec = dict  # monomial -> GaussianRational


def _vadd(out: Vec, v: Vec, c=G1):
    for k, x in v.items():
        y = out.get(k)
        y = x * c if y is None else y + x * c
        if y:
            out[k] = y
        else:
            out.pop(k, None)


class StructureConstants:
    """[x, y] for x, y in the Cartan basis, as {name: coeff}."""

    def __init__(self, d: CartanDictionary):
        self.d = d
        self.names = d.names
        self._cache: dict = {}

    def bracket(self, x, y) -> dict:
        key = (x, y)
        if key not in self._cache:
            alg = self.d.algebra
            self._cache[key] = self.d.in_cartan_basis(alg.bracket(self.d.combo(x), self.d.combo(y)))
        return self._cache[key]


@dataclass
class PBWBasis:
    roots: list      # negative roots in PBW order (height ascending)
    heights: list    # heights of the corresponding positive roots
    cutoff: int
    by_height: dict = field(default_factory=dict)

    def __post_init__(self):
        m = len(self.roots)
        levels: dict = {}

        def rec(prefix, k, h):
            if k == m:
                levels.setdefault(h, []).append(tuple(prefix))
                return
            a = 0
            while h + a * self.heights[k] <= self.cutoff:
                rec(prefix + [a], k + 1, h + a * self.heights[k])
                a += 1

        rec([], 0, 0)
        self.by_height = {h: sorted(levels.get(h, [])) for h in range(self.cutoff + 1)}

    def monomials(self, max_height: int | None = None) -> list[tuple]:
        top = self.cutoff if max_height is None else min(max_height, self.cutoff)
        return [m for h in range(top + 1) for m in self.by_height[h]]

    def count(self, h: int) -> int:
        return len(self.by_height.get(h, []))


@dataclass
class NoncompactRelationReport:
    passed: bool
    a: GaussianRational | None
    first_violation: tuple | None = None
    checked: int = 0


class TruncatedHWModule:
    def __init__(self, kind: str, n: int, hw: Weight, cutoff: int = 6, require_dominant: bool = True):
        check_kind(kind, n)
        if not is_noncompact(kind):
            raise ContractError("truncated modules are built for so(2,q)")
        if cutoff < 2:
            raise ContractError("cutoff must be at least 2")
        hw = hw if isinstance(hw, Weight) else Weight(hw)
        if len(hw) != n + 1:
            raise ContractError(f"highest weight needs {n + 1} entries")
        if require_dominant and not is_dominant(kind, hw):
            raise ContractError(f"highest weight {hw} violates dominance")
        self.kind, self.n, self.hw, self.cutoff = kind, n, hw, cutoff
        self.d = build_dictionary(kind, n)
        self.sc = StructureConstants(self.d)
        rs = self.d.roots
        pos = sorted(rs.positive_roots, key=lambda r: (rs.height(r), tuple(-c for c in r)))
        self.pos_roots = pos
        self.heights = [rs.height(r) for r in pos]
        self.neg_names = [("E", tuple(-c for c in r)) for r in pos]
        self.index = {nm: k for k, nm in enumerate(self.neg_names)}
        self.basis = PBWBasis([nm[1] for nm in self.neg_names], self.heights, cutoff)
        self._act: dict = {}
        self._lower: dict = {}
        self._S: dict = {}

    # -- weights ---------------------------------------------------------

    def weight_of(self, m: tuple) -> tuple:
        w = list(self.hw.entries)
        for k, a in enumerate(m):
            if a:
                for i, c in enumerate(self.pos_roots[k]):
                    w[i] -= a * c
        return tuple(w)

    def height_of(self, m: tuple) -> int:
        return sum(a * h for a, h in zip(m, self.heights))

    # -- action ----------------------------------------------------------

    def lower_mul(self, j: int, m: tuple) -> Vec:
        """f_j times the monomial m, rewritten in PBW order."""
        key = (j, m)
        hit = self._lower.get(key)
        if hit is not None:
            return hit
        k = next((i for i, a in enumerate(m) if a), None)
        if k is None or j <= k:
            out = {m[:j] + (m[j] + 1,) + m[j + 1:]: G1}
        else:
            rest = m[:k] + (m[k] - 1,) + m[k + 1:]
            out = {}
            for mono, c in self.lower_mul(j, rest).items():
                out[mono[:k] + (mono[k] + 1,) + mono[k + 1:]] = c
            for name, c in self.sc.bracket(self.neg_names[j], self.neg_names[k]).items():
                _vadd(out, self.lower_mul(self.index[name], rest), c)
        self._lower[key] = out
        return out

    def act(self, x, m: tuple) -> Vec:
        """Basis element x (a Cartan-basis name) applied to the monomial m."""
        key = (x, m)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        kind, label = x
        if kind == "H":
            pos = self.d.roots.indices.index(label)
            v = self.weight_of(m)[pos]
            out = {m: GaussianRational(v)} if v else {}
        elif x in self.index:
            out = self.lower_mul(self.index[x], m)
        else:
            k = next((i for i, a in enumerate(m) if a), None)
            if k is None:
                out = {}
            else:
                rest = m[:k] + (m[k] - 1,) + m[k + 1:]
                out = {}
                for mono, c in self.act(x, rest).items():
                    _vadd(out, self.lower_mul(k, mono), c)
                for name, c in self.sc.bracket(x, self.neg_names[k]).items():
                    _vadd(out, self.act(name, rest), c)
        self._act[key] = out
        return out

    def act_vec(self, x, v: Vec) -> Vec:
        out: Vec = {}
        for m, c in v.items():
            _vadd(out, self.act(x, m), c)
        return out

    def apply_combo(self, combo: dict, v: Vec) -> Vec:
        """Apply a Cartan-basis combination {name: coeff} to a vector."""
        out: Vec = {}
        for x, c in combo.items():
            _vadd(out, self.act_vec(x, v), c)
        return out

    # -- Shapovalov form -------------------------------------------------

    def raising_of(self, k: int):
        return ("E", self.pos_roots[k])

    def shapovalov(self, u: tuple, v: tuple) -> GaussianRational:
        """S(u Omega, v Omega), conjugate-linear in u."""
        if self.weight_of(u) != self.weight_of(v):
            return G0
        key = (u, v)
        hit = self._S.get(key)
        if hit is not None:
            return hit
        k = next((i for i, a in enumerate(u) if a), None)
        if k is None:
            out = G1 if not any(v) else G0
        else:
            rest = u[:k] + (u[k] - 1,) + u[k + 1:]
            out = G0
            for mono, c in self.act(self.raising_of(k), v).items():
                s = self.shapovalov(rest, mono)
                if s:
                    out = out + c * s
        self._S[key] = out
        return out

    @cached_property
    def blocks(self) -> dict:
        """{weight: monomials} for monomials up to the cutoff."""
        out: dict = {}
        for m in self.basis.monomials():
            out.setdefault(self.weight_of(m), []).append(m)
        return out

    def gram_block(self, weight) -> ExactMatrix:
        ms = self.blocks[weight]
        return ExactMatrix.from_rows([[self.shapovalov(u, v) for v in ms] for u in ms])

    def gram_inertia(self, max_height: int | None = None) -> dict:
        top = self.cutoff if max_height is None else max_height
        out = {}
        for w, ms in self.blocks.items():
            if self.height_of(ms[0]) <= top:
                out[w] = inertia(self.gram_block(w))
        return out

    def pair(self, v: Vec) -> list:
        """Nonzero components S(u, v) for basis monomials u, or [] if v is in the radical
        (within the window)."""
        bad = []
        by_w: dict = {}
        for m, c in v.items():
            by_w.setdefault(self.weight_of(m), {})[m] = c
        for w, comp in by_w.items():
            if w not in self.blocks:
                continue
            for u in self.blocks[w]:
                s = G0
                for m, c in comp.items():
                    s = s + self.shapovalov(u, m) * c
                if s:
                    bad.append((u, s))
                    return bad
        return bad

    # -- relations -------------------------------------------------------

    @cached_property
    def m_combos(self) -> dict:
        sig = self.d.sig
        out = {}
        for a in sig.labels:
            for b in sig.labels:
                if a != b:
                    out[a, b] = self.d.in_cartan_basis(m_combo(sig, a, b))
        return out

    def M(self, a, b, v: Vec) -> Vec:
        if a == b:
            return {}
        return self.apply_combo(self.m_combos[a, b], v)

    def relation_vector(self, mu, nu, u: Vec, cache: dict | None = None) -> Vec:
        """sum_lambda {M_{mu lambda}, M^lambda_nu} u."""
        sig = self.d.sig
        cache = {} if cache is None else cache

        def Mu(a, b):
            if (a, b) not in cache:
                cache[a, b] = self.M(a, b, u)
            return cache[a, b]

        out: Vec = {}
        for lam in sig.labels:
            if lam in (mu, nu):
                continue
            eta = sig.eta(lam)
            _vadd(out, self._window(self.M(mu, lam, Mu(lam, nu))), eta)
            _vadd(out, self._window(self.M(lam, nu, Mu(mu, lam))), eta)
        return out

    def _window(self, v: Vec) -> Vec:
        return {m: c for m, c in v.items() if self.height_of(m) <= self.cutoff}

    def casimir_C(self) -> GaussianRational:
        """Eigenvalue of sum over ordered pairs of M_{ab} M^{ab} on Omega."""
        sig = self.d.sig
        omega = (0,) * len(self.neg_names)
        out = G0
        for a in sig.labels:
            for b in sig.labels:
                if a != b:
                    v = self.M(a, b, self.M(a, b, {omega: G1}))
                    out = out + v.get(omega, G0) * (sig.eta(a) * sig.eta(b))
        return out

    def solve_a(self) -> GaussianRational:
        sig = self.d.sig
        first = sig.labels[0]
        omega = (0,) * len(self.neg_names)
        v = self.relation_vector(first, first, {omega: G1})
        return v.get(omega, G0) * sig.eta(first)


def build_truncated(kind: str, n: int, hw, cutoff: int = 6, require_dominant: bool = True) -> TruncatedHWModule:
    return TruncatedHWModule(kind, n, hw if isinstance(hw, Weight) else Weight(hw), cutoff, require_dominant)


def check_relations_truncated(m: TruncatedHWModule, max_u_height: int | None = None) -> NoncompactRelationReport:
    """S(v, (sum_l {M_{mu l}, M^l_nu} - a eta_{mu nu}) u) = 0 for u up to cutoff - 2
    and all v up to the cutoff."""
    sig = m.d.sig
    labels = sig.labels
    a = m.solve_a()
    top = m.cutoff - 2 if max_u_height is None else max_u_height
    checked = 0
    for u in m.basis.monomials(top):
        uvec = {u: G1}
        cache: dict = {}
        for i, mu in enumerate(labels):
            for nu in labels[i:]:
                v = m.relation_vector(mu, nu, uvec, cache)
                if mu == nu:
                    _vadd(v, uvec, -a * sig.eta(mu))
                bad = m.pair(v)
                checked += 1
                if bad:
                    return NoncompactRelationReport(False, a, (mu, nu, u, bad[0][0]), checked)
    return NoncompactRelationReport(True, a, None, checked)


def threads() -> int:
    try:
        return max(1, int(os.environ.get("DYNSYM_THREADS", "1")))
    except ValueError:
        return 1
