"""Highest-weight identity systems and their exact solution sets.

The unitary highest weight representations satisfying the representation
relations are cut out by one quadratic identity per Cartan generator.  The
solver follows the subtraction chain: consecutive rows differ by a product
of two linear factors, each factor gives a linear branch, and branches that
cannot meet the dominance inequalities are discarded.  A brute-force scan
over all dominant half-integer weights serves as an independent oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .cartan import B, D, ND, NB, Weight, check_kind, is_btype, is_noncompact
from .exact import ContractError, HalfInt, Q, Rational
from .poly import Poly, integer_coefficients, rational_roots

INF = None  # open end of an interval


@dataclass
class IdentitySystem:
    kind: str
    n: int
    rows: list        # left-hand sides, one per Cartan generator (lambda_0 first if present)
    trace: Poly | None
    s: Rational

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def c_var(self) -> int:
        return self.rank

    @property
    def equations(self) -> list[Poly]:
        """Every displayed identity written as lhs - c."""
        c = Poly.var(self.c_var)
        eqs = [r - c for r in self.rows]
        if self.trace is not None:
            eqs.append(self.trace - c)
        return eqs

    def constant_at(self, w) -> Rational:
        """c read off the first identity."""
        return self.rows[0](*_entries(w))

    def satisfied_by(self, w) -> bool:
        vals = list(_entries(w))
        c = self.constant_at(w)
        return all(e(*vals, c) == 0 for e in self.equations)

    def describe(self) -> list[str]:
        names = [f"l{i}" for i in self.lambda_labels()]
        out = []
        for e in self.equations:
            out.append(_pretty(e + Poly.var(self.c_var), names) + " = c")
        return out

    def lambda_labels(self) -> list[int]:
        return list(range(0 if is_noncompact(self.kind) else 1, self.n + 1))


def _entries(w):
    return w.entries if isinstance(w, Weight) else tuple(Q(x) for x in w)


def _pretty(p: Poly, names) -> str:
    parts = []
    for e, c in sorted(p.terms.items(), key=lambda t: (-sum(t[0]), t[0])):
        mono = "*".join(names[i] + ("^2" if k == 2 else "") for i, k in enumerate(e) if k)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def shift_constant(kind: str, n: int) -> Rational:
    return Q(2 * n - 1, 2) if is_btype(kind) else Q(n - 1)


def build_system(kind: str, n: int) -> IdentitySystem:
    check_kind(kind, n)
    s = shift_constant(kind, n)
    off = 1 if is_noncompact(kind) else 0
    lam = {j: Poly.var(j - 1 + off) for j in range(1, n + 1)}
    rows = []
    if off:
        lam0 = Poly.var(0)
        rows.append(lam0 * lam0 + (s + 1) * lam0)
    for j in range(1, n + 1):
        r = lam[j] * lam[j] + s * lam[j] - (j - 1) * lam[j]
        for i in range(1, j):
            r = r + lam[i]
        if off:
            r = r + lam0
        rows.append(r)
    trace = None
    if is_btype(kind):
        trace = sum((Poly.var(k) for k in range(n + off)), Poly())
    return IdentitySystem(kind, n, rows, trace, s)


# ---------------------------------------------------------------------------
# solution sets


@dataclass(frozen=True)
class Family:
    """Weights a_i |mu| + b_i mu + c_i for half-integers mu in the domain.

    domain: 'all' (any half integer), 'nonneg' or 'nonpos'.
    """

    coeffs: tuple  # ((a, b, c), ...)
    domain: str = "all"

    def at(self, mu) -> Weight:
        mu = Q(mu)
        if not self.admits(mu):
            raise ContractError(f"mu = {mu} outside family domain")
        return Weight([a * abs(mu) + b * mu + c for a, b, c in self.coeffs])

    def admits(self, mu) -> bool:
        if (2 * Q(mu)).denominator != 1:
            return False
        return {"all": True, "nonneg": mu >= 0, "nonpos": mu <= 0}[self.domain]

    def members(self, bound) -> list[Weight]:
        bound = Q(bound)
        out = []
        # entries grow at least linearly in |mu| whenever the family is not constant
        grow = max(abs(a) + abs(b) for a, b, _ in self.coeffs)
        top = int(2 * (bound + max(abs(c) for *_, c in self.coeffs)) / grow) + 2 if grow else 0
        for t in range(-top, top + 1):
            mu = Q(t, 2)
            if self.admits(mu):
                w = self.at(mu)
                if all(abs(e) <= bound for e in w):
                    out.append(w)
        return out

    def contains(self, w) -> bool:
        e = _entries(w)
        for a, b, c in self.coeffs:
            if a or b:
                break
        candidates = set()
        for (a, b, c), x in zip(self.coeffs, e):
            for sign in (1, -1):
                k = a * sign + b
                if k:
                    candidates.add((x - c) / k)
        return any(self.admits(mu) and self.at(mu).entries == tuple(e) for mu in candidates) or (
            not candidates and all(c == x for (_, _, c), x in zip(self.coeffs, e)))

    def render(self, sym: str = "mu") -> str:
        parts = []
        for a, b, c in self.coeffs:
            terms = []
            for k, name in ((a, f"|{sym}|"), (b, sym)):
                if k:
                    terms.append(name if k == 1 else f"-{name}" if k == -1 else f"{k}{name}")
            if c or not terms:
                terms.append(str(c))
            parts.append(" + ".join(terms).replace("+ -", "- "))
        dom = {"all": "any half integer", "nonneg": ">= 0, half integer",
               "nonpos": "<= 0, half integer"}[self.domain]
        return "(" + ", ".join(parts) + f"), {sym} {dom}"


@dataclass
class SolutionSet:
    points: list = field(default_factory=list)
    families: list = field(default_factory=list)

    def expand(self, bound) -> set[tuple]:
        bound = Q(bound)
        out = {w.entries for w in self.points if all(abs(e) <= bound for e in w)}
        for f in self.families:
            out |= {w.entries for w in f.members(bound)}
        return out

    def contains(self, w) -> bool:
        e = tuple(_entries(w))
        return any(p.entries == e for p in self.points) or any(f.contains(e) for f in self.families)

    def to_json(self) -> dict:
        return {"points": [p.to_json() for p in self.points],
                "families": [f.render() for f in self.families]}


# ---------------------------------------------------------------------------
# elimination


def dominance_forms(kind: str, n: int) -> list[tuple]:
    """Linear forms (coefficient vectors over the weight entries) that must be >= 0."""
    off = 1 if is_noncompact(kind) else 0
    size = n + off

    pos = lambda j: j - 1 + off  # noqa: E731  position of lambda_j
    forms = [_diff(size, pos(j), pos(j + 1)) for j in range(1, n - 1)]
    if n >= 2:
        forms.append(_diff(size, pos(n - 1), pos(n)))
    if kind in (B, NB):
        forms.append(_unit(size, pos(n)))
    elif n >= 2:
        forms.append(_sum(size, pos(n - 1), pos(n)))
    if off:
        forms.append(tuple(-x for x in _sum(size, 0, pos(1))))
        if kind == ND and n == 1:
            forms.append(_diff(size, pos(1), 0))
    return forms


def _unit(size, i):
    v = [0] * size
    v[i] = 1
    return tuple(v)


def _diff(size, i, j):
    v = [0] * size
    v[i] += 1
    v[j] -= 1
    return tuple(v)


def _sum(size, i, j):
    v = [0] * size
    v[i] += 1
    v[j] += 1
    return tuple(v)


@dataclass
class _Branch:
    values: dict      # weight position -> (slope, intercept) in the parameter t
    lo: Rational | None
    hi: Rational | None

    def restrict(self, slope, intercept) -> "_Branch | None":
        """Intersect with slope*t + intercept >= 0."""
        lo, hi = self.lo, self.hi
        if slope == 0:
            return self if intercept >= 0 else None
        bound = -intercept / slope
        if slope > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None and lo > hi:
            return None
        return _Branch(self.values, lo, hi)


class FactorisationError(AssertionError):
    pass


def _check_factorisation(diff: Poly, f1: Poly, f2: Poly):
    if diff != f1 * f2:
        raise FactorisationError(f"{diff} != ({f1})*({f2})")


def solve(sys: IdentitySystem) -> SolutionSet:
    kind, n, s = sys.kind, sys.n, sys.s
    off = 1 if is_noncompact(kind) else 0
    size = n + off
    pos = lambda j: j - 1 + off  # noqa: E731
    forms = dominance_forms(kind, n)
    rows = sys.rows

    def prune(br: _Branch) -> _Branch | None:
        for f in forms:
            if all(c == 0 or i in br.values for i, c in enumerate(f)):
                slope = sum(c * br.values[i][0] for i, c in enumerate(f) if c)
                icpt = sum(c * br.values[i][1] for i, c in enumerate(f) if c)
                br = br.restrict(slope, icpt)
                if br is None:
                    return None
        return br

    branches = [_Branch({pos(1): (Q(1), Q(0))}, None, None)]
    # consecutive rows: R_j - R_{j+1} = (l_j - l_{j+1})(l_j + l_{j+1} + s - j)
    for j in range(1, n):
        a, b = Poly.var(pos(j)), Poly.var(pos(j + 1))
        _check_factorisation(rows[j - 1 + off] - rows[j + off], a - b, a + b + (s - j))
        nxt = []
        for br in branches:
            sl, ic = br.values[pos(j)]
            for root in ((sl, ic), (-sl, -ic - (s - j))):
                cand = prune(_Branch({**br.values, pos(j + 1): root}, br.lo, br.hi))
                if cand is not None:
                    nxt.append(cand)
        branches = nxt
    if off:
        # R_0 - R_1 = (l_0 - l_1)(l_0 + l_1 + s)
        a, b = Poly.var(0), Poly.var(pos(1))
        _check_factorisation(rows[0] - rows[1], a - b, a + b + s)
        nxt = []
        for br in branches:
            sl, ic = br.values[pos(1)]
            for root in ((sl, ic), (-sl, -ic - s)):
                cand = prune(_Branch({**br.values, 0: root}, br.lo, br.hi))
                if cand is not None:
                    nxt.append(cand)
        branches = nxt

    t = Poly.var(0)
    points, rays = [], []
    for br in branches:
        subs = {i: br.values[i][0] * t + br.values[i][1] for i in range(size)}
        c_of_t = rows[0].subs(subs)
        residuals = []
        for e in sys.equations:
            r = e.subs({**{i: subs[i] for i in range(size)}, sys.c_var: c_of_t})
            if not r.is_zero():
                residuals.append(r)
        if not residuals:
            if br.lo is not None and br.lo == br.hi:
                points.append(_point(br, br.lo))
            else:
                rays.append(br)
            continue
        roots = rational_roots([_coef(residuals[0], k) for k in range(3)])
        for root in roots or []:
            if all(r(root) == 0 for r in residuals) and _in(br, root):
                points.append(_point(br, root))
    families = _assemble_families(rays)
    points = [p for p in points if p is not None and p.half_integral and _dominant(forms, p)]
    points = [p for p in points if not any(f.contains(p) for f in families)]
    uniq = sorted({p.entries for p in points}, reverse=True)
    return SolutionSet([Weight(e) for e in uniq], families)


def _coef(p: Poly, k: int) -> Rational:
    return p.terms.get((k,) if k else (), Q(0))


def _in(br: _Branch, t) -> bool:
    return (br.lo is None or t >= br.lo) and (br.hi is None or t <= br.hi)


def _point(br: _Branch, t) -> Weight:
    return Weight([br.values[i][0] * t + br.values[i][1] for i in sorted(br.values)])


def _dominant(forms, w: Weight) -> bool:
    return all(sum(c * x for c, x in zip(f, w)) >= 0 for f in forms)


def _assemble_families(rays: list[_Branch]) -> list[Family]:
    """Turn parameter rays into families; a ray on t >= 0 and one on t <= 0 that
    agree at t = 0 merge into a single a|mu| + b mu + c family."""
    halves = []
    for br in rays:
        if br.lo is not None and br.lo == 0 and br.hi is None:
            halves.append(("nonneg", [br.values[i] for i in sorted(br.values)]))
        elif br.hi is not None and br.hi == 0 and br.lo is None:
            halves.append(("nonpos", [br.values[i] for i in sorted(br.values)]))
        else:
            raise NotImplementedError("unanchored parameter ray")
    used = [False] * len(halves)
    fams = []
    for i, (di, vi) in enumerate(halves):
        if used[i]:
            continue
        for j in range(i + 1, len(halves)):
            dj, vj = halves[j]
            if used[j]:
                continue
            if [v[1] for v in vi] != [v[1] for v in vj]:
                continue
            # mu = t on the first ray; on the second use mu = -t when both are nonneg
            P = vi if di == "nonneg" else [(-a, b) for a, b in vi]
            if dj == di:
                N = [(-a, b) for a, b in vj] if dj == "nonneg" else vj
            else:
                N = vj if dj == "nonpos" else [(-a, b) for a, b in vj]
            # P(mu), mu>=0 slopes p; N(mu), mu<=0 slopes m: a|mu| + b mu with a+b=p, b-a=m
            coeffs = tuple(((p - m) / 2, (p + m) / 2, c) for (p, c), (m, _) in zip(P, N))
            if coeffs[-1][1] < 0:  # mu -> -mu so the last entry reads +mu
                coeffs = tuple((a, -b, c) for a, b, c in coeffs)
            fams.append(Family(coeffs, "all"))
            used[i] = used[j] = True
            break
        else:
            coeffs = tuple((Q(0), a, b) for a, b in vi)
            fams.append(Family(coeffs, di))
            used[i] = True
    return fams


# ---------------------------------------------------------------------------
# brute force


def admissible_weights(kind: str, n: int, bound) -> np.ndarray:
    """All dominant half-integer weights with |entries| <= bound, as 2*weight
    integer rows.  lambda_1..lambda_n share a parity (all integer or all
    half-odd); lambda_0 is unrestricted."""
    check_kind(kind, n)
    B2 = int(2 * Q(bound))
    off = 1 if is_noncompact(kind) else 0
    forms = np.array(dominance_forms(kind, n), dtype=np.int64)
    out = []
    for parity in (0, 1):
        vals = [v for v in range(-B2, B2 + 1) if v % 2 == parity]
        # lambda_1 >= ... >= lambda_{n-1} >= |lambda_n|: enumerate nonincreasing tuples
        for tup in _nonincreasing(vals, n):
            out.append(tup)
    tail = np.array(out, dtype=np.int64).reshape(-1, n)
    if off:
        l0 = np.arange(-B2, B2 + 1, dtype=np.int64)
        grid = np.hstack([np.repeat(l0, len(tail))[:, None], np.tile(tail, (len(l0), 1))])
    else:
        grid = tail
    keep = np.all(grid @ forms.T >= 0, axis=1)
    return grid[keep]


def _nonincreasing(vals, n):
    """Tuples (x_1 >= ... >= x_{n-1} >= x_n) over vals, last entry free in sign."""
    vals = sorted(vals, reverse=True)

    def rec(prefix, start, k):
        if k == 0:
            yield tuple(prefix)
            return
        for idx in range(start, len(vals)):
            yield from rec(prefix + [vals[idx]], idx, k - 1)

    if n == 1:
        for v in vals:
            yield (v,)
        return
    for head in rec([], 0, n - 1):
        for v in vals:
            if abs(v) <= head[-1]:
                yield head + (v,)


def brute_force(sys: IdentitySystem, bound) -> SolutionSet:
    bound = HalfInt.of(bound).value if not isinstance(bound, HalfInt) else bound.value
    if bound < Q(1, 2):
        raise ContractError("bound must be at least 1/2")
    grid = admissible_weights(sys.kind, sys.n, bound)
    if len(grid) == 0:
        return SolutionSet()
    # eliminate c with the first row and test every residual in exact integers
    first = sys.rows[0]
    ok = np.ones(len(grid), dtype=bool)
    for e in sys.equations:
        resid = e.subs({sys.c_var: first})
        if resid.is_zero():
            continue
        terms, _ = integer_coefficients(resid)
        val = np.zeros(len(grid), dtype=object)
        for exps, coef in terms:
            mono = np.full(len(grid), coef, dtype=object)
            for i, k in enumerate(exps):
                if k:
                    mono = mono * grid[:, i].astype(object) ** k
            val = val + mono
        ok &= val == 0
    pts = [Weight([Q(int(x), 2) for x in row]) for row in grid[ok]]
    pts.sort(key=lambda w: w.entries, reverse=True)
    return SolutionSet(pts, [])
