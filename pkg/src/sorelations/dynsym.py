"""Formal differential operators and the MICZ-Kepler dynamical symmetry tables
in dimensions one and two.

1D: normal-ordered x^k eps^s d^m with eps = sign(x) central, eps^2 = 1, so
|x| = eps x and 1/|x| = eps x^-1.
2D: polar normal form r^k u^n d_r^m d_theta^p with u = e^{i theta}.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb

from .exact import G0, G1, ContractError, GaussianRational, HalfInt, I, Q


def falling(a, j: int):
    """a (a-1) ... (a-j+1) for rational a."""
    out = Q(1)
    a = Q(a)
    for t in range(j):
        out *= a - t
    return out


class _Op:
    """Sparse normal-ordered operator; subclasses define the monomial product."""

    __slots__ = ("terms",)
    kind = ""

    def __init__(self, terms=None):
        self.terms = {}
        for k, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c:
                self.terms[k] = self.terms.get(k, G0) + c
        self.terms = {k: c for k, c in self.terms.items() if c}

    def _same(self, o):
        if isinstance(o, (int, GaussianRational)) or hasattr(o, "numerator"):
            return self.scalar(o)
        if type(o) is not type(self):
            raise ContractError(f"cannot combine {type(self).__name__} with {type(o).__name__}")
        return o

    @classmethod
    def scalar(cls, c):
        return cls({cls.unit: c})

    def __add__(self, o):
        o = self._same(o)
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, G0) + c
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._same(o))

    def __rsub__(self, o):
        return self._same(o) - self

    def scale(self, s):
        s = GaussianRational.coerce(s)
        return type(self)({k: c * s for k, c in self.terms.items()})

    def __mul__(self, o):
        if not isinstance(o, _Op):
            return self.scale(o)
        return op_mul(self, o)

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, o):
        try:
            o = self._same(o)
        except ContractError:
            return False
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"{type(self).__name__}({self.pretty()})"


class LaurentWeylOp(_Op):
    """Keys (k, s, m): x^k eps^s d^m."""

    kind = "1d"
    unit = (0, 0, 0)

    @staticmethod
    def mono_mul(a, b):
        (k, s, m), (kb, t, n) = a, b
        for j in range(m + 1):
            c = comb(m, j) * falling(kb, j)
            if c:
                yield (k + kb - j, (s + t) % 2, m - j + n), c

    def pretty(self) -> str:
        parts = []
        for (k, s, m), c in sorted(self.terms.items()):
            mono = ("x" + (f"^{k}" if k != 1 else "") if k else "") + ("e" if s else "") + (
                "d" + (f"^{m}" if m > 1 else "") if m else "")
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) or "0"


class PolarOp(_Op):
    """Keys (k, n, m, p): r^k u^n d_r^m d_theta^p."""

    kind = "2d"
    unit = (0, 0, 0, 0)

    @staticmethod
    def mono_mul(a, b):
        (k, d, m, p), (kb, db, mb, pb) = a, b
        idb = GaussianRational(0, db)
        for j in range(m + 1):
            cr = comb(m, j) * falling(kb, j)
            if not cr:
                continue
            for l in range(p + 1):
                ct = idb ** (p - l) if p - l else G1
                c = ct * (comb(p, l) * cr)
                if c:
                    yield (k + kb - j, d + db, m - j + mb, l + pb), c

    def pretty(self) -> str:
        parts = []
        for (k, d, m, p), c in sorted(self.terms.items()):
            bits = []
            if k:
                bits.append(f"r^{k}")
            if d:
                bits.append(f"u^{d}")
            if m:
                bits.append(f"dr^{m}")
            if p:
                bits.append(f"dth^{p}")
            parts.append(f"({c})" + ("*" + "*".join(bits) if bits else ""))
        return " + ".join(parts) or "0"


def op_mul(a: _Op, b: _Op) -> _Op:
    if type(a) is not type(b):
        raise ContractError("operators from different algebras")
    out: dict = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            cab = ca * cb
            for k, c in a.mono_mul(ka, kb):
                v = out.get(k, G0) + cab * c
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
    return type(a)(out)


def commutator(a: _Op, b: _Op) -> _Op:
    return op_mul(a, b) - op_mul(b, a)


# ---------------------------------------------------------------------------
# generators

def x1d(k=1) -> LaurentWeylOp:
    return LaurentWeylOp({(k, 0, 0): 1})


EPS = LaurentWeylOp({(0, 1, 0): 1})
D1 = LaurentWeylOp({(0, 0, 1): 1})


def r2d(k=1) -> PolarOp:
    return PolarOp({(k, 0, 0, 0): 1})


def u2d(n=1) -> PolarOp:
    return PolarOp({(0, n, 0, 0): 1})


DR = PolarOp({(0, 0, 1, 0): 1})
DTH = PolarOp({(0, 0, 0, 1): 1})


# ---------------------------------------------------------------------------
# J tables

@dataclass
class JTable:
    dim: int
    labels: tuple
    metric: dict
    ops: dict
    constant: GaussianRational   # value of the anticommutator identity times eta_BC
    mu: object = None

    def J(self, a, b):
        return self.ops[a, b]

    def eta(self, a) -> int:
        return self.metric[a]


def _complete(labels, defs: dict, zero) -> dict:
    ops = {}
    for a in labels:
        for b in labels:
            if a == b:
                ops[a, b] = zero
            elif (a, b) in defs:
                ops[a, b] = defs[a, b]
            else:
                ops[a, b] = -defs[b, a]
    return ops


def magnetic_constant(mu) -> object:
    mu = Q(mu)
    return mu * mu - abs(mu)


def build_dynsym_1d(mu) -> JTable:
    h = mu if isinstance(mu, HalfInt) else HalfInt.of(mu)
    if abs(h.value) < Q(1, 2):
        raise ContractError("the 1D problem needs |mu| >= 1/2")
    c = magnetic_constant(h.value)
    x, xinv = x1d(1), x1d(-1)
    absx = EPS * x
    absxinv = EPS * xinv
    p = D1.scale(-I)
    p2 = -(D1 * D1)
    half = GaussianRational("1/2")
    A = (x * p2 + x + xinv.scale(c)).scale(-half)
    M = (x * p2 - x + xinv.scale(c)).scale(-half)
    T = x * p
    Gam = absx * p
    Gm1 = (absx * p2 + absx + absxinv.scale(c)).scale(half)
    G2 = (absx * p2 - absx + absxinv.scale(c)).scale(half)
    defs = {(1, 2): A, (1, -1): M, (1, 0): Gam, (2, -1): T, (2, 0): G2, (-1, 0): Gm1}
    labels = (-1, 0, 1, 2)
    metric = {-1: 1, 0: 1, 1: -1, 2: -1}
    return JTable(1, labels, metric, _complete(labels, defs, LaurentWeylOp()),
                  GaussianRational(2 * c), h)


def cartesian_2d():
    """x_alpha and p_alpha in polar normal form."""
    half = GaussianRational("1/2")
    cos = (u2d(1) + u2d(-1)).scale(half)
    sin = (u2d(1) - u2d(-1)).scale(GaussianRational(0, "-1/2"))
    r = r2d(1)
    rinv = r2d(-1)
    x = {1: r * cos, 2: r * sin}
    d = {1: cos * DR - sin * rinv * DTH, 2: sin * DR + cos * rinv * DTH}
    p = {a: d[a].scale(-I) for a in (1, 2)}
    return x, p


def polar_p2() -> PolarOp:
    """p^2 = -(d_r^2 + r^-1 d_r + r^-2 d_theta^2)."""
    return -(DR * DR + r2d(-1) * DR + r2d(-2) * DTH * DTH)


def build_dynsym_2d(mu) -> JTable:
    mu = Q(mu)
    if mu not in (Q(0), Q(1, 2)):
        raise ContractError("the 2D problem is defined for mu = 0 or 1/2")
    half = GaussianRational("1/2")
    x, p = cartesian_2d()
    p2 = polar_p2()
    r = r2d(1)
    rp = x[1] * p[1] + x[2] * p[2]
    J12 = x[1] * p[2] - x[2] * p[1]
    defs = {(1, 2): J12}
    for a in (1, 2):
        common = (x[a] * p2).scale(half) - p[a] * rp - p[a].scale(GaussianRational(0, "1/2"))
        defs[a, 3] = common - x[a].scale(half)
        defs[a, -1] = common + x[a].scale(half)
        defs[a, 0] = r * p[a]
    defs[3, -1] = rp - PolarOp.scalar(GaussianRational(0, "1/2"))
    defs[3, 0] = (r * p2 - r).scale(half)
    defs[-1, 0] = (r * p2 + r).scale(half)
    labels = (-1, 0, 1, 2, 3)
    metric = {-1: 1, 0: 1, 1: -1, 2: -1, 3: -1}
    return JTable(2, labels, metric, _complete(labels, defs, PolarOp()), GaussianRational(-1), mu)


# ---------------------------------------------------------------------------
# verification

@dataclass
class OpReport:
    passed: bool
    checked: int
    failures: list

    def __bool__(self):
        return self.passed


def _products(t: JTable) -> dict:
    keys = [(a, b) for a in t.labels for b in t.labels if t.labels.index(a) < t.labels.index(b)]
    return {(k1, k2): op_mul(t.ops[k1], t.ops[k2]) for k1 in keys for k2 in keys}


def _prod(t, cache, k1, k2):
    s = 1
    a, b = k1
    c, d = k2
    if a == b or c == d:
        return None
    idx = t.labels.index
    if idx(a) > idx(b):
        k1, s = (b, a), -s
    if idx(c) > idx(d):
        k2, s = (d, c), -s
    return cache[k1, k2], s


def verify_commutators(t: JTable, cache: dict | None = None) -> OpReport:
    cache = _products(t) if cache is None else cache
    eta = t.eta
    zero = type(t.ops[t.labels[0], t.labels[1]])()
    fails = []
    count = 0
    for A, B, A2, B2 in product(t.labels, repeat=4):
        count += 1
        lhs = zero
        p1 = _prod(t, cache, (A, B), (A2, B2))
        p2 = _prod(t, cache, (A2, B2), (A, B))
        if p1 is not None:
            lhs = p1[0].scale(p1[1]) - p2[0].scale(p2[1])
        rhs = zero
        if A == A2:
            rhs = rhs + t.J(B, B2).scale(-I * eta(A))
        if B == B2:
            rhs = rhs + t.J(A, A2).scale(-I * eta(B))
        if A == B2:
            rhs = rhs + t.J(B, A2).scale(I * eta(A))
        if B == A2:
            rhs = rhs + t.J(A, B2).scale(I * eta(B))
        if lhs != rhs:
            fails.append((A, B, A2, B2))
    return OpReport(not fails, count, fails)


def anticommutator_sum(t: JTable, B, C, cache: dict | None = None):
    """sum_A {J_AB, J^A_C}, indices raised with eta."""
    cache = _products(t) if cache is None else cache
    tot = type(t.ops[t.labels[0], t.labels[1]])()
    for A in t.labels:
        p1 = _prod(t, cache, (A, B), (A, C))
        p2 = _prod(t, cache, (A, C), (A, B))
        if p1 is None:
            continue
        tot = tot + (p1[0].scale(p1[1]) + p2[0].scale(p2[1])).scale(t.eta(A))
    return tot


def verify_anticommutators(t: JTable, cache: dict | None = None) -> OpReport:
    cache = _products(t) if cache is None else cache
    fails = []
    count = 0
    for B, C in product(t.labels, repeat=2):
        count += 1
        got = anticommutator_sum(t, B, C, cache)
        want = t.constant * t.eta(B) if B == C else G0
        if got != type(got).scalar(want):
            fails.append((B, C))
    return OpReport(not fails, count, fails)


def verify_table(t: JTable) -> tuple[OpReport, OpReport]:
    cache = _products(t)
    return verify_commutators(t, cache), verify_anticommutators(t, cache)


# ---------------------------------------------------------------------------
# monomial action oracle

def apply_to_monomial(op: _Op, monomial: tuple) -> dict:
    """1D: monomial (a, t) = x^a eps^t; 2D: (a, l) = r^a u^l (l may be half-odd).

    Returns {monomial: coeff}.
    """
    out: dict = {}
    if isinstance(op, LaurentWeylOp):
        a, t = Q(monomial[0]), monomial[1]
        for (k, s, m), c in op.terms.items():
            f = falling(a, m)
            if f:
                key = (a - m + k, (s + t) % 2)
                out[key] = out.get(key, G0) + c * f
    elif isinstance(op, PolarOp):
        a, l = Q(monomial[0]), Q(monomial[1])
        il = GaussianRational(0, l)
        for (k, d, m, p), c in op.terms.items():
            f = falling(a, m)
            if f:
                key = (a - m + k, l + d)
                out[key] = out.get(key, G0) + c * (il ** p if p else G1) * f
    else:
        raise ContractError("unknown operator type")
    return {k: v for k, v in out.items() if v}


def apply_to_combination(op: _Op, vec: dict) -> dict:
    out: dict = {}
    for mono, c in vec.items():
        for k, v in apply_to_monomial(op, mono).items():
            out[k] = out.get(k, G0) + c * v
    return {k: v for k, v in out.items() if v}
