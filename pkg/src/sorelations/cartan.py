"""Root systems and Cartan bases of so(2n+1), so(2n), so(2,2n+1), so(2,2n).

Cartan generators and root vectors are written as exact linear
combinations of the M_{mu nu}.  Short root vectors of the B-type algebras
are stored without their 1/sqrt(2): ``E~ = sqrt(2) E``, so e.g.
``[E~_{e^i}, E~_{-e^i}] = 2 H_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .clifford import MatrixRep, Signature
from .exact import (G0, ContractError, ExactMatrix, GaussianRational, HalfInt, I,
                    Q, Rational, inverse, rank)

B, D, NB, ND = "so(2n+1)", "so(2n)", "so(2,2n+1)", "so(2,2n)"
KINDS = (B, D, NB, ND)


def check_kind(kind: str, n: int):
    if kind not in KINDS:
        raise ContractError(f"unknown algebra kind {kind!r}")
    if n < 1 or (kind == D and n < 2):
        raise ContractError(f"invalid rank n={n} for {kind}")


def is_noncompact(kind: str) -> bool:
    return kind in (NB, ND)


def is_btype(kind: str) -> bool:
    return kind in (B, NB)


def algebra_name(kind: str, n: int) -> str:
    return {B: f"so({2*n+1})", D: f"so({2*n})", NB: f"so(2,{2*n+1})", ND: f"so(2,{2*n})"}[kind]


def parse_algebra(name: str) -> tuple[str, int]:
    """``so5``, ``so(5)``, ``so(2,4)``, ``so2,4`` -> (kind, n)."""
    s = name.replace(" ", "").lower()
    if s.startswith("so"):
        s = s[2:]
    s = s.strip("()")
    parts = s.split(",")
    try:
        if len(parts) == 1:
            N = int(parts[0])
            return (B, (N - 1) // 2) if N % 2 else (D, N // 2)
        p, q = int(parts[0]), int(parts[1])
    except ValueError:
        raise ContractError(f"cannot parse algebra {name!r}") from None
    if p != 2:
        raise ContractError("only so(2,q) is supported among noncompact algebras")
    return (NB, (q - 1) // 2) if q % 2 else (ND, q // 2)


def signature_for(kind: str, n: int) -> Signature:
    check_kind(kind, n)
    if kind == B:
        return Signature(2 * n + 1, 0)
    if kind == D:
        return Signature(2 * n, 0)
    return Signature.conformal(2 * n + 1 if kind == NB else 2 * n)


# ---------------------------------------------------------------------------
# weights

@dataclass(frozen=True)
class Weight:
    entries: tuple

    def __init__(self, entries):
        object.__setattr__(self, "entries", tuple(
            e.value if isinstance(e, HalfInt) else Q(e) for e in entries))

    @classmethod
    def parse(cls, text: str) -> "Weight":
        return cls([Q(t) for t in text.split(",")])

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    @property
    def half_integral(self) -> bool:
        return all((2 * e).denominator == 1 for e in self.entries)

    def halfints(self) -> tuple[HalfInt, ...]:
        return tuple(HalfInt.of(e) for e in self.entries)

    def shifted(self, index: int, delta) -> "Weight":
        e = list(self.entries)
        e[index] += Q(delta)
        return Weight(e)

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.entries) + ")"

    def to_json(self) -> list[str]:
        return [str(e) for e in self.entries]


def is_dominant(kind: str, w: Weight) -> bool:
    """The dominance inequalities forced by unitarity for each family."""
    e = list(w.entries)
    if is_noncompact(kind):
        lam0, rest = e[0], e[1:]
        if rest and -lam0 < rest[0]:
            return False
        if not rest and -lam0 < 0:
            return False
        e = rest
    if kind in (B, NB):
        return all(e[i] >= e[i + 1] for i in range(len(e) - 1)) and e[-1] >= 0
    if kind == ND and len(e) == 1:
        return -w.entries[0] >= abs(e[0])
    return all(e[i] >= e[i + 1] for i in range(len(e) - 2)) and e[-2] >= abs(e[-1])


# ---------------------------------------------------------------------------
# roots

@dataclass(frozen=True)
class RootSystem:
    kind: str
    n: int

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(range(0 if is_noncompact(self.kind) else 1, self.n + 1))

    @property
    def rank(self) -> int:
        return len(self.indices)

    def vec(self, coeffs: dict) -> tuple[int, ...]:
        return tuple(coeffs.get(i, 0) for i in self.indices)

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        idx = self.indices
        roots = []
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                roots.append(self.vec({idx[a]: 1, idx[b]: 1}))
                roots.append(self.vec({idx[a]: 1, idx[b]: -1}))
            if is_btype(self.kind):
                roots.append(self.vec({idx[a]: 1}))
        return tuple(roots)

    @cached_property
    def simple_roots(self) -> tuple[tuple[int, ...], ...]:
        idx = self.indices
        simple = [self.vec({idx[a]: 1, idx[a + 1]: -1}) for a in range(len(idx) - 1)]
        if is_btype(self.kind):
            simple.append(self.vec({idx[-1]: 1}))
        else:
            simple.append(self.vec({idx[-2]: 1, idx[-1]: 1}))
        return tuple(simple)

    def simple_coefficients(self, root) -> tuple[Rational, ...]:
        """Expansion of ``root`` in simple roots (integers for actual roots)."""
        S = ExactMatrix.from_rows([list(s) for s in self.simple_roots]).transpose()
        x = inverse(S) @ ExactMatrix.column(list(root))
        return tuple(x[i, 0].re for i in range(x.rows))

    def height(self, root) -> int:
        return int(sum(self.simple_coefficients(root)))

    def is_short(self, root) -> bool:
        return sum(abs(c) for c in root) == 1

    def is_noncompact_root(self, root) -> bool:
        return is_noncompact(self.kind) and root[0] != 0

    def rho(self) -> tuple[Rational, ...]:
        tot = [Q(0)] * self.rank
        for r in self.positive_roots:
            for i, c in enumerate(r):
                tot[i] += c
        return tuple(t / 2 for t in tot)


# ---------------------------------------------------------------------------
# the abstract algebra in the M-basis

def m_combo(sig: Signature, a: int, b: int, coeff=1) -> dict:
    """{pair: coeff} for coeff * M_{ab} in canonical pair order."""
    if a == b:
        return {}
    c = GaussianRational.coerce(coeff)
    if sig.pos(a) < sig.pos(b):
        return {(a, b): c}
    return {(b, a): -c}


def combo_add(*terms) -> dict:
    out: dict = {}
    for t in terms:
        for k, v in t.items():
            out[k] = out.get(k, G0) + v
    return {k: v for k, v in out.items() if v}


def combo_scale(t: dict, s) -> dict:
    s = GaussianRational.coerce(s)
    return {k: v * s for k, v in t.items() if v * s}


class SoAlgebra:
    """so(p,q) on the basis M_{ab} (a before b) with the bracket
    [M_ab, M_cd] = -i(eta_bc M_ad - eta_ac M_bd - eta_bd M_ac + eta_ad M_bc).
    """

    def __init__(self, sig: Signature):
        self.sig = sig
        self.pairs = sig.pairs()
        self.index = {p: k for k, p in enumerate(self.pairs)}
        self._br: dict = {}

    @property
    def dim(self) -> int:
        return len(self.pairs)

    def bracket_pairs(self, x, y) -> dict:
        key = (x, y)
        if key not in self._br:
            a, b = x
            c, d = y
            eta = self.sig.eta
            self._br[key] = combo_add(
                m_combo(self.sig, a, d, -I * eta(b, c)),
                m_combo(self.sig, b, d, I * eta(a, c)),
                m_combo(self.sig, a, c, I * eta(b, d)),
                m_combo(self.sig, b, c, -I * eta(a, d)),
            )
        return self._br[key]

    def bracket(self, x: dict, y: dict) -> dict:
        out = []
        for kx, vx in x.items():
            for ky, vy in y.items():
                out.append(combo_scale(self.bracket_pairs(kx, ky), vx * vy))
        return combo_add(*out)

    def adjoint(self, x: dict) -> dict:
        """Hermitian conjugate when every M_{ab} is self-adjoint."""
        return {k: v.conj() for k, v in x.items()}

    def to_vector(self, x: dict) -> list:
        v = [G0] * self.dim
        for k, c in x.items():
            v[self.index[k]] = c
        return v


# ---------------------------------------------------------------------------
# Cartan dictionaries

@dataclass
class CartanDictionary:
    kind: str
    n: int
    sig: Signature
    roots: RootSystem
    h_defs: dict   # index -> combo
    e_defs: dict   # root vector -> combo

    @property
    def names(self) -> list:
        """Basis element names: ('H', i) then ('E', root) for all roots."""
        pos = list(self.roots.positive_roots)
        neg = [tuple(-c for c in r) for r in pos]
        return [("H", i) for i in self.roots.indices] + [("E", r) for r in pos + neg]

    def combo(self, name) -> dict:
        kind, key = name
        return self.h_defs[key] if kind == "H" else self.e_defs[key]

    def short_scale(self, root) -> int:
        """Factor by which the stored root vector exceeds the normalised one, squared."""
        return 2 if self.roots.is_short(root) else 1

    @cached_property
    def algebra(self) -> SoAlgebra:
        return SoAlgebra(self.sig)

    @cached_property
    def change_of_basis(self) -> ExactMatrix:
        """Columns: Cartan basis elements in M coordinates."""
        alg = self.algebra
        cols = [alg.to_vector(self.combo(nm)) for nm in self.names]
        return ExactMatrix.from_rows([list(r) for r in zip(*cols)])

    @cached_property
    def inverse_change(self) -> ExactMatrix:
        return inverse(self.change_of_basis)

    def is_invertible(self) -> bool:
        T = self.change_of_basis
        return T.rows == T.cols == self.algebra.dim and rank(T) == T.rows

    def in_cartan_basis(self, combo: dict) -> dict:
        """Coordinates {name: coeff} of an M-combination in the Cartan basis."""
        v = ExactMatrix.column(self.algebra.to_vector(combo))
        x = self.inverse_change @ v
        names = self.names
        return {names[i]: x[i, 0] for i in range(x.rows) if x[i, 0]}

    def m_in_cartan(self, a: int, b: int) -> dict:
        return self.in_cartan_basis(m_combo(self.sig, a, b))


def build_dictionary(kind: str, n: int) -> CartanDictionary:
    check_kind(kind, n)
    sig = signature_for(kind, n)
    roots = RootSystem(kind, n)
    idx = roots.indices

    def M(a, b, c=1):
        return m_combo(sig, a, b, c)

    h_defs = {}
    for i in idx:
        if i == 0:
            h_defs[i] = M(-1, 0)
        elif is_noncompact(kind):
            h_defs[i] = M(2 * i - 1, 2 * i, -1)
        else:
            h_defs[i] = M(2 * i - 1, 2 * i)

    e_defs = {}
    for j, k in product(idx, idx):
        if j >= k:
            continue
        for s, t in product((1, -1), (1, -1)):
            e_defs[roots.vec({j: s, k: t})] = long_root_vector(sig, j, k, s, t)
    if is_btype(kind):
        top = 2 * n + 1
        for j in idx:
            for s in (1, -1):
                e_defs[tuple(s if i == j else 0 for i in idx)] = combo_add(
                    M(2 * j - 1, top), M(2 * j, top, I * s))
    return CartanDictionary(kind, n, sig, roots, h_defs, e_defs)


def long_root_vector(sig: Signature, j: int, k: int, s: int, t: int) -> dict:
    """E_{s e^j + t e^k} in M coordinates; valid for either order of j, k."""
    half = GaussianRational("1/2")
    return combo_add(m_combo(sig, 2 * j - 1, 2 * k - 1, half),
                     m_combo(sig, 2 * j, 2 * k - 1, half * I * s),
                     m_combo(sig, 2 * j - 1, 2 * k, half * I * t),
                     m_combo(sig, 2 * j, 2 * k, -half * s * t))


# ---------------------------------------------------------------------------
# verification on a concrete representation

@dataclass
class CheckReport:
    passed: bool
    failures: list

    def __bool__(self):
        return self.passed


def expected_coroot(d: CartanDictionary, root) -> dict:
    """[E_root, E_-root] as a combination of H's in this normalisation."""
    eps = -1 if d.roots.is_noncompact_root(root) else 1
    k = d.short_scale(root)
    return {("H", i): GaussianRational(eps * k * c) for i, c in zip(d.roots.indices, root) if c}


def short_bracket_factor(kind: str) -> GaussianRational:
    """c in [E~_{a e^i}, E~_{b e^j}] = c E_{a e^i + b e^j}, i < j.

    The sign flips between the compact and noncompact bases because the
    noncompact H_i (i >= 1) carry an extra minus sign.
    """
    return GaussianRational(0, -2 if is_noncompact(kind) else 2)


def verify_cartan_relations(d: CartanDictionary, rep: MatrixRep) -> CheckReport:
    if rep.signature != d.sig:
        raise ContractError("representation and dictionary have different signatures")
    mat = {nm: rep.element(d.combo(nm)) for nm in d.names}
    H = {i: mat["H", i] for i in d.roots.indices}
    fails = []

    def br(a, b):
        return a @ b - b @ a

    roots = [nm[1] for nm in d.names if nm[0] == "E"]
    for r in roots:
        E = mat["E", r]
        for i, c in zip(d.roots.indices, r):
            if br(H[i], E) != E.scale(c):
                fails.append(("[H,E]", i, r))
    for r in d.roots.positive_roots:
        neg = tuple(-c for c in r)
        want = ExactMatrix.zeros(rep.dim)
        for (_, i), c in expected_coroot(d, r).items():
            want = want + H[i].scale(c)
        if br(mat["E", r], mat["E", neg]) != want:
            fails.append(("[E,E-]", r))
    if is_btype(d.kind):
        shorts = [r for r in roots if d.roots.is_short(r)]
        for r1, r2 in product(shorts, shorts):
            j1 = next(k for k, c in enumerate(r1) if c)
            j2 = next(k for k, c in enumerate(r2) if c)
            if j1 >= j2:
                continue
            target = tuple(a + b for a, b in zip(r1, r2))
            if br(mat["E", r1], mat["E", r2]) != mat["E", target].scale(short_bracket_factor(d.kind)):
                fails.append(("[Es,Es]", r1, r2))
    if rep.unitary:
        for r in roots:
            neg = tuple(-c for c in r)
            E, F = mat["E", r], mat["E", neg]
            adj = E.adjoint() if rep.gram is None else inverse(rep.gram) @ E.adjoint() @ rep.gram
            if adj != F:
                fails.append(("adjoint", r))
    return CheckReport(not fails, fails)


def verify_abstract(d: CartanDictionary) -> CheckReport:
    """The same relations inside the abstract algebra, plus E_a^dagger = E_-a
    for hermitian M's (a statement about coefficients only)."""
    alg = d.algebra
    fails = []
    roots = [nm[1] for nm in d.names if nm[0] == "E"]
    for r in roots:
        E = d.e_defs[r]
        for i, c in zip(d.roots.indices, r):
            if combo_add(alg.bracket(d.h_defs[i], E), combo_scale(E, -c)):
                fails.append(("[H,E]", i, r))
        if alg.adjoint(E) != d.e_defs[tuple(-c for c in r)]:
            fails.append(("adjoint", r))
    for i in d.roots.indices:
        for j in d.roots.indices:
            if alg.bracket(d.h_defs[i], d.h_defs[j]):
                fails.append(("[H,H]", i, j))
    for r in d.roots.positive_roots:
        got = d.in_cartan_basis(alg.bracket(d.e_defs[r], d.e_defs[tuple(-c for c in r)]))
        if got != expected_coroot(d, r):
            fails.append(("[E,E-]", r))
    return CheckReport(not fails, fails)
