"""Exact scalar and matrix arithmetic.

Rationals are ``gmpy2.mpq``.  Gaussian rationals are pairs of them.
Matrices keep integer numerator arrays for the real and imaginary parts
over one common positive denominator, so products reduce to integer
matrix products (int64 when the magnitudes allow it, Python ints
otherwise).
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

import gmpy2
import numpy as np

Rational = type(gmpy2.mpq(0))


class ContractError(ValueError):
    """A precondition of an operation was violated."""


class ShapeError(ContractError):
    pass


def Q(x, den=None) -> Rational:
    """Coerce ints, fractions, decimal or ``p/q`` strings to an exact rational.

    ``Q(p, q)`` is the fraction p/q.
    """
    if den is not None:
        return Q(x) / Q(den)
    if isinstance(x, Rational):
        return x
    if isinstance(x, (int, Fraction)):
        return gmpy2.mpq(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            a, b = s.split("/")
            return gmpy2.mpq(int(a), int(b))
        return gmpy2.mpq(Fraction(s))
    if isinstance(x, float):
        return gmpy2.mpq(Fraction(x))
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise ContractError(f"{x} is not real")
        return x.re
    raise TypeError(f"cannot convert {type(x).__name__} to Rational")


_ZERO = gmpy2.mpq(0)
_ONE = gmpy2.mpq(1)


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Q(re)
        self.im = Q(im)

    @classmethod
    def _raw(cls, re, im):
        g = object.__new__(cls)
        g.re = re
        g.im = im
        return g

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls._raw(Q(x), _ZERO)

    def __add__(self, o):
        if isinstance(o, GaussianRational):
            return GaussianRational._raw(self.re + o.re, self.im + o.im)
        return GaussianRational._raw(self.re + Q(o), self.im)

    __radd__ = __add__

    def __sub__(self, o):
        if isinstance(o, GaussianRational):
            return GaussianRational._raw(self.re - o.re, self.im - o.im)
        return GaussianRational._raw(self.re - Q(o), self.im)

    def __rsub__(self, o):
        return GaussianRational.coerce(o) - self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __mul__(self, o):
        if isinstance(o, GaussianRational):
            a, b, c, d = self.re, self.im, o.re, o.im
            return GaussianRational._raw(a * c - b * d, a * d + b * c)
        if isinstance(o, ExactMatrix):
            return NotImplemented
        q = Q(o)
        return GaussianRational._raw(self.re * q, self.im * q)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = G1, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def abs2(self) -> Rational:
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * GaussianRational.coerce(o).inverse()

    def __rtruediv__(self, o):
        return GaussianRational.coerce(o) * self.inverse()

    def conj(self):
        return GaussianRational._raw(self.re, -self.im)

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, o):
        if isinstance(o, GaussianRational):
            return self.re == o.re and self.im == o.im
        if isinstance(o, complex):
            return self == GaussianRational.coerce(o)
        try:
            return self.im == 0 and self.re == Q(o)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I = GaussianRational(0, 1)
G0 = GaussianRational(0, 0)
G1 = GaussianRational(1, 0)


class HalfInt:
    """Exact half-integer, stored as twice its value."""

    __slots__ = ("twice",)

    def __init__(self, twice: int):
        self.twice = int(twice)

    @classmethod
    def of(cls, x) -> "HalfInt":
        if isinstance(x, HalfInt):
            return x
        q = Q(x)
        t = 2 * q
        if t.denominator != 1:
            raise ContractError(f"{x} is not a half integer")
        return cls(int(t.numerator))

    @property
    def value(self) -> Rational:
        return gmpy2.mpq(self.twice, 2)

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, o):
        return HalfInt(self.twice + HalfInt.of(o).twice)

    __radd__ = __add__

    def __sub__(self, o):
        return HalfInt(self.twice - HalfInt.of(o).twice)

    def __rsub__(self, o):
        return HalfInt.of(o) - self

    def __neg__(self):
        return HalfInt(-self.twice)

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __eq__(self, o):
        if isinstance(o, HalfInt):
            return self.twice == o.twice
        try:
            return self.value == Q(o)
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, o):
        return self.value < HalfInt.of(o).value

    def __le__(self, o):
        return self.value <= HalfInt.of(o).value

    def __gt__(self, o):
        return self.value > HalfInt.of(o).value

    def __ge__(self, o):
        return self.value >= HalfInt.of(o).value

    def __hash__(self):
        return hash(self.value)

    def __float__(self):
        return self.twice / 2

    def __str__(self):
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"

    __repr__ = __str__


def parse_halfint(s: str) -> HalfInt:
    """Parse ``"3/2"``, ``"-1.5"``, ``".5"`` or ``"2"``."""
    return HalfInt.of(Q(s))


# ---------------------------------------------------------------------------
# matrices

_I64_SAFE = 2**62


def _as_int_array(a):
    a = np.asarray(a, dtype=object)
    if a.size == 0:
        return a.astype(np.int64)
    m = max(abs(int(v)) for v in a.flat)
    if m < _I64_SAFE:
        return a.astype(np.int64)
    return a


def _maxabs(a) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(v)) for v in a.flat)
    return int(np.abs(a).max())


def _imatmul(a, b):
    """Exact integer matrix product."""
    k = a.shape[1]
    if (a.dtype != object and b.dtype != object
            and _maxabs(a) * _maxabs(b) * max(k, 1) * 2 < _I64_SAFE):
        return a @ b
    return a.astype(object) @ b.astype(object)


def _gcd_all(*arrays) -> int:
    g = 0
    for a in arrays:
        if a.size == 0:
            continue
        if a.dtype == object:
            g = reduce(math.gcd, (int(v) for v in a.flat), g)
        else:
            g = math.gcd(g, int(np.gcd.reduce(np.abs(a), axis=None)))
        if g == 1:
            return 1
    return g


class ExactMatrix:
    """Dense matrix over the Gaussian rationals.

    Entries are ``(re + i*im) / den`` with integer arrays ``re``, ``im`` and a
    positive integer ``den``; the triple is kept reduced so that equality is
    structural.
    """

    __slots__ = ("re", "im", "den")

    def __init__(self, re, im=None, den: int = 1):
        re = _as_int_array(re)
        if re.ndim != 2:
            raise ShapeError("ExactMatrix needs a 2-d array")
        im = np.zeros(re.shape, dtype=np.int64) if im is None else _as_int_array(im)
        if im.shape != re.shape:
            raise ShapeError("real and imaginary parts differ in shape")
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            re, im, den = -re, -im, -den
        g = math.gcd(_gcd_all(re, im), den)
        if g > 1:
            re = re // g
            im = im // g
            den //= g
        self.re, self.im, self.den = _as_int_array(re), _as_int_array(im), den

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, rows) -> "ExactMatrix":
        rows = [[GaussianRational.coerce(v) for v in row] for row in rows]
        if not rows or not rows[0]:
            raise ShapeError("empty matrix")
        ncol = len(rows[0])
        if any(len(r) != ncol for r in rows):
            raise ShapeError("ragged rows")
        den = 1
        for row in rows:
            for v in row:
                den = math.lcm(den, int(v.re.denominator), int(v.im.denominator))
        re = [[int(v.re * den) for v in row] for row in rows]
        im = [[int(v.im * den) for v in row] for row in rows]
        return cls(np.array(re, dtype=object), np.array(im, dtype=object), den)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls(np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def column(cls, entries) -> "ExactMatrix":
        return cls.from_rows([[v] for v in entries])

    # shape / access ---------------------------------------------------
    @property
    def shape(self):
        return self.re.shape

    @property
    def rows(self) -> int:
        return self.re.shape[0]

    @property
    def cols(self) -> int:
        return self.re.shape[1]

    def __getitem__(self, ij) -> GaussianRational:
        i, j = ij
        return GaussianRational._raw(gmpy2.mpq(int(self.re[i, j]), self.den),
                                     gmpy2.mpq(int(self.im[i, j]), self.den))

    def to_rows(self) -> list[list[GaussianRational]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def submatrix(self, rows, cols) -> "ExactMatrix":
        r = np.ix_(list(rows), list(cols))
        return ExactMatrix(self.re[r], self.im[r], self.den)

    # arithmetic -------------------------------------------------------
    def _common(self, o: "ExactMatrix"):
        if self.shape != o.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {o.shape}")
        d = math.lcm(self.den, o.den)
        a, b = d // self.den, d // o.den
        return self.re * a, self.im * a, o.re * b, o.im * b, d

    def __add__(self, o):
        ar, ai, br, bi, d = self._common(o)
        return ExactMatrix(ar + br, ai + bi, d)

    def __sub__(self, o):
        ar, ai, br, bi, d = self._common(o)
        return ExactMatrix(ar - br, ai - bi, d)

    def __neg__(self):
        return ExactMatrix(-self.re, -self.im, self.den)

    def scale(self, s) -> "ExactMatrix":
        s = GaussianRational.coerce(s)
        pr, pi = s.re, s.im
        d = math.lcm(int(pr.denominator), int(pi.denominator))
        nr, ni = int(pr * d), int(pi * d)
        re = self.re * nr - self.im * ni if ni else self.re * nr
        im = self.re * ni + self.im * nr if ni else self.im * nr
        return ExactMatrix(re, im, self.den * d)

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def __matmul__(self, o: "ExactMatrix") -> "ExactMatrix":
        if self.cols != o.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {o.shape}")
        rr = _imatmul(self.re, o.re)
        ii = _imatmul(self.im, o.im)
        ri = _imatmul(self.re, o.im)
        ir = _imatmul(self.im, o.re)
        return ExactMatrix(rr - ii, ri + ir, self.den * o.den)

    def adjoint(self) -> "ExactMatrix":
        return ExactMatrix(self.re.T.copy(), -self.im.T, self.den)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.re.T.copy(), self.im.T.copy(), self.den)

    def conj(self) -> "ExactMatrix":
        return ExactMatrix(self.re, -self.im, self.den)

    def kron(self, o: "ExactMatrix") -> "ExactMatrix":
        a_r, a_i = self.re.astype(object), self.im.astype(object)
        b_r, b_i = o.re.astype(object), o.im.astype(object)
        return ExactMatrix(np.kron(a_r, b_r) - np.kron(a_i, b_i),
                           np.kron(a_r, b_i) + np.kron(a_i, b_r),
                           self.den * o.den)

    def trace(self) -> GaussianRational:
        return GaussianRational(gmpy2.mpq(int(np.trace(self.re)), self.den),
                                gmpy2.mpq(int(np.trace(self.im)), self.den))

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not np.any(self.re) and not np.any(self.im)

    def __eq__(self, o):
        if not isinstance(o, ExactMatrix):
            return NotImplemented
        return (self.shape == o.shape and self.den == o.den
                and np.array_equal(self.re, o.re) and np.array_equal(self.im, o.im))

    __hash__ = None

    def is_hermitian(self) -> bool:
        return self.rows == self.cols and self == self.adjoint()

    def scalar_value(self):
        """Return ``s`` if the matrix equals ``s * identity``, else ``None``."""
        if self.rows != self.cols:
            return None
        n = self.rows
        dr, di = np.diag(self.re), np.diag(self.im)
        off = ~np.eye(n, dtype=bool)
        if np.any(self.re[off]) or np.any(self.im[off]):
            return None
        if np.any(dr != dr[0]) or np.any(di != di[0]):
            return None
        return self[0, 0]

    def nonzero_entry(self):
        """Index of the first nonzero entry, or ``None``."""
        nz = np.argwhere((self.re != 0) | (self.im != 0))
        return None if len(nz) == 0 else (int(nz[0][0]), int(nz[0][1]))

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.to_rows())
        return f"ExactMatrix([{rows}])"

    def to_complex(self) -> np.ndarray:
        return (self.re.astype(float) + 1j * self.im.astype(float)) / self.den


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a @ b


def hstack(mats) -> ExactMatrix:
    mats = list(mats)
    d = reduce(math.lcm, (m.den for m in mats), 1)
    re = np.hstack([m.re.astype(object) * (d // m.den) for m in mats])
    im = np.hstack([m.im.astype(object) * (d // m.den) for m in mats])
    return ExactMatrix(re, im, d)


def vstack(mats) -> ExactMatrix:
    mats = list(mats)
    d = reduce(math.lcm, (m.den for m in mats), 1)
    re = np.vstack([m.re.astype(object) * (d // m.den) for m in mats])
    im = np.vstack([m.im.astype(object) * (d // m.den) for m in mats])
    return ExactMatrix(re, im, d)


# ---------------------------------------------------------------------------
# elimination over Q(i)

def rref(a: ExactMatrix):
    """Reduced row echelon form as (rows of GaussianRational, pivot columns)."""
    m = a.to_rows()
    nr, nc = a.rows, a.cols
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [v * inv for v in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                ri = m[r]
                m[i] = [x - f * y for x, y in zip(m[i], ri)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: ExactMatrix) -> int:
    return len(rref(a)[1])


def nullspace(a: ExactMatrix) -> ExactMatrix | None:
    """Columns spanning the right kernel, or ``None`` if it is trivial."""
    m, pivots = rref(a)
    free = [c for c in range(a.cols) if c not in pivots]
    if not free:
        return None
    cols = []
    for f in free:
        v = [G0] * a.cols
        v[f] = G1
        for row, pc in enumerate(pivots):
            v[pc] = -m[row][f]
        cols.append(v)
    return ExactMatrix.from_rows([list(r) for r in zip(*cols)])


def solve(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Solve ``a @ x == b`` for square invertible ``a``."""
    if a.rows != a.cols or a.rows != b.rows:
        raise ShapeError("solve needs square a with matching b")
    m, pivots = rref(hstack([a, b]))
    if pivots[: a.cols] != list(range(a.cols)):
        raise ContractError("singular matrix")
    return ExactMatrix.from_rows([row[a.cols:] for row in m[: a.rows]])


def inverse(a: ExactMatrix) -> ExactMatrix:
    return solve(a, ExactMatrix.identity(a.rows))


def inertia(h: ExactMatrix) -> tuple[int, int, int]:
    """Signature ``(n_pos, n_zero, n_neg)`` of a hermitian matrix.

    Congruence diagonalisation: pivot on a nonzero diagonal entry when one
    exists, otherwise create one with an elementary congruence from a
    nonzero off-diagonal entry.
    """
    if not h.is_hermitian():
        raise ContractError("inertia needs a hermitian matrix")
    m = h.to_rows()
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # row_i += t row_j, col_i += conj(t) col_j; t = m_ij makes the
            # new diagonal entry 2|m_ij|^2
            t = m[i][j]
            tc = t.conj()
            for k in range(n):
                m[i][k] = m[i][k] + t * m[j][k]
            for k in range(n):
                m[k][i] = m[k][i] + tc * m[k][j]
            piv = i
        d = m[piv][piv]
        if d.re > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        dinv = d.inverse()
        row = m[piv]
        for i in active:
            if m[i][piv]:
                f = m[i][piv] * dinv
                mi = m[i]
                for k in active:
                    if row[k]:
                        mi[k] = mi[k] - f * row[k]
        for i in active:
            m[i][piv] = G0
            m[piv][i] = G0
    return pos, n - pos - neg, neg
