"""Sparse multivariate polynomials with exact rational coefficients."""
from __future__ import annotations

import math
from itertools import zip_longest

import gmpy2

from .exact import Q, Rational


def _pad(e, n):
    return tuple(e) + (0,) * (n - len(e))


def _trim(e):
    e = list(e)
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


class Poly:
    """Polynomial in variables x_0, x_1, ... stored as {exponent tuple: coeff}.

    Exponent tuples are trimmed of trailing zeros so equal polynomials
    compare equal regardless of how many variables were in play.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for e, c in (terms or {}).items():
            c = Q(c)
            if c:
                e = _trim(e)
                self.terms[e] = self.terms.get(e, 0) + c
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): c})

    @classmethod
    def var(cls, i: int) -> "Poly":
        return cls({(0,) * i + (1,): 1})

    @classmethod
    def coerce(cls, x) -> "Poly":
        return x if isinstance(x, Poly) else cls.const(x)

    def __add__(self, o):
        o = Poly.coerce(o)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-Poly.coerce(o))

    def __rsub__(self, o):
        return Poly.coerce(o) - self

    def __mul__(self, o):
        o = Poly.coerce(o)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = _trim(a + b for a, b in zip_longest(e1, e2, fillvalue=0))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        return self.terms == Poly.coerce(o).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def nvars(self) -> int:
        return max((len(e) for e in self.terms), default=0)

    def degree(self, var: int | None = None) -> int:
        if var is None:
            return max((sum(e) for e in self.terms), default=0)
        return max((e[var] if var < len(e) else 0 for e in self.terms), default=0)

    def subs(self, mapping: dict) -> "Poly":
        """Substitute polynomials for variables {index: Poly}."""
        out = Poly()
        for e, c in self.terms.items():
            term = Poly.const(c)
            rest = list(e)
            for i, k in enumerate(e):
                if k and i in mapping:
                    term = term * Poly.coerce(mapping[i]) ** k
                    rest[i] = 0
            out = out + term * Poly({tuple(rest): 1})
        return out

    def __call__(self, *values) -> Rational:
        tot = Q(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(values, e):
                if k:
                    v *= Q(x) ** k
            tot += v
        return tot

    def coefficients(self, var: int) -> list["Poly"]:
        """Coefficients as a polynomial in ``var`` (lowest degree first)."""
        out = [Poly() for _ in range(self.degree(var) + 1)]
        for e, c in self.terms.items():
            k = e[var] if var < len(e) else 0
            rest = _pad(e, var + 1)
            rest = rest[:var] + (0,) + rest[var + 1:]
            out[k] = out[k] + Poly({rest: c})
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def rational_roots(coeffs) -> list[Rational] | None:
    """Rational roots of a univariate polynomial of degree <= 2.

    ``coeffs`` lowest degree first, as rationals.  Returns ``None`` when the
    polynomial is identically zero.  Irrational roots are dropped.
    """
    c = [Q(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    if not c:
        return None
    if len(c) == 1:
        return []
    if len(c) == 2:
        return [-c[0] / c[1]]
    if len(c) > 3:
        raise ValueError("degree > 2")
    a, b, k = c[2], c[1], c[0]
    disc = b * b - 4 * a * k
    if disc < 0:
        return []
    num, den = disc.numerator, disc.denominator
    if not (gmpy2.is_square(num) and gmpy2.is_square(den)):
        return []
    r = gmpy2.mpq(gmpy2.isqrt(num), gmpy2.isqrt(den))
    return sorted({(-b + r) / (2 * a), (-b - r) / (2 * a)})


def integer_coefficients(p: Poly, scale_var_by: int = 2):
    """(terms, multiplier) so that multiplier * p(t/scale) = sum coeff * prod t^e
    with integer coefficients; used by the vectorised brute-force scan."""
    deg = p.degree()
    lcm = 1
    for c in p.terms.values():
        lcm = math.lcm(lcm, int(c.denominator))
    out = []
    for e, c in p.terms.items():
        v = c * lcm * scale_var_by ** (deg - sum(e))
        assert v.denominator == 1
        out.append((e, int(v)))
    return out, lcm * scale_var_by ** deg
