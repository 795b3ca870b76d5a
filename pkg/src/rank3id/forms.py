"""Binary forms in (λ, μ) with rational coefficients.

A form of degree d is stored as coefficients c_0..c_d of
λ^d, λ^{d-1}μ, ..., μ^d. The zero form has an empty coefficient tuple.
Univariate helpers work on dehomogenized polynomials p(t) = f(t, 1), stored
highest degree first with no leading zeros (``[]`` is zero).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy

from .linalg import Q, QMatrix, inverse

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _strip(p: Sequence[Fraction]) -> list[Fraction]:
    p = list(p)
    while p and p[0] == 0:
        p.pop(0)
    return p


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    if not p or not q:
        return []
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def poly_divmod(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    q = _strip(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = _strip(p)
    if len(r) < len(q):
        return [], r
    quot = [_ZERO] * (len(r) - len(q) + 1)
    while len(r) >= len(q):
        c = r[0] / q[0]
        k = len(r) - len(q)
        quot[len(quot) - 1 - k] = c
        for i, b in enumerate(q):
            r[i] -= c * b
        r = _strip(r)
    return quot, r


def poly_gcd(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = _strip(p), _strip(q)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return [x / a[0] for x in a] if a else []


@dataclass(frozen=True)
class BinaryForm:
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Q(c) for c in self.coeffs)
        if not any(cs):
            cs = ()
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def one(cls) -> "BinaryForm":
        return cls((_ONE,))

    @classmethod
    def lam(cls) -> "BinaryForm":
        return cls((_ONE, _ZERO))

    @classmethod
    def mu(cls) -> "BinaryForm":
        return cls((_ZERO, _ONE))

    @classmethod
    def linear(cls, a, b) -> "BinaryForm":
        """a λ + b μ"""
        return cls((a, b))

    @classmethod
    def from_univariate(cls, p: Sequence[Fraction], degree: int) -> "BinaryForm":
        p = _strip(p)
        if not p:
            return cls(())
        if len(p) - 1 > degree:
            raise ValueError("degree too small for polynomial")
        return cls((_ZERO,) * (degree + 1 - len(p)) + tuple(p))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int | None:
        """Homogeneous degree, or None for the zero form."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_constant(self) -> bool:
        return self.degree == 0

    @property
    def mu_multiplicity(self) -> int:
        n = 0
        for c in self.coeffs:
            if c:
                break
            n += 1
        return n

    def dehomogenize(self) -> list[Fraction]:
        """p(t) = f(t, 1), highest degree first."""
        return _strip(self.coeffs)

    def __call__(self, lam, mu) -> Fraction:
        d = self.degree
        if d is None:
            return _ZERO
        lam, mu = Q(lam), Q(mu)
        return sum((c * lam ** (d - i) * mu ** i for i, c in enumerate(self.coeffs)), _ZERO)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero() or other.is_zero():
            return BinaryForm(())
        return BinaryForm(tuple(poly_mul(self.coeffs, other.coeffs)))

    def __pow__(self, e: int) -> "BinaryForm":
        out = BinaryForm.one()
        for _ in range(e):
            out = out * self
        return out

    def exact_div(self, other: "BinaryForm") -> "BinaryForm":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero form")
        if self.is_zero():
            return self
        if other.mu_multiplicity > self.mu_multiplicity:
            raise ArithmeticError(f"{other} does not divide {self}")
        quot, rem = poly_divmod(self.dehomogenize(), other.dehomogenize())
        if rem:
            raise ArithmeticError(f"{other} does not divide {self}")
        return BinaryForm.from_univariate(quot, self.degree - other.degree)

    def monic(self) -> "BinaryForm":
        """Scale so the lexicographically leading coefficient (λ before μ) is 1."""
        if self.is_zero():
            return self
        lead = next(c for c in self.coeffs if c)
        return BinaryForm(tuple(c / lead for c in self.coeffs))

    def is_proportional(self, other: "BinaryForm") -> bool:
        return self.monic() == other.monic()

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        d = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mon = "*".join(s for s in (_power("λ", d - i), _power("μ", i)) if s)
            if not mon:
                terms.append(str(c))
            elif c == 1:
                terms.append(mon)
            elif c == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{c}*{mon}")
        return " + ".join(terms).replace("+ -", "- ")


def _power(sym: str, e: int) -> str:
    return "" if e == 0 else sym if e == 1 else f"{sym}^{e}"


def gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Monic gcd of two binary forms; gcd(0, g) = monic(g)."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    mu = min(f.mu_multiplicity, g.mu_multiplicity)
    p = poly_gcd(f.dehomogenize(), g.dehomogenize())
    return BinaryForm.from_univariate(p, len(p) - 1 + mu)


def factor(f: BinaryForm) -> list[tuple[BinaryForm, int]]:
    """Irreducible factorization over Q into monic bases with exponents.

    The constant factor is dropped. A μ base marks infinite divisors.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero form")
    out = []
    if f.mu_multiplicity:
        out.append((BinaryForm.mu(), f.mu_multiplicity))
    p = f.dehomogenize()
    if len(p) > 1:
        t = sympy.Symbol("t")
        poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in p], t,
                          domain=sympy.QQ)
        _, factors = poly.factor_list()
        for fac, e in factors:
            cs = [Fraction(int(c.p), int(c.q)) for c in fac.all_coeffs()]
            out.append((BinaryForm.from_univariate(cs, len(cs) - 1).monic(), int(e)))
    return sorted(out, key=lambda be: divisor_key(*be))


def divisor_key(base: BinaryForm, e: int):
    # infinite (μ) first, then by degree and coefficients
    return (base != BinaryForm.mu(), base.degree, base.coeffs, e)


@lru_cache(maxsize=None)
def _vandermonde_inverse(d: int) -> QMatrix:
    # rows: t = 0..d ; columns: t^d, ..., t^0
    V = QMatrix.from_rows([[Fraction(t) ** (d - i) for i in range(d + 1)] for t in range(d + 1)])
    return inverse(V)


def interpolate(values: Sequence[Fraction], degree: int) -> BinaryForm:
    """Binary form f of the given degree with f(t, 1) = values[t], t = 0..degree."""
    return BinaryForm(_vandermonde_inverse(degree) @ tuple(values))
