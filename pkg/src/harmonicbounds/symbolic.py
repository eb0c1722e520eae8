"""Tiny exact rational-function algebra in one formal symbol.

Just enough machinery to verify closed-form identities between the sharp
constants of the bound catalog (for example that the quadratic-shift
constant collapses to (1-2g)/2 when the target is expressed in the same
symbol g).  Coefficients are Fractions; equality is decided by
cross-multiplication, so no normal form or gcd of polynomials is needed.
"""

from __future__ import annotations

from fractions import Fraction


def _trim(coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    i = len(coeffs)
    while i > 0 and coeffs[i - 1] == 0:
        i -= 1
    return coeffs[:i]


class Poly:
    """Dense univariate polynomial with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((Fraction(c),))

    @classmethod
    def x(cls) -> "Poly":
        return cls((Fraction(0), Fraction(1)))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        if self.is_zero:
            return "Poly(0)"
        parts = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Poly(" + " + ".join(parts) + ")"


class PolyFraction:
    """Quotient of two polynomials; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        den = Poly.const(1) if den is None else den
        if den.is_zero:
            raise ZeroDivisionError("zero denominator polynomial")
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c) -> "PolyFraction":
        return cls(Poly.const(c))

    @classmethod
    def symbol(cls) -> "PolyFraction":
        return cls(Poly.x())

    def __add__(self, other) -> "PolyFraction":
        other = _coerce(other)
        return PolyFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "PolyFraction":
        return PolyFraction(-self.num, self.den)

    def __sub__(self, other) -> "PolyFraction":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "PolyFraction":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "PolyFraction":
        other = _coerce(other)
        return PolyFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PolyFraction":
        other = _coerce(other)
        if other.num.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return PolyFraction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "PolyFraction":
        return _coerce(other) / self

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("PolyFraction is not hashable (no canonical form)")

    def __call__(self, x) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num(x) / d

    def __repr__(self) -> str:
        return f"PolyFraction({self.num!r} / {self.den!r})"


def _coerce(v) -> PolyFraction:
    if isinstance(v, PolyFraction):
        return v
    if isinstance(v, Poly):
        return PolyFraction(v)
    return PolyFraction.const(v)
