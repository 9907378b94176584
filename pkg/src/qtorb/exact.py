"""Exact arithmetic building blocks.

Integers are plain Python ints, rationals are :class:`fractions.Fraction`
(always reduced, positive denominator), and graded quantities live in
:class:`Poly`, a dense integer polynomial in the squared grading variable
``s``.  Degrees are doubled only when rendering actual cohomological
degrees; everything internal stays even-graded.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

Rat = Fraction


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k); zero whenever k is outside 0..n."""
    if n < 0:
        raise ValueError(f"binom requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def rat_to_str(q: Fraction) -> str:
    """Serialize a rational as ``"p/q"``, or just ``"p"`` when q = 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rat_from_str(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``. Inverse of :func:`rat_to_str`."""
    return Fraction(text)


class Poly:
    """Dense univariate polynomial with integer coefficients.

    ``coeffs[i]`` is the coefficient of ``s**i``.  The tuple never has a
    trailing zero, so the zero polynomial is the empty tuple and equality
    is plain tuple comparison.
    """

    __slots__ = ("coeffs",)

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[Union[int, Fraction]] = ()):
        norm = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise TypeError(f"non-integer coefficient {c}")
                c = c.numerator
            elif not isinstance(c, int):
                raise TypeError(f"non-integer coefficient {c!r}")
            norm.append(c)
        while norm and norm[-1] == 0:
            norm.pop()
        self.coeffs = tuple(norm)

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "Poly":
        if degree < 0:
            raise ValueError("monomial degree must be nonnegative")
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        """Degree in s; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "Poly":
        if isinstance(other, int):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Poly":
        if isinstance(other, int):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            return Poly(tuple(other * c for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"polynomial power must be a nonnegative int, got {k!r}")
        result = Poly.one()
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x):
        """Evaluate by Horner's rule; exact for int or Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shifted(self, k: int) -> "Poly":
        """Multiply by s**k."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        if not self.coeffs:
            return Poly()
        return Poly((0,) * k + self.coeffs)

    def even_expansion(self) -> list[int]:
        """Coefficients re-indexed by true (doubled) degree: s**i -> degree 2i."""
        if not self.coeffs:
            return []
        out = [0] * (2 * self.degree + 1)
        for i, c in enumerate(self.coeffs):
            out[2 * i] = c
        return out

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "s" if i == 1 else f"s^{i}"
                if c == 1:
                    terms.append(var)
                elif c == -1:
                    terms.append(f"-{var}")
                else:
                    terms.append(f"{c}*{var}")
        return " + ".join(terms).replace("+ -", "- ")
