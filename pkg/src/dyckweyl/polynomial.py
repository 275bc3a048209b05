"""Univariate polynomials in ``d`` with exact integer coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Number = Union[int, Fraction, float, complex]


class InexactDivisionError(ArithmeticError):
    """Raised when an integer-polynomial division leaves a remainder."""


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial ``sum(coeffs[k] * d**k)`` over the integers.

    The coefficient tuple is kept canonical (no trailing zeros), so two
    polynomials compare equal iff their coefficient lists are identical. The
    zero polynomial has an empty tuple.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def padded(self, length: int) -> list[int]:
        return list(self.coeffs) + [0] * (length - len(self.coeffs))

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a, b = self.padded(n), other.padded(n)
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by ``d**k``."""
        if self.is_zero():
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def divmod(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Long division over the integers.

        The divisor's leading coefficient must divide every intermediate
        leading term; otherwise ``InexactDivisionError`` is raised, since the
        quotient would leave the integer ring.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        lead = divisor.coeffs[-1]
        dd = divisor.degree
        quot = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1 - dd, -1, -1):
            top = rem[k + dd]
            if top == 0:
                continue
            q, r = divmod(top, lead)
            if r:
                raise InexactDivisionError(
                    f"leading term {top} not divisible by {lead}")
            quot[k] = q
            for i, c in enumerate(divisor.coeffs):
                rem[k + i] -= q * c
        return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem))

    def exact_div(self, divisor: IntPolynomial) -> IntPolynomial:
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise InexactDivisionError(f"nonzero remainder {r} dividing {self} by {divisor}")
        return q

    def __call__(self, d: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * d + c
        return acc

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                body = str(c)
            else:
                mono = "d" if k == 1 else f"d^{k}"
                body = mono if c == 1 else ("-" + mono if c == -1 else f"{c}{mono}")
            terms.append(body)
        return " + ".join(terms).replace("+ -", "- ")


def _coerce(x) -> IntPolynomial | None:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial.constant(x)
    return None


D = IntPolynomial.monomial(1)
ONE = IntPolynomial.constant(1)
