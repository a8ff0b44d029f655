"""Exact arithmetic in cyclotomic fields Q(ζ_n).

Character values of finite groups live in cyclotomic fields, and fusion
coefficients computed from them must come out as exact non-negative
integers; any rounding would hide bad input.  Values are kept as rational
polynomials in ζ_n, canonicalized modulo the n-th cyclotomic polynomial so
that equality of values is equality of forms.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, Mapping, Optional, Tuple

from .elements import InvalidInputError

Poly = Tuple[Fraction, ...]  # coefficients, low degree first, no trailing zeros


def _trim(coeffs: list) -> Poly:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for k, b in enumerate(q):
                out[i + k] += a * b
    return _trim(out)


def _poly_divmod(p: Poly, q: Poly) -> Tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    while len(rem) >= len(q):
        factor = rem[-1] / lead
        shift = len(rem) - len(q)
        quot[shift] = factor
        for i, b in enumerate(q):
            rem[shift + i] -= factor * b
        while rem and rem[-1] == 0:
            rem.pop()
    return _trim(quot), _trim(rem)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Poly:
    """Coefficients of Φ_n, computed by exact division of x^n - 1."""
    if n < 1:
        raise InvalidInputError("cyclotomic order must be positive")
    if n == 1:
        return (Fraction(-1), Fraction(1))
    num: Poly = tuple([Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)])
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem, "x^n - 1 must divide exactly"
    return num


class Cyclo:
    """A value in Q(ζ_order), stored in canonical reduced form."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Mapping[int, Fraction]):
        if order < 1:
            raise InvalidInputError("cyclotomic order must be positive")
        poly = [Fraction(0)] * order
        for exp, c in coeffs.items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            poly[exp % order] += c
        _, rem = _poly_divmod(_trim(poly), cyclotomic_polynomial(order))
        self.order = order
        self.coeffs: Dict[int, Fraction] = {i: c for i, c in enumerate(rem) if c}

    @classmethod
    def from_rational(cls, value) -> "Cyclo":
        return cls(1, {0: Fraction(value)})

    @classmethod
    def from_pair(cls, re, im) -> "Cyclo":
        """Gaussian rational re + im·i, with i = ζ_4."""
        return cls(4, {0: Fraction(re), 1: Fraction(im)})

    @classmethod
    def zeta(cls, n: int, power: int = 1) -> "Cyclo":
        return cls(n, {power: Fraction(1)})

    def lift(self, order: int) -> "Cyclo":
        if order == self.order:
            return self
        if order % self.order != 0:
            raise InvalidInputError(
                f"cannot lift order {self.order} into order {order}")
        step = order // self.order
        return Cyclo(order, {e * step: c for e, c in self.coeffs.items()})

    def _pair(self, other: "Cyclo") -> Tuple["Cyclo", "Cyclo"]:
        n = lcm(self.order, other.order)
        return self.lift(n), other.lift(n)

    def __add__(self, other: "Cyclo") -> "Cyclo":
        a, b = self._pair(other)
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Cyclo(a.order, out)

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.order, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "Cyclo") -> "Cyclo":
        return self + (-other)

    def __mul__(self, other: "Cyclo") -> "Cyclo":
        a, b = self._pair(other)
        out: Dict[int, Fraction] = {}
        for e1, c1 in a.coeffs.items():
            for e2, c2 in b.coeffs.items():
                e = (e1 + e2) % a.order
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Cyclo(a.order, out)

    def scale(self, k) -> "Cyclo":
        k = Fraction(k)
        return Cyclo(self.order, {e: c * k for e, c in self.coeffs.items()})

    def conj(self) -> "Cyclo":
        return Cyclo(self.order, {-e: c for e, c in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def as_rational(self) -> Optional[Fraction]:
        if not self.coeffs:
            return Fraction(0)
        if set(self.coeffs) == {0}:
            return self.coeffs[0]
        return None

    def as_integer(self) -> Optional[int]:
        q = self.as_rational()
        if q is not None and q.denominator == 1:
            return q.numerator
        return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclo.from_rational(other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        q = self.as_rational()
        if q is not None:
            return hash(q)
        # equal irrational values can live at different orders; a constant
        # hash keeps the contract without computing conductors
        return 0x5CE11E

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Cyclo(0)"
        terms = " + ".join(
            (f"{c}" if e == 0 else f"{c}·ζ{self.order}^{e}")
            for e, c in sorted(self.coeffs.items()))
        return f"Cyclo({terms})"
