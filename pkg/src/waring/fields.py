"""Scalar fields: exact rationals (``fractions.Fraction``) and prime fields.

Prime-field elements are instances of :class:`ModP`; they interoperate with
``int`` and ``Fraction`` operands so the generic elimination routines in
:mod:`waring.linalg` work unchanged over either field.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

DEFAULT_PRIME = 2147483647          # largest prime below 2**31
SECANT_PRIMES = (2147483659, 2147483693)   # smallest primes above 2**31


class ModP:
    __slots__ = ("value", "p")

    def __init__(self, value, p: int):
        self.p = p
        if isinstance(value, ModP):
            if value.p != p:
                raise ValueError("mixing different prime fields")
            self.value = value.value
        elif isinstance(value, int):
            self.value = value % p
        elif isinstance(value, Rational):
            den = int(value.denominator) % p
            if den == 0:
                raise ZeroDivisionError(f"denominator vanishes mod {p}")
            self.value = int(value.numerator) * pow(den, -1, p) % p
        else:
            raise TypeError(f"cannot reduce {type(value).__name__} mod p")

    def _lift(self, other) -> "ModP | None":
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixing different prime fields")
            return other
        if isinstance(other, (int, Rational)):
            return ModP(other, self.p)
        return None

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else ModP(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else ModP(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else ModP(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else ModP(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ModP(pow(self.value, k, self.p), self.p)

    def __neg__(self):
        return ModP(-self.value, self.p)

    def inverse(self) -> "ModP":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return ModP(pow(self.value, -1, self.p), self.p)

    def __eq__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self.value == o.value

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def to_prime_field(p: int):
    """Return a converter sending ints/rationals to ``ModP`` elements mod ``p``."""
    if p <= 2:
        raise ValueError("prime must exceed 2")
    return lambda x: ModP(x, p)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"{x!r} is not an exact rational")


def is_exact(x) -> bool:
    return isinstance(x, (int, Rational, ModP))
