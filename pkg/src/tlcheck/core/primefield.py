"""Arithmetic in prime fields F_p."""
from __future__ import annotations

from .errors import UndefinedInputError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class PrimeFieldElement:
    """Residue class modulo a prime.

    Mixed arithmetic with Python ints is allowed; mixing two different
    moduli raises ``ValueError``.
    """

    __slots__ = ("residue", "modulus")

    def __init__(self, value: int, modulus: int):
        self.modulus = modulus
        self.residue = int(value) % modulus

    def __reduce__(self):
        return (PrimeFieldElement, (self.residue, self.modulus))

    def _other(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise ValueError(f"mixed moduli {self.modulus} and {other.modulus}")
            return other.residue
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.residue + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.residue - o, self.modulus)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(o - self.residue, self.modulus)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.residue * o, self.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "PrimeFieldElement":
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.modulus}")
        return PrimeFieldElement(pow(self.residue, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * PrimeFieldElement(o, self.modulus).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.inverse() * o

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.modulus)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return PrimeFieldElement(pow(self.residue, k, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.modulus == other.modulus and self.residue == other.residue
        if isinstance(other, int):
            return (self.residue - other) % self.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"PrimeFieldElement({self.residue}, {self.modulus})"

    def __str__(self):
        return str(self.residue)


def mult_order(u: PrimeFieldElement) -> int:
    """Smallest ``k >= 1`` with ``u**k == 1``."""
    if not u:
        raise UndefinedInputError("multiplicative order of 0 is undefined")
    x, k = u, 1
    while x != 1:
        x = x * u
        k += 1
    return k
