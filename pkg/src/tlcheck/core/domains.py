"""Coefficient domains.

Every domain exposes ``zero``, ``one``, ``coerce``, ``parse`` and
``render`` and says whether it is a field.  Element types are ordinary
Python numbers where possible:

========  ==============================  ======================
name      meaning                         element type
========  ==============================  ======================
``Z``     integers (internal)             ``int``
``Q``     rationals                       ``fractions.Fraction``
``Fp:p``  prime field                     ``PrimeFieldElement``
``Zu``    integer polynomials in u        ``Polynomial``
``Qu``    rational functions in u over Q  ``RationalFunction``
========  ==============================  ======================
"""
from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, UndefinedInputError
from .primefield import PrimeFieldElement, is_prime


class Domain:
    name = "?"
    is_field = False
    is_symbolic = False

    def __eq__(self, other):
        return isinstance(other, Domain) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (parse_domain, (self.name,))

    def __call__(self, x):
        return self.coerce(x)

    def render(self, x) -> str:
        return str(x)

    def fraction_field(self) -> "Domain":
        return self

    def power(self, x, k: int):
        """``x**k`` with ``0**0 == 1``; negative ``k`` needs a field."""
        if k < 0 and not self.is_field:
            x = self.fraction_field().coerce(x)
        return x ** k if k else self.one


class IntegerRing(Domain):
    name = "Z"
    zero, one = 0, 1

    def coerce(self, x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        raise TypeError(f"cannot coerce {x!r} to Z")

    def parse(self, text: str):
        return int(text)

    def fraction_field(self):
        return QQ


class RationalField(Domain):
    name = "Q"
    is_field = True
    zero, one = Fraction(0), Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} to Q")

    def parse(self, text: str):
        return Fraction(text.strip())


class PrimeField(Domain):
    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise UndefinedInputError(f"{p} is not prime")
        self.p = p
        self.name = f"Fp:{p}"
        self.zero = PrimeFieldElement(0, p)
        self.one = PrimeFieldElement(1, p)

    def coerce(self, x):
        if isinstance(x, PrimeFieldElement):
            if x.modulus != self.p:
                raise DomainError(f"element of F_{x.modulus} used in F_{self.p}")
            return x
        if isinstance(x, int):
            return PrimeFieldElement(x, self.p)
        if isinstance(x, Fraction):
            return PrimeFieldElement(x.numerator, self.p) / PrimeFieldElement(x.denominator, self.p)
        raise TypeError(f"cannot coerce {x!r} to F_{self.p}")

    def parse(self, text: str):
        return self.coerce(Fraction(text.strip()))


class IntPolyRing(Domain):
    """Z[u]; the parameter ``u`` is the generator."""

    name = "Zu"
    is_symbolic = True

    def __init__(self):
        from .poly import Polynomial
        self.zero = Polynomial((), ZZ, "u")
        self.one = Polynomial((1,), ZZ, "u")
        self.gen = Polynomial((0, 1), ZZ, "u")

    def coerce(self, x):
        from .poly import Polynomial
        if isinstance(x, Polynomial) and x.var == "u":
            if x.domain != ZZ:
                return Polynomial(x.coeffs, ZZ, "u")
            return x
        if isinstance(x, (int, Fraction)):
            return Polynomial((ZZ.coerce(x),), ZZ, "u")
        raise TypeError(f"cannot coerce {x!r} to Z[u]")

    def parse(self, text: str):
        from .parse import parse_expression
        return self.coerce(parse_expression(text, {"u": self.gen}, self))

    def fraction_field(self):
        return _qu()


class RationalFunctionField(Domain):
    """Q(u)."""

    name = "Qu"
    is_field = True
    is_symbolic = True

    def __init__(self):
        from .ratfunc import RationalFunction
        from flint import fmpz_poly
        self.zero = RationalFunction(0)
        self.one = RationalFunction(1)
        self.gen = RationalFunction._make(fmpz_poly([0, 1]), fmpz_poly([1]), canonical=True)

    def coerce(self, x):
        from .ratfunc import RationalFunction
        if isinstance(x, RationalFunction):
            return x
        return RationalFunction(x)

    def parse(self, text: str):
        from .parse import parse_expression
        return self.coerce(parse_expression(text, {"u": self.gen}, self))


ZZ = IntegerRing()
QQ = RationalField()
_ZU = None
_QU = None
_FP = {}


def __getattr__(name):
    # ZU / QU are built lazily to avoid importing poly/ratfunc at import time
    if name == "ZU":
        return _zu()
    if name == "QU":
        return _qu()
    raise AttributeError(name)


def _zu():
    global _ZU
    if _ZU is None:
        _ZU = IntPolyRing()
    return _ZU


def _qu():
    global _QU
    if _QU is None:
        _QU = RationalFunctionField()
    return _QU


def GF(p: int) -> PrimeField:
    if p not in _FP:
        _FP[p] = PrimeField(p)
    return _FP[p]


def parse_domain(text: str) -> Domain:
    """Parse ``Q``, ``Fp:<p>``, ``Zu``, ``Qu`` (and ``Z``)."""
    t = text.strip()
    if t == "Q":
        return QQ
    if t == "Z":
        return ZZ
    if t == "Zu":
        return _zu()
    if t == "Qu":
        return _qu()
    if t.startswith("Fp:"):
        try:
            p = int(t[3:])
        except ValueError:
            raise UndefinedInputError(f"bad prime in domain {text!r}") from None
        return GF(p)
    raise UndefinedInputError(f"unknown domain {text!r}; expected Q, Fp:<p>, Zu or Qu")
