"""Rational functions in ``u`` over the rationals, plus the doubly-monic test.

Elements are kept in a canonical form ``e/d`` with ``e, d`` integer
polynomials, ``gcd(e, d) == 1`` in Z[u] (so their contents are coprime as
well) and ``lc(d) > 0``.  That form is unique, which makes equality a
coefficient comparison.  Arithmetic runs on FLINT integer polynomials.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from flint import fmpz_poly

from .errors import UndefinedInputError

_ONE = fmpz_poly([1])


def _to_flint(x):
    """Return ``(integer poly, positive int scale)`` with ``x == poly / scale``."""
    from .poly import Polynomial

    if isinstance(x, fmpz_poly):
        return x, 1
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return fmpz_poly([x]), 1
    if isinstance(x, Fraction):
        return fmpz_poly([x.numerator]), x.denominator
    if isinstance(x, Polynomial):
        cs = [Fraction(c) for c in x.coeffs]
        scale = lcm(*(c.denominator for c in cs)) if cs else 1
        return fmpz_poly([int(c * scale) for c in cs]), scale
    raise TypeError(f"cannot convert {type(x).__name__} to a rational function")


def _canonical(num: fmpz_poly, den: fmpz_poly):
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return fmpz_poly([]), _ONE
    g = num.gcd(den)
    if not g.is_one():
        num, rem = divmod(num, g)
        den, rem2 = divmod(den, g)
        assert rem.is_zero() and rem2.is_zero()
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return num, den


class RationalFunction:
    __slots__ = ("_num", "_den")

    def __init__(self, num=0, den=1):
        if isinstance(num, RationalFunction) and isinstance(den, RationalFunction):
            q = num / den
            self._num, self._den = q._num, q._den
            return
        if isinstance(num, RationalFunction):
            q = num / RationalFunction(den)
            self._num, self._den = q._num, q._den
            return
        n, sn = _to_flint(num)
        d, sd = _to_flint(den)
        self._num, self._den = _canonical(n * sd, d * sn)

    @classmethod
    def _make(cls, num: fmpz_poly, den: fmpz_poly, canonical: bool = False):
        r = object.__new__(cls)
        if canonical:
            r._num, r._den = num, den
        else:
            r._num, r._den = _canonical(num, den)
        return r

    @classmethod
    def _from_lists(cls, num, den):
        return cls._make(fmpz_poly(list(num)), fmpz_poly(list(den)), canonical=True)

    def __reduce__(self):
        return (RationalFunction._from_lists,
                ([int(c) for c in self._num.coeffs()], [int(c) for c in self._den.coeffs()]))

    # -- views -------------------------------------------------------------
    @property
    def numerator(self):
        from .domains import ZZ
        from .poly import Polynomial
        return Polynomial([int(c) for c in self._num.coeffs()], ZZ, "u")

    @property
    def denominator(self):
        from .domains import ZZ
        from .poly import Polynomial
        return Polynomial([int(c) for c in self._den.coeffs()], ZZ, "u")

    @property
    def degree(self):
        """``deg(numerator) - deg(denominator)``; ``-inf`` for zero."""
        if self._num.is_zero():
            return float("-inf")
        return self._num.degree() - self._den.degree()

    def is_polynomial(self) -> bool:
        return self._den.degree() == 0 and self._den.leading_coefficient() == 1

    def __call__(self, x):
        """Evaluate at a rational (or integer) point."""
        x = Fraction(x)
        num = _horner([int(c) for c in self._num.coeffs()], x)
        den = _horner([int(c) for c in self._den.coeffs()], x)
        if den == 0:
            raise ZeroDivisionError(f"pole at u = {x}")
        return num / den

    # -- arithmetic --------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        try:
            return RationalFunction(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._den == o._den:
            return RationalFunction._make(self._num + o._num, self._den)
        return RationalFunction._make(self._num * o._den + o._num * self._den, self._den * o._den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._make(-self._num, self._den, canonical=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction._make(self._num * o._num, self._den * o._den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self._num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction._make(self._den, self._num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction._make(self._num ** k, self._den ** k, canonical=True)

    def __bool__(self):
        return not self._num.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __hash__(self):
        if self.is_polynomial() and self._num.degree() <= 0:
            return hash(int(self._num.coeffs()[0]) if not self._num.is_zero() else 0)
        return hash((tuple(int(c) for c in self._num.coeffs()),
                     tuple(int(c) for c in self._den.coeffs())))

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"

    def __str__(self):
        num = str(self.numerator)
        if self.is_polynomial():
            return num
        den = str(self.denominator)
        if " " in num:
            num = f"({num})"
        if " " in den or "*" in den or den.startswith("-"):
            den = f"({den})"
        return f"{num}/{den}"


def _horner(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def ratfunc_normalize(num, den) -> RationalFunction:
    """Cancel common factors of ``num/den`` into the canonical form."""
    return RationalFunction(num, den)


def _unit_ends(coeffs) -> bool:
    nz = [c for c in coeffs if c != 0]
    return abs(nz[0]) == 1 and abs(nz[-1]) == 1


def is_monic(p) -> bool:
    """Leading coefficient is +1 or -1 (integer polynomials or rational functions)."""
    if isinstance(p, RationalFunction):
        nums = [int(c) for c in p._num.coeffs()]
        dens = [int(c) for c in p._den.coeffs()]
        return bool(nums) and abs(nums[-1]) == 1 and abs(dens[-1]) == 1
    cs = [int(c) for c in p.coeffs]
    return bool(cs) and abs(cs[-1]) == 1


def is_doubly_monic(r) -> bool:
    """True iff the reduced form ``e/d`` has leading and lowest nonzero
    coefficients equal to +1 or -1 in both ``e`` and ``d``."""
    if not isinstance(r, RationalFunction):
        r = RationalFunction(r)
    if not r:
        raise UndefinedInputError("doubly-monic test of the zero function")
    return (_unit_ends([int(c) for c in r._num.coeffs()])
            and _unit_ends([int(c) for c in r._den.coeffs()]))
