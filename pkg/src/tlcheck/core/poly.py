"""Dense univariate polynomials over an exact coefficient domain.

Coefficients are stored ascending with no trailing zeros, so the zero
polynomial has an empty coefficient tuple and degree ``-inf``.  The same
class serves for polynomials in ``t`` (partial quotients, convergents) and
in ``u`` (Hankel determinants over the integers); the variable name only
matters for rendering and for telling a scalar apart from a polynomial
when coefficient domains nest.
"""
from __future__ import annotations

from itertools import zip_longest

from .domains import ZZ
from .errors import DomainError

NEG_INF = float("-inf")


class Polynomial:
    __slots__ = ("coeffs", "domain", "var")

    def __init__(self, coeffs=(), domain=None, var: str = "t"):
        domain = ZZ if domain is None else domain
        cs = [domain.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.domain = domain
        self.var = var

    @classmethod
    def _raw(cls, coeffs, domain, var):
        # coeffs already in the domain; only trailing zeros are stripped
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        p.domain = domain
        p.var = var
        return p

    @classmethod
    def monomial(cls, k: int, coeff=1, domain=None, var: str = "t") -> "Polynomial":
        domain = ZZ if domain is None else domain
        return cls._raw([domain.zero] * k + [domain.coerce(coeff)], domain, var)

    @classmethod
    def gen(cls, domain=None, var: str = "t") -> "Polynomial":
        return cls.monomial(1, 1, domain, var)

    def __reduce__(self):
        return (Polynomial._raw, (self.coeffs, self.domain, self.var))

    # -- structure ---------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        """Leading coefficient (zero for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else self.domain.zero

    @property
    def trailing(self):
        """Lowest-order nonzero coefficient."""
        for c in self.coeffs:
            if c:
                return c
        return self.domain.zero

    @property
    def valuation(self):
        """Exponent of the lowest-order nonzero term."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return NEG_INF

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.domain.zero

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    # -- arithmetic --------------------------------------------------------
    def _is_poly(self, other) -> bool:
        return isinstance(other, Polynomial) and other.var == self.var

    def _check(self, other):
        if other.domain != self.domain:
            raise DomainError(f"mismatched domains {self.domain} and {other.domain}")

    def _scalar(self, c):
        try:
            return self.domain.coerce(c)
        except (TypeError, ValueError, DomainError):
            return None

    def _nested(self, other):
        # other is a polynomial in another variable that may own self as a scalar
        return isinstance(other, Polynomial) and other._scalar(self) is not None

    def __add__(self, other):
        if not self._is_poly(other):
            c = self._scalar(other)
            if c is None:
                return other.__add__(self) if self._nested(other) else NotImplemented
            other = Polynomial._raw([c], self.domain, self.var)
        self._check(other)
        zero = self.domain.zero
        return Polynomial._raw(
            [a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=zero)],
            self.domain, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw([-c for c in self.coeffs], self.domain, self.var)

    def __sub__(self, other):
        if not self._is_poly(other):
            c = self._scalar(other)
            if c is None:
                return (-other).__add__(self) if self._nested(other) else NotImplemented
            other = Polynomial._raw([c], self.domain, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not self._is_poly(other):
            c = self._scalar(other)
            if c is None:
                return other.__mul__(self) if self._nested(other) else NotImplemented
            return Polynomial._raw([a * c for a in self.coeffs], self.domain, self.var)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial._raw((), self.domain, self.var)
        zero = self.domain.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Polynomial._raw(out, self.domain, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial._raw([self.domain.one], self.domain, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k: int) -> "Polynomial":
        """Multiply by ``var**k`` (k >= 0)."""
        if not self.coeffs:
            return self
        return Polynomial._raw([self.domain.zero] * k + list(self.coeffs), self.domain, self.var)

    def compose_power(self, d: int) -> "Polynomial":
        """Substitute ``var -> var**d``."""
        if d < 1:
            raise ValueError("compose_power needs d >= 1")
        zero = self.domain.zero
        out = [zero] * (d * (len(self.coeffs) - 1) + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[d * i] = c
        return Polynomial._raw(out, self.domain, self.var)

    def __call__(self, x):
        acc = self.domain.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map_coeffs(self, f, domain, var=None) -> "Polynomial":
        return Polynomial._raw([f(c) for c in self.coeffs], domain, var or self.var)

    def divrem(self, other: "Polynomial"):
        """Euclidean division over a field: ``self == q*other + r``."""
        if not self.domain.is_field:
            raise DomainError(f"divrem needs field coefficients, not {self.domain}")
        if not self._is_poly(other):
            other = Polynomial._raw([self.domain.coerce(other)], self.domain, self.var)
        self._check(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv = 1 / other.coeffs[-1]
        zero = self.domain.zero
        q = [zero] * max(0, len(r) - db)
        for i in range(len(r) - 1 - db, -1, -1):
            c = r[i + db]
            if not c:
                continue
            c = c * inv
            q[i] = c
            for j, b in enumerate(other.coeffs):
                r[i + j] = r[i + j] - c * b
        return (Polynomial._raw(q, self.domain, self.var),
                Polynomial._raw(r[:db] if db > 0 else [], self.domain, self.var))

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self * (1 / self.coeffs[-1])

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd over a field (zero only if both inputs are zero)."""
        if not self.domain.is_field:
            raise DomainError(f"gcd needs field coefficients, not {self.domain}")
        a, b = self, other
        while b:
            a, b = b, a.divrem(b)[1]
        return a.monic()

    # -- comparison and display -------------------------------------------
    def __eq__(self, other):
        if self._is_poly(other):
            return self.coeffs == other.coeffs
        if isinstance(other, Polynomial):
            return NotImplemented
        c = self._scalar(other)
        if c is None:
            return NotImplemented
        return self.coeffs == ((c,) if c else ())

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0]) if self.coeffs else hash(0)
        return hash((self.var, self.coeffs))

    def __repr__(self):
        return f"Polynomial({str(self)!r}, {self.domain})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            s = self.domain.render(c)
            neg = s.startswith("-") and _atomic(s[1:])
            mag = s[1:] if neg else s
            if not _atomic(mag):
                mag = f"({mag})"
            if e == 0:
                term = mag
            else:
                mono = self.var if e == 1 else f"{self.var}^{e}"
                term = mono if mag == "1" else f"{mag}*{mono}"
            parts.append(("-" if neg else "+", term))
        sign, term = parts[0]
        out = [("-" if sign == "-" else "") + term]
        for sign, term in parts[1:]:
            out.append(f" {sign} {term}")
        return "".join(out)


def _atomic(s: str) -> bool:
    return " " not in s and not s.startswith("-")
