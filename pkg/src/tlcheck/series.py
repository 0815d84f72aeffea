"""Truncated formal Laurent series in ``t**-1`` and Mahler-type generators.

A series is stored as ``a_k`` (the coefficient of ``t**-k``) for
``start <= k <= order``.  Coefficients with ``k < start`` are zero and
coefficients with ``k > order`` are *unknown*; reading one raises
:class:`PrecisionError`.  ``order=None`` marks an exact series whose
coefficients beyond the stored ones are zero (polynomials, finite sums).
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import Polynomial, PrecisionError, UndefinedInputError, tau2
from .core.domains import Domain


@dataclass(frozen=True)
class LaurentSeries:
    domain: Domain
    start: int
    coeffs: tuple
    order: Optional[int]

    @classmethod
    def from_coefficients(cls, domain, coeffs, start: int = 1, order="auto") -> "LaurentSeries":
        """Build from ``a_start, a_start+1, ...``; ``order`` defaults to the
        last supplied index (pass ``None`` for an exact finite series)."""
        cs = [domain.coerce(c) for c in coeffs]
        if order == "auto":
            order = start + len(cs) - 1
        lead = 0
        while lead < len(cs) and not cs[lead]:
            lead += 1
        if lead == len(cs):
            return cls(domain, start + len(cs) if order is None else (order + 1), (), order)
        cs = cs[lead:]
        if order is None:
            while cs and not cs[-1]:
                cs.pop()
        return cls(domain, start + lead, tuple(cs), order)

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "LaurentSeries":
        """Exact series of a polynomial in ``t``."""
        if not p:
            return cls(p.domain, 1, (), None)
        return cls.from_coefficients(p.domain, reversed(p.coeffs), start=-p.degree, order=None)

    # -- access ------------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.order is None

    @property
    def known_until(self):
        return float("inf") if self.order is None else self.order

    def __getitem__(self, k: int):
        if self.order is not None and k > self.order:
            raise PrecisionError(f"coefficient a_{k} unknown (truncation order {self.order})")
        i = k - self.start
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.domain.zero

    def coefficients(self, lo: int, hi: int) -> list:
        return [self[k] for k in range(lo, hi + 1)]

    @property
    def lead_degree(self) -> int:
        """``h`` with ``alpha = a_{-h} t^h + ...``."""
        if not self.coeffs:
            raise UndefinedInputError("valuation of a series that vanishes on its known range")
        return -self.start

    @property
    def last_index(self) -> int:
        """Largest index carrying a stored coefficient or known to be zero."""
        if self.order is not None:
            return self.order
        return self.start + len(self.coeffs) - 1

    def polynomial_part(self) -> Polynomial:
        """``sum_{k <= 0} a_k t^{-k}``."""
        if self.start > 0:
            return Polynomial((), self.domain, "t")
        return Polynomial._raw([self[-e] for e in range(0, -self.start + 1)], self.domain, "t")

    def promote(self) -> "LaurentSeries":
        """Same series over the fraction field of the coefficient domain."""
        field = self.domain.fraction_field()
        if field == self.domain:
            return self
        return LaurentSeries(field, self.start, tuple(field.coerce(c) for c in self.coeffs), self.order)

    def with_coefficient(self, k: int, value) -> "LaurentSeries":
        """Copy with ``a_k`` replaced (used for fault injection)."""
        lo = min(self.start, k)
        hi = max(self.last_index if self.coeffs else k, k)
        cs = [self[i] if i != k else self.domain.coerce(value) for i in range(lo, hi + 1)]
        return LaurentSeries.from_coefficients(self.domain, cs, start=lo,
                                               order=self.order)

    def truncate(self, order: int) -> "LaurentSeries":
        if self.order is not None and order > self.order:
            raise PrecisionError(f"cannot extend truncation {self.order} to {order}")
        n = max(0, order - self.start + 1)
        return LaurentSeries.from_coefficients(self.domain, self.coeffs[:n] + (self.domain.zero,) * (n - len(self.coeffs[:n])),
                                               start=self.start, order=order)

    # -- export ------------------------------------------------------------
    def rows(self, lo: Optional[int] = None, hi: Optional[int] = None):
        lo = self.start if lo is None else lo
        hi = self.last_index if hi is None else hi
        return [(k, self.domain.render(self[k])) for k in range(lo, hi + 1)]

    def to_csv(self, lo=None, hi=None) -> str:
        lines = ["k,coefficient"]
        lines += [f"{k},{c}" for k, c in self.rows(lo, hi)]
        return "\n".join(lines) + "\n"

    def to_json(self, lo=None, hi=None) -> list:
        return [{"k": k, "coefficient": c} for k, c in self.rows(lo, hi)]

    def table_hash(self, lo=None, hi=None) -> str:
        blob = json.dumps([self.domain.name, self.rows(lo, hi)], separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


# -- measures -------------------------------------------------------------
@dataclass(frozen=True)
class Measure:
    valuation: int
    abs_value: Fraction
    norm: Fraction
    truncation_limited: bool


def measure(alpha: LaurentSeries) -> Measure:
    """Valuation, absolute value ``2**nu`` and distance ``||alpha||`` to the
    nearest polynomial.  When the fractional part vanishes on the whole
    known range the norm is reported as 0 and flagged truncation-limited
    (unless the series is exact)."""
    nu = alpha.lead_degree
    k0 = None
    for k in range(max(1, alpha.start), alpha.last_index + 1):
        if alpha[k]:
            k0 = k
            break
    if k0 is None:
        return Measure(nu, Fraction(2) ** nu, Fraction(0), not alpha.is_exact)
    return Measure(nu, Fraction(2) ** nu, Fraction(1, 2 ** k0), False)


# -- transforms -----------------------------------------------------------
def shift(alpha: LaurentSeries, j: int) -> LaurentSeries:
    """Multiply by ``t**j``."""
    order = None if alpha.order is None else alpha.order - j
    return LaurentSeries(alpha.domain, alpha.start - j, alpha.coeffs, order) if alpha.coeffs \
        else LaurentSeries(alpha.domain, alpha.start - j, (), order)


def substitute(alpha: LaurentSeries, d: int) -> LaurentSeries:
    """Substitute ``t -> t**d``; coefficients are known up to ``order*d``."""
    if d < 1:
        raise ValueError("substitution power must be >= 1")
    zero = alpha.domain.zero
    cs = []
    for i, c in enumerate(alpha.coeffs):
        if i:
            cs.extend([zero] * (d - 1))
        cs.append(c)
    order = None if alpha.order is None else alpha.order * d
    return LaurentSeries(alpha.domain, alpha.start * d, tuple(cs), order)


def multiply(alpha: LaurentSeries, p: Polynomial) -> LaurentSeries:
    """Multiply by a polynomial in ``t``; known range shrinks by ``deg p``."""
    if not p:
        return LaurentSeries(alpha.domain, 1, (), alpha.order)
    D = p.degree
    lo = alpha.start - D
    hi = alpha.last_index if alpha.order is not None else alpha.last_index
    order = None if alpha.order is None else alpha.order - D
    zero = alpha.domain.zero
    out = []
    for k in range(lo, hi + 1):
        acc = zero
        for i, c in enumerate(p.coeffs):
            if c:
                idx = k + i
                if idx >= alpha.start and (alpha.order is None or idx <= alpha.order):
                    acc = acc + c * alpha[idx]
        out.append(acc)
    if order is not None:
        out = out[: max(0, order - lo + 1)]
    return LaurentSeries.from_coefficients(alpha.domain, out, start=lo, order=order)


def series_equal_upto(a: LaurentSeries, b: LaurentSeries, order: int) -> bool:
    lo = min(a.start, b.start)
    return all(a[k] == b[k] for k in range(lo, order + 1))


# -- Mahler generators ----------------------------------------------------
@dataclass(frozen=True)
class MahlerSpec:
    """Data of the functional equation ``g(t) = P(t) g(t**d)``.

    ``u`` is only set for the linear family ``P = t + u``.
    """
    P: Polynomial
    d: int
    u: object = None

    def __post_init__(self):
        if self.d < 2:
            raise UndefinedInputError(f"d must be >= 2, got {self.d}")
        if not self.P or self.P.degree < 1:
            raise UndefinedInputError("P must have degree >= 1")
        if self.P.lc != 1:
            raise UndefinedInputError("P must be monic for the infinite product to converge")

    @classmethod
    def linear(cls, domain, u=None, d: int = 2) -> "MahlerSpec":
        """``P = t + u``; symbolic domains default ``u`` to their generator."""
        if u is None:
            if not domain.is_symbolic:
                raise UndefinedInputError("numeric domains need an explicit u")
            u = domain.gen
        u = domain.coerce(u)
        t = Polynomial.gen(domain, "t")
        return cls(t + u, d, u)

    @property
    def domain(self):
        return self.P.domain

    @property
    def is_thue_morse(self) -> bool:
        """True for the ``d = 2``, ``P = t + u`` family."""
        return self.d == 2 and self.P.degree == 1 and self.u is not None

    def key(self) -> str:
        return f"P={self.P};d={self.d};domain={self.domain.name}"


def expand_product(spec: MahlerSpec, N: int) -> LaurentSeries:
    """``a_1..a_N`` of ``t**-1 * prod_i P*(t**-(d**i))`` with ``P*`` the
    reciprocal polynomial of ``P``."""
    if N < 1:
        raise UndefinedInputError("N must be >= 1")
    domain = spec.domain
    D = spec.P.degree
    # P*(x) = x^D P(1/x): coefficient of x^j is the coefficient of t^(D-j) in P
    rec = [(j, spec.P.coeff(D - j)) for j in range(1, D + 1) if spec.P.coeff(D - j)]
    G = [domain.zero] * N          # G[m] = coefficient of x^m, x = 1/t
    G[0] = domain.one
    step = 1
    while step <= N - 1:
        # multiply by P*(x^step); descending m so G[m - j*step] is still old
        for m in range(N - 1, 0, -1):
            acc = G[m]
            for j, c in rec:
                idx = m - j * step
                if idx < 0:
                    break
                if G[idx]:
                    acc = acc + c * G[idx]
            G[m] = acc
        step *= spec.d
    return LaurentSeries.from_coefficients(domain, G, start=1, order=N)


def thue_morse_series(domain, u=None, N: int = 64) -> LaurentSeries:
    """``g_u`` to order ``N``."""
    return expand_product(MahlerSpec.linear(domain, u), N)


def coeff_closed_form(u, n: int, domain=None):
    """``a_n = u**tau2(n-1)`` for ``g_u`` (``0**0 == 1``)."""
    if n < 1:
        raise UndefinedInputError("n must be >= 1")
    k = tau2(n - 1)
    if domain is not None:
        return domain.power(domain.coerce(u), k)
    return u ** k if k else (u ** 0)


def functional_equation_check(spec: MahlerSpec, N: int, series: Optional[LaurentSeries] = None) -> bool:
    """Check ``g(t) = t**(d-1-deg P) * P(t) * g(t**d)`` coefficient-wise to
    order ``N``; this is exactly ``g = P g(t**d)`` when ``deg P = d - 1``."""
    if N < spec.d:
        raise UndefinedInputError("N must be >= d")
    g = series if series is not None else expand_product(spec, N)
    rhs = shift(multiply(substitute(g, spec.d), spec.P), spec.d - 1 - spec.P.degree)
    top = min(N, g.known_until, rhs.known_until)
    return series_equal_upto(g, rhs, int(top))


def mirror_identity_check(u, D: int, domain) -> bool:
    """``a_n * a_(2^D + 1 - n) == u^D`` for ``1 <= n <= 2^D``."""
    u = domain.coerce(u)
    if not u:
        raise UndefinedInputError("mirror identity needs u != 0")
    if D < 1:
        raise UndefinedInputError("D must be >= 1")
    M = 2 ** D
    g = expand_product(MahlerSpec.linear(domain, u), M)
    target = u ** D
    return all(g[n] * g[M + 1 - n] == target for n in range(1, M + 1))
