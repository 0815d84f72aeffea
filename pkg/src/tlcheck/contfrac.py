"""Continued fractions of Laurent series over a field.

Expansions are normalised as ``alpha = b0 + K(beta_i / bstar_i)`` with
every ``bstar_i`` monic.  The expansion never inverts a series: it runs
the remainder recurrence

    e_k = bstar_k * e_(k-1) + beta_k * e_(k-2),   e_k = q_k * alpha - p_k,

starting from ``e_(-1) = -1`` and ``e_0 = alpha - b0``.  The valuation of
``e_k`` is ``-deg q_(k+1)``, so term ``k`` is *certified* once the first
nonzero coefficient of ``e_k`` is found inside the known range, i.e. when
``s_k + s_(k+1) <= N``.  Terms past that point are never emitted.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from flint import fmpq, fmpq_poly

from .core import QQ, DomainError, Polynomial, PrecisionError, UndefinedInputError, tau2
from .series import LaurentSeries

INF = float("inf")


@dataclass(frozen=True)
class CFTerm:
    beta: object
    bstar: Polynomial

    @property
    def degree(self) -> int:
        return self.bstar.degree

    @property
    def alpha_lin(self):
        """``a`` when ``bstar = t + a``, else None."""
        return self.bstar.coeff(0) if self.bstar.degree == 1 else None


@dataclass(frozen=True)
class ContinuedFraction:
    domain: object
    b0: Polynomial
    terms: tuple
    terminating: bool = False
    stopped_by: str = "precision"   # "precision" | "max_terms" | "terminating"
    truncation_order: Optional[int] = None

    @property
    def certified_count(self) -> int:
        return len(self.terms)

    @property
    def degrees(self) -> list:
        """``[s_0, s_1, ..., s_certified]`` with ``s_k = deg q_k``."""
        s = [0]
        for term in self.terms:
            s.append(s[-1] + term.degree)
        return s

    @property
    def betas(self) -> list:
        return [term.beta for term in self.terms]

    @property
    def alphas(self) -> list:
        return [term.alpha_lin for term in self.terms]

    def max_quotient_degree(self) -> int:
        return max((term.degree for term in self.terms), default=0)

    def to_json(self) -> dict:
        render = self.domain.render
        return {
            "b0": str(self.b0),
            "terms": [
                {"beta": render(term.beta), "bstar": str(term.bstar),
                 "alphaLin": None if term.alpha_lin is None else render(term.alpha_lin)}
                for term in self.terms
            ],
            "certifiedCount": self.certified_count,
            "terminating": self.terminating,
        }


@dataclass(frozen=True)
class Convergent:
    p: Polynomial
    q: Polynomial
    coprime: bool

    @property
    def s(self) -> int:
        return self.q.degree


class _Remainder:
    """Coefficients of ``t**-j`` for ``0 <= j <= known``."""

    __slots__ = ("vals", "known")

    def __init__(self, vals, known):
        self.vals = vals
        self.known = known

    def __getitem__(self, j):
        if j > self.known:
            raise PrecisionError(f"remainder coefficient {j} beyond known range {self.known}")
        return self.vals[j] if j < len(self.vals) else None


def _expand(alpha: LaurentSeries, max_terms: Optional[int]) -> ContinuedFraction:
    dom = alpha.domain
    zero = dom.zero
    exact = alpha.is_exact
    # exact series: every remainder is supported on j <= last_index
    N = alpha.last_index if exact else alpha.order
    b0 = alpha.polynomial_part()

    def get(rem, j):
        v = rem[j]
        return zero if v is None else v

    e_prev = _Remainder([-dom.one], INF)
    e_cur = _Remainder([zero] + [alpha[j] for j in range(1, max(N, 0) + 1)],
                       INF if exact else N)
    s_prev = 0
    s_cur = None
    for j in range(1, max(N, 0) + 1):
        if e_cur.vals[j]:
            s_cur = j
            break
    if s_cur is None:
        # alpha equals its polynomial part on the known range
        stopped = "terminating" if exact or N >= 1 else "precision"
        return ContinuedFraction(dom, b0, (), terminating=stopped == "terminating",
                                 stopped_by=stopped, truncation_order=alpha.order)

    terms = []
    terminating = False
    stopped_by = "precision"
    while True:
        if max_terms is not None and len(terms) >= max_terms:
            stopped_by = "max_terms"
            break
        D = s_cur - s_prev
        known_next = INF if exact else N - s_cur
        # leading D+1 coefficients of both remainders must be known
        if s_cur + D > e_cur.known or s_cur > e_prev.known:
            break
        x0 = get(e_prev, s_prev)
        y = [get(e_cur, s_cur + i) for i in range(D + 1)]
        beta = -y[0] / x0
        # polynomial part of -beta * e_prev / e_cur, highest power first
        c = []
        inv_y0 = 1 / y[0]
        for i in range(D + 1):
            acc = get(e_prev, s_prev + i)
            for jj in range(1, i + 1):
                acc = acc - y[jj] * c[i - jj]
            c.append(acc * inv_y0)
        bstar = Polynomial._raw([-beta * c[D - i] for i in range(D + 1)], dom, "t")
        bstar_coeffs = [(i, b) for i, b in enumerate(bstar.coeffs) if b]
        hi = N if exact else N - s_cur
        if hi < s_cur + 1:
            break
        new_vals = [zero] * (hi + 1)
        nxt = None
        for j in range(s_cur + 1, hi + 1):
            acc = beta * get(e_prev, j) if j <= e_prev.known else None
            if acc is None:
                raise PrecisionError("inconsistent remainder ranges")
            for i, b in bstar_coeffs:
                acc = acc + b * get(e_cur, j + i)
            new_vals[j] = acc
            if nxt is None and acc:
                nxt = j
        terms.append(CFTerm(beta, bstar))
        if nxt is None:
            terminating = True
            stopped_by = "terminating"
            break
        e_prev, e_cur = e_cur, _Remainder(new_vals, known_next)
        s_prev, s_cur = s_cur, nxt
    return ContinuedFraction(dom, b0, tuple(terms), terminating, stopped_by, alpha.order)


def cf_expand(alpha: LaurentSeries, max_terms: Optional[int] = None) -> ContinuedFraction:
    """Certified continued fraction of ``alpha`` (field coefficients only).

    With ``max_terms`` set, only a growing prefix of the coefficients is
    used: terms certified from a prefix are terms of ``alpha`` itself, so
    the result equals the full-precision expansion cut to ``max_terms``.
    """
    if not alpha.domain.is_field:
        raise DomainError(f"continued fractions need a field, not {alpha.domain}; use promote()")
    if max_terms is None or alpha.is_exact:
        return _expand(alpha, max_terms)
    window = 2 * max_terms + 2 - min(alpha.start, 0)
    while True:
        top = min(alpha.order, window)
        cf = _expand(alpha.truncate(top), max_terms)
        if top == alpha.order or cf.stopped_by == "max_terms":
            return ContinuedFraction(cf.domain, cf.b0, cf.terms, cf.terminating,
                                     cf.stopped_by, alpha.order)
        window *= 2


def convergents(cf: ContinuedFraction, k: int) -> Convergent:
    """``p_k / q_k`` from the three-term recurrence."""
    if k < 0 or k > cf.certified_count:
        raise PrecisionError(f"convergent {k} beyond certified prefix {cf.certified_count}")
    return convergent_list(cf)[k]


def convergent_list(cf: ContinuedFraction) -> list:
    dom = cf.domain
    one = Polynomial._raw([dom.one], dom, "t")
    zero = Polynomial._raw((), dom, "t")
    p_prev, q_prev = one, zero
    p, q = cf.b0, one
    out = [Convergent(p, q, True)]
    for term in cf.terms:
        p, p_prev = term.bstar * p + p_prev * term.beta, p
        q, q_prev = term.bstar * q + q_prev * term.beta, q
        out.append(Convergent(p, q, p.gcd(q) == 1))
    return out


def _qpoly(values):
    return fmpq_poly([fmpq(x.numerator, x.denominator) for x in values])


def difference_valuation(alpha: LaurentSeries, c: Convergent):
    """``nu(q*alpha - p)`` (``nu`` = degree in ``t``); None when it vanishes
    on the whole known range.  Coefficients are produced one at a time."""
    q = c.q.coeffs
    D = len(q) - 1
    lo = alpha.start - D
    hi = alpha.last_index - (0 if alpha.is_exact else D)
    if alpha.domain == QQ and alpha.coeffs:
        # coefficient of t^(-k) in q*alpha is sum_j q_j a_(k+j); with
        # reversed q these sums are the coefficients of one product
        prod = _qpoly(reversed(q)) * _qpoly(alpha.coeffs)
        coeff = lambda k: Fraction(int(prod[k - lo].p), int(prod[k - lo].q))
    else:
        def coeff(k):
            return sum((qj * alpha[k + j] for j, qj in enumerate(q)
                        if qj and k + j >= alpha.start), alpha.domain.zero)
    for k in range(lo, hi + 1):
        v = coeff(k)
        if k <= 0:
            v = v - c.p.coeff(-k)
        if v:
            return -k
    return None


def legendre_verify(alpha: LaurentSeries, c: Convergent, next_degree: Optional[int]) -> bool:
    """Check ``nu(alpha - p/q) == -2 deg q - next_degree``.

    ``next_degree=None`` means the expansion terminated at ``c``; then the
    difference must vanish.  Raises PrecisionError when the truncation
    order cannot resolve the valuation.
    """
    s = c.s
    if next_degree is not None and not alpha.is_exact and 2 * s + next_degree > alpha.order:
        raise PrecisionError(f"need order {2 * s + next_degree}, series known to {alpha.order}")
    nu = difference_valuation(alpha, c)
    if next_degree is None:
        return nu is None
    return nu is not None and nu - s == -2 * s - next_degree


# -- recurrences for g_u --------------------------------------------------
@dataclass(frozen=True)
class RecurrenceResult:
    pairs: tuple                    # ((alpha_1, beta_1), (alpha_2, beta_2), ...)
    abort_index: Optional[int] = None
    stopped: Optional[str] = None   # why fewer than M pairs were produced

    @property
    def betas(self) -> list:
        return [b for _, b in self.pairs]

    @property
    def alphas(self) -> list:
        return [a for a, _ in self.pairs]


def _alt_alpha(u, i):
    return -u if i % 2 else u


def beta_recurrence(u, M: int, domain) -> RecurrenceResult:
    """``(alpha_i, beta_i)``, ``1 <= i <= M``, for the expansion of ``g_u``.

    alpha alternates ``-u, u``; ``beta_1 = 1``, ``beta_2 = u^2 - u``,
    ``beta_(2k+3) = -beta_(k+2) / beta_(2k+2)`` and
    ``beta_(2k+4) = alpha_(k+2) + u^2 - beta_(2k+3)``.  A vanishing beta
    stops the recurrence and is reported through ``abort_index``.
    """
    if M < 2:
        raise UndefinedInputError("M must be >= 2")
    field_ = domain.fraction_field()
    u = field_.coerce(u)
    if not u:
        raise UndefinedInputError("the recurrence needs u != 0")
    beta = {1: field_.one, 2: u * u - u}
    pairs = [(_alt_alpha(u, 1), beta[1])]
    for m in range(2, M + 1):
        if m > 2:
            if m % 2:
                beta[m] = -beta[(m + 1) // 2] / beta[m - 1]
            else:
                beta[m] = _alt_alpha(u, m // 2) + u * u - beta[m - 1]
        if not beta[m]:
            return RecurrenceResult(tuple(pairs), abort_index=m, stopped="zero beta")
        pairs.append((_alt_alpha(u, m), beta[m]))
    return RecurrenceResult(tuple(pairs))


def shifted_recurrence(u, n: int, cf_n: ContinuedFraction, M: int, domain) -> RecurrenceResult:
    """Coefficients of the expansion of ``t^(2n) g_u`` from that of ``t^n g_u``.

    ``beta_(2n,1) = u^tau2(2n)``, ``beta_(2n,2) = u^2 - u^(tau2(n+1)-tau2(n))``
    and for ``k >= 0``

        beta_(2n,2k+3) = -beta_(n,k+2) / beta_(2n,2k+2)
        beta_(2n,2k+4) = alpha_(n,k+2) + u^2 - beta_(2n,2k+3)

    with alpha alternating ``-u, u``.  A zero beta stops the recurrence at
    the index of the first nonlinear partial quotient.
    """
    if n < 0:
        raise UndefinedInputError("n must be >= 0")
    field_ = domain.fraction_field()
    u = field_.coerce(u)
    if not u:
        raise UndefinedInputError("the recurrence needs u != 0")
    beta = {1: field_.power(u, tau2(2 * n)),
            2: u * u - field_.power(u, tau2(n + 1) - tau2(n))}
    pairs = []
    for m in range(1, M + 1):
        if m > 2:
            k = (m - 3) // 2 if m % 2 else (m - 4) // 2
            idx = k + 2
            if idx > cf_n.certified_count:
                return RecurrenceResult(tuple(pairs), stopped=f"needs term {idx} of t^{n} g_u")
            src = cf_n.terms[idx - 1]
            if m % 2:
                beta[m] = -src.beta / beta[m - 1]
            else:
                if src.alpha_lin is None:
                    return RecurrenceResult(tuple(pairs), stopped=f"term {idx} of t^{n} g_u is not linear")
                beta[m] = src.alpha_lin + u * u - beta[m - 1]
        if not beta[m]:
            return RecurrenceResult(tuple(pairs), abort_index=m, stopped="zero beta")
        pairs.append((_alt_alpha(u, m), beta[m]))
    return RecurrenceResult(tuple(pairs))


def lift_convergent(c: Convergent, u) -> Convergent:
    """``((t + u) p(t^2), q(t^2))``, the doubling of a convergent of
    ``t^n g_u`` into a candidate convergent of ``t^(2n) g_u``."""
    dom = c.p.domain if c.p else c.q.domain
    t = Polynomial.gen(dom, "t")
    p = (t + dom.coerce(u)) * c.p.compose_power(2)
    q = c.q.compose_power(2)
    return Convergent(p, q, p.gcd(q) == 1)


def coeffs_from_hankel(det: Callable[[int, int], object], m: int, domain):
    """``(alpha_m, beta_m)`` for ``m >= 3`` from ``det(n, l) = det H(n, l)``
    (rows ``n = 1, 2``), valid when every partial quotient is linear."""
    if m < 3:
        raise UndefinedInputError("m must be >= 3")
    f = domain.fraction_field()

    def H(n, l):
        return f.coerce(det(n, l))

    d1 = {l: H(1, l) for l in (m - 3, m - 2, m - 1)}
    d2 = {l: H(2, l) for l in (m - 3, m - 2, m - 1)}
    for key, val in (("H(1,%d)" % (m - 1), d1[m - 1]), ("H(1,%d)" % (m - 2), d1[m - 2]),
                     ("H(2,%d)" % (m - 2), d2[m - 2])):
        if not val:
            raise ZeroDivisionError(f"{key} vanishes")
    alpha = -(d1[m - 2] * d2[m - 1] / d1[m - 1] + d1[m - 1] * d2[m - 3] / d1[m - 2]) / d2[m - 2]
    beta = -(d1[m - 3] * d1[m - 1]) / (d1[m - 2] * d1[m - 2])
    return alpha, beta
