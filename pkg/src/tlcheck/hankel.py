"""Hankel matrices of Laurent series and their exact determinants.

``H(n, l)`` is the ``(l+1) x (l+1)`` matrix ``(a_(n+i+j))`` and the twisted
matrix ``Ht(n, l)`` has entries ``a_(n+1+i+j) - u^2 a_(n+i+j)``.  The
determinant of the empty matrix (``l = -1``) is 1.

Determinants over Z[u] use fraction-free (Bareiss) elimination on FLINT
integer polynomials; over Q rows are cleared to integers first; over F_p
plain Gaussian elimination is used.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import lcm
from typing import Optional

from flint import fmpz_poly

from .core import (CoverageError, DomainError, Polynomial, PrecisionError,
                   UndefinedInputError, is_doubly_monic, is_monic, sigma)
from .core.domains import ZZ, IntegerRing, IntPolyRing, PrimeField, RationalField
from .series import LaurentSeries


@dataclass(frozen=True)
class HankelMatrix:
    n: int
    l: int
    twisted: bool
    entries: tuple
    domain: object

    @property
    def size(self) -> int:
        return self.l + 1

    def transpose(self) -> "HankelMatrix":
        return HankelMatrix(self.n, self.l, self.twisted,
                            tuple(zip(*self.entries)) if self.entries else (), self.domain)


def build(series: LaurentSeries, n: int, l: int, twisted: bool = False, u=None) -> HankelMatrix:
    """Exact ``H(n, l)`` (or ``Ht(n, l)`` with ``twisted=True``)."""
    if n < 1:
        raise UndefinedInputError("n must be >= 1")
    if l < -1:
        raise UndefinedInputError("l must be >= -1")
    need = n + 2 * l + (1 if twisted else 0)
    if l >= 0 and not series.is_exact and need > series.order:
        raise PrecisionError(f"H{'t' if twisted else ''}({n},{l}) needs a_{need}, "
                             f"series known to {series.order}")
    dom = series.domain
    if twisted:
        if u is None:
            raise UndefinedInputError("twisted matrices need u")
        u2 = dom.coerce(u) * dom.coerce(u)
        vals = {k: series[k + 1] - u2 * series[k] for k in range(n, n + 2 * l + 1)}
    else:
        vals = {k: series[k] for k in range(n, n + 2 * l + 1)}
    rows = tuple(tuple(vals[n + i + j] for j in range(l + 1)) for i in range(l + 1))
    return HankelMatrix(n, l, twisted, rows, dom)


# -- determinants ---------------------------------------------------------
def _bareiss(rows, exact_div):
    """Fraction-free elimination; every division is exact."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return M[0][0] * 0
        pivot = M[k][k]
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            f = ri[k]
            for j in range(k + 1, n):
                x = ri[j] * pivot - f * rk[j]
                ri[j] = x if prev is None else exact_div(x, prev)
            ri[k] = 0 * f
        prev = pivot
    return M[n - 1][n - 1] if sign > 0 else -M[n - 1][n - 1]


def _div_int(a, b):
    q, r = divmod(a, b)
    assert r == 0, "inexact division in Bareiss elimination"
    return q


def _div_flint(a, b):
    q, r = divmod(a, b)
    assert r.is_zero(), "inexact division in Bareiss elimination"
    return q


def _det_zu(rows):
    flint_rows = [[fmpz_poly(list(e.coeffs)) for e in r] for r in rows]
    d = _bareiss(flint_rows, _div_flint)
    if isinstance(d, int):
        d = fmpz_poly([d])
    return [int(c) for c in d.coeffs()]


def _det_q(rows):
    scaled = []
    scale = Fraction(1)
    for r in rows:
        m = lcm(*(x.denominator for x in r)) if r else 1
        scaled.append([int(x * m) for x in r])
        scale *= m
    return Fraction(_bareiss(scaled, _div_int)) / scale


def _det_fp(rows, p):
    M = [[int(x) % p for x in r] for r in rows]
    n = len(M)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        det = det * M[k][k] % p
        inv = pow(M[k][k], -1, p)
        for i in range(k + 1, n):
            f = M[i][k] * inv % p
            if f:
                rk, ri = M[k], M[i]
                for j in range(k, n):
                    ri[j] = (ri[j] - f * rk[j]) % p
    return det % p


def _det_field(rows, domain):
    M = [list(r) for r in rows]
    n = len(M)
    det = domain.one
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k]), None)
        if piv is None:
            return domain.zero
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        det = det * M[k][k]
        inv = 1 / M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] * inv
            if f:
                rk, ri = M[k], M[i]
                for j in range(k, n):
                    ri[j] = ri[j] - f * rk[j]
    return det


def det_entries(rows, domain):
    """Exact determinant of a square matrix given as rows over ``domain``."""
    if not rows:
        return domain.one
    if isinstance(domain, IntPolyRing):
        return Polynomial(_det_zu(rows), ZZ, "u")
    if isinstance(domain, IntegerRing):
        return _bareiss(rows, _div_int)
    if isinstance(domain, RationalField):
        return _det_q(rows)
    if isinstance(domain, PrimeField):
        return domain.coerce(_det_fp(rows, domain.p))
    if domain.is_field:
        return _det_field(rows, domain)
    raise DomainError(f"no determinant routine for {domain}")


def det_exact(M: HankelMatrix):
    return det_entries(M.entries, M.domain)


def cofactor_det(rows, domain):
    """Leibniz-formula determinant; exponential, kept as a test oracle."""
    n = len(rows)
    total = domain.zero
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = domain.one
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total - term if inv % 2 else total + term
    return total


# -- block factorisation for g_u ------------------------------------------
def _front_parity(order, chosen) -> int:
    """Sign of the permutation listing ``chosen`` first (stable order)."""
    chosen = set(chosen)
    inversions = 0
    seen_rest = 0
    for x in order:
        if x in chosen:
            inversions += seen_rest
        else:
            seen_rest += 1
    return -1 if inversions % 2 else 1


def block_factors(n: int, l: int):
    """Factorisation of ``det H(n, l)`` for the Thue-Morse family.

    Returns ``(sign, u_power, (n1, l1), (n2, l2))`` meaning
    ``det H(n,l) = sign * u^u_power * det H(n1,l1) * det Ht(n2,l2)``.
    """
    if l < 0 or n < 1:
        raise UndefinedInputError("need n >= 1 and l >= 0")
    idx = list(range(l + 1))
    if n % 2 or l % 2:
        mod_rows = [r for r in idx if r % 2 == 1]
        nz_cols = [c for c in idx if c % 2 == n % 2]
        sign = _front_parity(idx, mod_rows) * _front_parity(idx, nz_cols)
        return sign, 0, (n // 2 + 1, l // 2), ((n + 1) // 2, (l - 1) // 2)
    mod_rows = [r for r in idx if r >= 2 and r % 2 == 0]
    odd_cols = [c for c in idx if c % 2 == 1]
    sign = _front_parity(idx, mod_rows) * _front_parity(idx, odd_cols)
    return sign, 1, (n // 2, l // 2), (n // 2 + 1, l // 2 - 1)


# -- grid -----------------------------------------------------------------
@dataclass(frozen=True)
class Cell:
    n: int
    l: int
    det: object
    degree: Optional[object]
    singular: bool
    doubly_monic: Optional[bool]
    monic: Optional[bool] = None


def _det_task(args):
    rows, domain = args
    return det_entries(rows, domain)


class HankelGrid:
    """Lazily computed map ``(n, l) -> det H(n, l)`` for one series.

    Coverage is ``n + 2l <= N`` with ``N`` the truncation order of the
    series.  ``u`` is needed for twisted matrices and the block strategy.
    """

    def __init__(self, series: LaurentSeries, u=None, N: Optional[int] = None, label: str = "",
                 lazy_block: bool = False):
        self.series = series
        self.lazy_block = lazy_block
        self.domain = series.domain
        self.u = None if u is None else self.domain.coerce(u)
        self.N = N if N is not None else series.order
        if self.N is None:
            raise UndefinedInputError("grid bound N required for exact series")
        self.label = label
        self._det = {}
        self._tdet = {}

    # coverage
    def covers(self, n: int, l: int, twisted: bool = False) -> bool:
        return n >= 1 and l >= -1 and n + 2 * l + (1 if twisted else 0) <= self.N

    def _check(self, n, l, twisted=False):
        if not self.covers(n, l, twisted):
            raise CoverageError(f"cell ({n},{l}) outside grid bound N={self.N}")

    def matrix(self, n: int, l: int, twisted: bool = False) -> HankelMatrix:
        return build(self.series, n, l, twisted, self.u)

    def det(self, n: int, l: int):
        if l == -1:
            return self.domain.one
        self._check(n, l)
        if self.lazy_block:
            return self.block_det(n, l)
        key = (n, l)
        if key not in self._det:
            self._det[key] = det_exact(self.matrix(n, l))
        return self._det[key]

    def twisted_det(self, n: int, l: int):
        if l == -1:
            return self.domain.one
        self._check(n, l, True)
        key = (n, l)
        if key not in self._tdet:
            self._tdet[key] = det_exact(self.matrix(n, l, True))
        return self._tdet[key]

    def cells_within(self, N: Optional[int] = None):
        N = self.N if N is None else N
        return [(n, l) for l in range((N - 1) // 2 + 1) for n in range(1, N - 2 * l + 1)]

    def cell(self, n: int, l: int) -> Cell:
        d = self.det(n, l)
        symbolic = self.domain.is_symbolic
        singular = not d
        return Cell(n, l, d,
                    d.degree if symbolic else None,
                    singular,
                    (not singular and is_doubly_monic(d)) if symbolic else None,
                    (not singular and is_monic(d)) if symbolic else None)

    def computed_cells(self):
        return sorted(self._det)

    # block strategy ----------------------------------------------------
    def block_det(self, n: int, l: int):
        """``det H(n, l)`` through the block factorisation (exact sign)."""
        if self.u is None:
            raise UndefinedInputError("block strategy needs u")
        self._check(n, l)
        if l == 0:
            return self.series[n]
        key = ("block", n, l)
        if key not in self._det:
            sign, upow, (n1, l1), (n2, l2) = block_factors(n, l)
            val = self.block_det(n1, l1) * self.twisted_det(n2, l2)
            if upow:
                val = val * self.u
            self._det[key] = val if sign > 0 else -val
        return self._det[key]

    def check_thue_morse(self) -> bool:
        """``a_(2m) = u a_(2m-1)`` and ``a_(2m+1) = a_(m+1)`` on the coverage."""
        s, u = self.series, self.u
        if u is None:
            return False
        return all(s[2 * m] == u * s[2 * m - 1] for m in range(1, self.N // 2 + 1)) and \
            all(s[2 * m + 1] == s[m + 1] for m in range(1, (self.N - 1) // 2 + 1))

    # export ------------------------------------------------------------
    def export_rows(self, N: Optional[int] = None):
        rows = []
        for n, l in sorted(self.cells_within(N), key=lambda c: (c[0], c[1])):
            c = self.cell(n, l)
            rows.append({
                "n": n, "l": l,
                "degree": _fmt_degree(c.degree),
                "singular": c.singular,
                "doublyMonic": c.doubly_monic,
                "det": self.domain.render(c.det),
            })
        return rows

    def to_csv(self, N: Optional[int] = None) -> str:
        return grid_rows_to_csv(self.export_rows(N))


def grid_rows_to_csv(rows) -> str:
    """CSV with columns ``n, l, degree, singular, doublyMonic, detString``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "l", "degree", "singular", "doublyMonic", "detString"])
    for r in rows:
        w.writerow([r["n"], r["l"], "" if r["degree"] is None else r["degree"],
                    str(r["singular"]).lower(),
                    "" if r["doublyMonic"] is None else str(r["doublyMonic"]).lower(),
                    r["det"]])
    return buf.getvalue()


def _fmt_degree(d):
    if d is None:
        return None
    if d == float("-inf"):
        return "-inf"
    return int(d)


def grid_compute(series: LaurentSeries, N: Optional[int] = None, strategy: str = "direct",
                 u=None, threads: int = 1) -> HankelGrid:
    """Populate every cell ``n + 2l <= N``.

    ``block`` uses the Thue-Morse factorisation and therefore requires the
    series to be ``g_u`` (checked on the coverage).  ``threads > 1`` farms
    direct determinants out to worker processes; results are stored by key,
    so the grid does not depend on scheduling.
    """
    grid = HankelGrid(series, u=u, N=N)
    if N is not None and not series.is_exact and N > series.order:
        raise PrecisionError(f"grid bound {N} exceeds series order {series.order}")
    cells = grid.cells_within()
    if strategy == "block":
        if not grid.check_thue_morse():
            raise UndefinedInputError("block strategy applies only to g_u with d = 2, P = t + u")
        for n, l in sorted(cells, key=lambda c: (c[1], c[0])):
            grid._det[(n, l)] = grid.block_det(n, l)
        return grid
    if strategy != "direct":
        raise UndefinedInputError(f"unknown strategy {strategy!r}")
    if threads > 1 and len(cells) > 1:
        jobs = [(grid.matrix(n, l).entries, grid.domain) for n, l in cells]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for (n, l), d in zip(cells, pool.map(_det_task, jobs, chunksize=8)):
                grid._det[(n, l)] = d
    else:
        for n, l in cells:
            grid.det(n, l)
    return grid


# -- identity checks ------------------------------------------------------
def block_factor_check(grid: HankelGrid, n: int, l: int, exact_sign: bool = False) -> bool:
    """``|det H(n,l)| == |u|^e |det H(n1,l1)| |det Ht(n2,l2)|`` (up to sign)."""
    grid._check(n, l)
    sign, upow, (n1, l1), (n2, l2) = block_factors(n, l)
    lhs = grid.det(n, l)
    rhs = grid.det(n1, l1) * grid.twisted_det(n2, l2)
    if upow:
        rhs = rhs * grid.u
    if exact_sign:
        return lhs == (rhs if sign > 0 else -rhs)
    return lhs == rhs or lhs == -rhs


def expected_degree(n: int, l: int, twisted: bool = False) -> int:
    """``sigma(l) + sigma(n+l-1) - sigma(n-2)`` (plus ``2(l+1)`` twisted)."""
    base = sigma(l) + sigma(n + l - 1) - sigma(n - 2)
    return base + 2 * (l + 1) if twisted else base


def degree_formula_check(grid: HankelGrid, n: int, l: int, twisted: bool = False) -> bool:
    if not grid.domain.is_symbolic:
        raise DomainError("degree formulas need the symbolic domain Zu")
    d = grid.twisted_det(n, l) if twisted else grid.det(n, l)
    return bool(d) and d.degree == expected_degree(n, l, twisted)


def even_row_one_closed_form(n: int, u):
    """``det H(n, 1) = u^(2 tau2(n)) (u^v2(n) - 1)`` for even ``n``."""
    from .core import tau2, v2
    if n % 2:
        raise UndefinedInputError("closed form holds for even n")
    return u ** (2 * tau2(n)) * (u ** v2(n) - 1)


def _han_linear_values(cf, up_to):
    """``(-1)^(n(n-1)/2) beta_1^n ... beta_n`` for ``n = 1..up_to``; the
    product for ``n`` is the one for ``n - 1`` times ``beta_1 ... beta_n``."""
    out, val, prefix = [], cf.domain.one, cf.domain.one
    for n in range(1, up_to + 1):
        prefix = prefix * cf.terms[n - 1].beta
        val = val * prefix
        out.append(-val if (n * (n - 1) // 2) % 2 else val)
    return out


def _han_general_values(cf, up_to):
    """``(-1)^eps beta_1^(s_n) (-beta_2)^(s_n - s_1) ... (-beta_n)^(s_n - s_(n-1))``;
    step ``n`` multiplies by ``(beta_1 (-beta_2) ... (-beta_n))^(k_n)``."""
    s = cf.degrees
    out, val, prefix, eps = [], cf.domain.one, cf.domain.one, 0
    for n in range(1, up_to + 1):
        b = cf.terms[n - 1].beta
        prefix = prefix * (b if n == 1 else -b)
        k = s[n] - s[n - 1]
        eps += k * (k - 1) // 2
        val = val * prefix ** k
        out.append(-val if eps % 2 else val)
    return out


def han_product_check(grid: HankelGrid, cf, up_to: int, general: Optional[bool] = None) -> bool:
    """Compare row ``n = 1`` of ``grid`` with the product formulas.

    With all partial quotients linear ``det H(1, n-1)`` is
    ``(-1)^(n(n-1)/2) beta_1^n beta_2^(n-1) ... beta_n``; in general
    ``det H(1, s_n - 1) = (-1)^eps beta_1^(s_n) (-beta_2)^(s_n - s_1) ...``
    with ``eps = sum k_i (k_i - 1) / 2``, ``k_i = s_i - s_(i-1)``.
    """
    if up_to > cf.certified_count:
        raise PrecisionError(f"needs {up_to} certified terms, have {cf.certified_count}")
    f = cf.domain
    linear = all(t.degree == 1 for t in cf.terms[:up_to])
    use_general = (not linear) if general is None else general
    if not use_general and not linear:
        return False
    s = cf.degrees
    values = _han_general_values(cf, up_to) if use_general else _han_linear_values(cf, up_to)
    for n, expect in enumerate(values, start=1):
        l = s[n] - 1 if use_general else n - 1
        if f.coerce(grid.det(1, l)) != expect:
            return False
    return True


# -- deficiency -----------------------------------------------------------
@dataclass(frozen=True)
class DeficiencyReport:
    bound: int
    max_singular_run: int
    witnesses: tuple                 # ((n, l_start, run_length), ...)
    boundary_truncated: bool         # a longest run touches the coverage edge
    certificate: Optional[str] = None

    @property
    def lower_bound(self) -> int:
        return self.max_singular_run + 1

    @property
    def exact(self) -> bool:
        return self.certificate is not None

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "maxSingularRun": self.max_singular_run,
            "deficiencyLowerBound": self.lower_bound,
            "deficiencyExact": self.exact,
            "witnesses": [{"n": n, "l": l, "run": r} for n, l, r in self.witnesses],
            "boundaryTruncated": self.boundary_truncated,
            "note": ("no singular cell found up to the bound" if self.max_singular_run == 0
                     else "singular runs found"),
        }


def deficiency(grid: HankelGrid, N: Optional[int] = None, certificate: Optional[str] = None) -> DeficiencyReport:
    """Longest run of consecutive-in-``l`` singular cells at fixed ``n``."""
    N = grid.N if N is None else N
    best, witnesses, truncated = 0, [], False
    for n in range(1, N + 1):
        top = (N - n) // 2
        run, start = 0, 0
        for l in range(0, top + 1):
            if not grid.det(n, l):
                if run == 0:
                    start = l
                run += 1
                at_edge = l == top
            else:
                run, at_edge = 0, False
            if run and run >= best:
                if run > best:
                    best, witnesses, truncated = run, [], False
                witnesses = [w for w in witnesses if w[:2] != (n, start)]
                witnesses.append((n, start, run))
                truncated = truncated or at_edge
    return DeficiencyReport(N, best, tuple(witnesses), truncated, certificate)


def deficiency_from_quotients(series: LaurentSeries, J: int, max_terms: Optional[int] = None) -> int:
    """Max partial-quotient degree over ``t^j alpha``, ``0 <= j <= J``,
    within each certified range."""
    from .contfrac import cf_expand
    from .series import shift
    best = 0
    for j in range(J + 1):
        cf = cf_expand(shift(series, j).promote(), max_terms)
        best = max(best, cf.max_quotient_degree())
    return best


def nonsingular_row_one(grid: HankelGrid, top: int) -> set:
    """``{m : det H(1, m-1) != 0}`` for ``1 <= m <= top``."""
    return {m for m in range(1, top + 1) if grid.det(1, m - 1)}


def index_set_check(grid: HankelGrid, cf) -> bool:
    """Nonsingular ``H(1, m-1)`` indices equal convergent-denominator
    degrees, within the certified range of ``cf`` and the grid coverage."""
    from .contfrac import convergent_list
    convs = convergent_list(cf)[: cf.certified_count + 1]
    top = convs[-1].s
    while top >= 1 and not grid.covers(1, top - 1):
        top -= 1
    degrees = {c.s for c in convs if c.coprime and 1 <= c.s <= top}
    return degrees == nonsingular_row_one(grid, top)
