"""Verification suites: one runnable property check per identity."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..contfrac import (beta_recurrence, cf_expand, coeffs_from_hankel, convergent_list,
                        legendre_verify, shifted_recurrence)
from ..core import GF, QQ, QU, ZU, sigma, v2
from ..hankel import (HankelGrid, block_factor_check, index_set_check, degree_formula_check,
                      han_product_check)
from ..series import coeff_closed_form, mirror_identity_check, shift, thue_morse_series


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    params: dict
    first_failure: Optional[str] = None
    details: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "checked": self.checked,
                "params": self.params, "firstFailure": self.first_failure,
                "details": self.details}


class _Tally:
    def __init__(self, name, params):
        self.result = SuiteResult(name, True, 0, params)

    def check(self, ok: bool, witness: str):
        self.result.checked += 1
        if not ok and self.result.passed:
            self.result.passed = False
            self.result.first_failure = witness
        return ok

    def note(self, text: str):
        self.result.details.append(text)


SAMPLE_US = ("2", "-2", "1/2", "3/5")


def suite_closed_form(N: int = 4096, **_):
    """Product expansion against the closed form ``u^tau2(n-1)``."""
    T = _Tally("prop2", {"N": N})
    Zu = ZU()
    g = thue_morse_series(Zu, N=N)
    u = Zu.gen
    for n in range(1, N + 1):
        if not T.check(g[n] == coeff_closed_form(u, n, Zu), f"a_{n}"):
            break
    return T.result


def suite_beta_degrees(M: int = 512, **_):
    """``deg beta_m = 2(1 - v2(m-1))`` for ``2 <= m <= M``."""
    T = _Tally("prop3", {"M": M})
    rec = beta_recurrence(QU().gen, M, QU())
    T.check(rec.abort_index is None and len(rec.pairs) == M, "recurrence aborted")
    for m in range(2, len(rec.pairs) + 1):
        T.check(rec.betas[m - 1].degree == 2 * (1 - v2(m - 1)), f"beta_{m}")
    return T.result


def suite_row_one_degrees(N: int = 24, **_):
    """``deg det H(1, n) = 2 sigma(n)`` for ``1 <= n <= N``."""
    T = _Tally("prop4", {"N": N})
    Zu = ZU()
    grid = HankelGrid(thue_morse_series(Zu, N=2 * N + 1), u=Zu.gen)
    for n in range(1, N + 1):
        d = grid.det(1, n)
        T.check(bool(d) and d.degree == 2 * sigma(n), f"H(1,{n})")
    return T.result


def _field_and_u(text):
    if text in ("Qu", "u"):
        return QU(), QU().gen
    return QQ, QQ.coerce(Fraction(text))


def suite_recur(N: int = 2048, terms: int = 200, us=SAMPLE_US + ("Qu",), **_):
    """Recurrence coefficients against the direct expansion."""
    T = _Tally("recur", {"N": N, "terms": terms, "u": list(us)})
    for text in us:
        F, u = _field_and_u(text)
        cf = cf_expand(thue_morse_series(F, u, N), terms)
        rec = beta_recurrence(u, terms, F)
        ok = cf.certified_count >= terms and len(rec.pairs) == terms
        ok = ok and all(t.alpha_lin == a and t.beta == b
                        for t, (a, b) in zip(cf.terms[:terms], rec.pairs))
        T.check(ok, f"u={text}")
        T.note(f"u={text}: {min(cf.certified_count, terms)} terms")
    return T.result


def suite_nrecur(n_max: int = 16, terms: int = 30, us=("Qu", "2"), **_):
    """Expansion of ``t^(2n) g_u`` from that of ``t^n g_u``."""
    T = _Tally("nrecur", {"n": n_max, "terms": terms, "u": list(us)})
    for text in us:
        F, u = _field_and_u(text)
        N = 4 * n_max + 4 * terms + 16
        g = thue_morse_series(F, u, N)
        for n in range(1, n_max + 1):
            cf_n = cf_expand(shift(g, n), terms)
            cf_2n = cf_expand(shift(g, 2 * n), terms)
            rec = shifted_recurrence(u, n, cf_n, terms, F)
            k = min(len(rec.pairs), cf_2n.certified_count)
            ok = k >= terms and all(t.beta == b and t.alpha_lin == a
                                    for t, (a, b) in zip(cf_2n.terms[:k], rec.pairs))
            T.check(ok, f"u={text}, n={n}")
    return T.result


def suite_blocks(N: int = 48, fields=((3, (1, 2)), (5, (2, 3, 4))), **_):
    """Block factorisations up to sign over Z[u] and over small prime fields."""
    T = _Tally("blocks", {"N": N})
    grids = [("Zu", HankelGrid(thue_morse_series(ZU(), N=N), u=ZU().gen))]
    for p, us in fields:
        for uu in us:
            F = GF(p)
            grids.append((f"F{p},u={uu}", HankelGrid(thue_morse_series(F, uu, N), u=F.coerce(uu))))
    for label, grid in grids:
        for n, l in grid.cells_within():
            T.check(block_factor_check(grid, n, l), f"{label} ({n},{l})")
    return T.result


def suite_degrees(N: int = 48, **_):
    """Degrees of ``det H(n, l)`` and of the twisted determinants."""
    T = _Tally("degrees", {"N": N})
    grid = HankelGrid(thue_morse_series(ZU(), N=N), u=ZU().gen)
    for n, l in grid.cells_within():
        T.check(degree_formula_check(grid, n, l), f"H({n},{l})")
        if grid.covers(n, l, twisted=True):
            T.check(degree_formula_check(grid, n, l, twisted=True), f"Ht({n},{l})")
    return T.result


def suite_han(up_to: int = 64, shifted_N: int = 200, **_):
    """Product formulas for the ``n = 1`` row."""
    T = _Tally("han", {"upTo": up_to, "shiftedN": shifted_N})
    Zu = ZU()
    grid = HankelGrid(thue_morse_series(Zu, N=2 * up_to), u=Zu.gen, lazy_block=True)
    cf = cf_expand(thue_morse_series(QU(), N=4 * up_to), up_to)
    T.check(han_product_check(grid, cf, up_to), f"linear formula, g_u, n<={up_to}")
    gm = shift(thue_morse_series(QQ, -1, shifted_N), 3)
    cfm = cf_expand(gm)
    gridm = HankelGrid(gm)
    K = max(k for k in range(cfm.certified_count + 1) if gridm.covers(1, cfm.degrees[k] - 1))
    T.check(han_product_check(gridm, cfm, K, general=True), f"general formula, t^3 g_-1, n<={K}")
    T.note(f"t^3 g_-1: {K} terms, degrees {cfm.degrees[:K + 1]}")
    return T.result


def suite_hankcoeffs(M: int = 64, **_):
    """``(alpha_m, beta_m)`` recovered from rows ``n = 1, 2``."""
    T = _Tally("hankcoeffs", {"M": M})
    Zu, Qu = ZU(), QU()
    grid = HankelGrid(thue_morse_series(Zu, N=2 * M + 2), u=Zu.gen, lazy_block=True)
    rec = beta_recurrence(Qu.gen, M, Qu)
    for m in range(3, M + 1):
        a, b = coeffs_from_hankel(grid.det, m, Zu)
        T.check((a, b) == rec.pairs[m - 1], f"m={m}")
    return T.result


def suite_legendre(N: int = 256, u: str = "2", shifts: int = 4, **_):
    """Valuation of ``alpha - p/q`` at every certified convergent."""
    T = _Tally("legendre", {"N": N, "u": u, "shifts": shifts})
    series = [(f"g_{u}", thue_morse_series(QQ, Fraction(u), N))]
    gm = thue_morse_series(QQ, -1, N)
    series += [(f"t^{j} g_-1", shift(gm, j)) for j in range(shifts + 1)]
    for label, alpha in series:
        cf = cf_expand(alpha)
        convs = convergent_list(cf)
        for k in range(cf.certified_count):
            T.check(legendre_verify(alpha, convs[k], cf.terms[k].degree), f"{label}, k={k}")
    return T.result


def suite_mirror(D: int = 10, **_):
    """``a_n a_(2^D + 1 - n) = u^D``."""
    T = _Tally("mirror", {"D": D})
    T.check(mirror_identity_check(ZU().gen, D, ZU()), f"D={D}")
    return T.result


def suite_index_sets(N: int = 64, shifted_N: int = 200, **_):
    """Nonsingular ``H(1, m-1)`` indices against convergent degrees."""
    T = _Tally("corollary1", {"N": N, "shiftedN": shifted_N})
    Zu = ZU()
    grid = HankelGrid(thue_morse_series(Zu, N=N), u=Zu.gen)
    T.check(index_set_check(grid, cf_expand(thue_morse_series(QU(), N=N))), "g_u")
    gm = shift(thue_morse_series(QQ, -1, shifted_N), 3)
    T.check(index_set_check(HankelGrid(gm), cf_expand(gm)), "t^3 g_-1")
    return T.result


SUITES: dict = {
    "prop2": suite_closed_form,
    "prop3": suite_beta_degrees,
    "prop4": suite_row_one_degrees,
    "recur": suite_recur,
    "nrecur": suite_nrecur,
    "blocks": suite_blocks,
    "degrees": suite_degrees,
    "han": suite_han,
    "hankcoeffs": suite_hankcoeffs,
    "legendre": suite_legendre,
    "mirror": suite_mirror,
    "corollary1": suite_index_sets,
}
