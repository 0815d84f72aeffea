from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tlcheck.contfrac import (beta_recurrence, cf_expand, coeffs_from_hankel, convergent_list,
                              convergents, legendre_verify, lift_convergent, shifted_recurrence)
from tlcheck.core import QQ, QU, ZU, DomainError, Polynomial, PrecisionError, tau2
from tlcheck.contfrac import Convergent
from tlcheck.hankel import HankelGrid
from tlcheck.series import LaurentSeries, shift, thue_morse_series


def rational_series(p, q, N):
    """Coefficients of p/q (deg p < deg q) in t^-1 by long division."""
    D = q.degree
    lead = q.lc
    a = {}
    for k in range(1, N + 1):
        # coefficient of t^(D-k) in q*alpha equals that of p
        acc = p.coeff(D - k)
        for i in range(D):
            j = k - (D - i)
            if j >= 1:
                acc -= q.coeff(i) * a[j]
        a[k] = acc / lead
    return LaurentSeries.from_coefficients(QQ, [a[k] for k in range(1, N + 1)], start=1, order=N)


def test_polynomial_input():
    t = Polynomial.gen(QQ)
    cf = cf_expand(LaurentSeries.from_polynomial(t ** 3 + t))
    assert cf.b0 == t ** 3 + t and cf.terms == () and cf.terminating


def test_geometric_series():
    t = Polynomial.gen(QQ)
    alpha = LaurentSeries.from_coefficients(QQ, [Fraction(1)] * 40, start=1, order=40)
    cf = cf_expand(alpha)
    assert cf.b0 == 0
    assert cf.terms[0].beta == 1 and cf.terms[0].bstar == t - 1
    assert cf.terminating


def test_symbolic_betas():
    cf = cf_expand(thue_morse_series(QU(), N=64))
    u = QU().gen
    assert cf.betas[:4] == [1, u * u - u, -1, u * u + u + 1]
    assert all(term.degree == 1 for term in cf.terms)


def test_ring_domain_rejected():
    with pytest.raises(DomainError):
        cf_expand(thue_morse_series(ZU(), N=16))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=6).filter(lambda c: c[-1] != 0),
       st.lists(st.integers(-6, 6), min_size=1, max_size=6))
def test_rational_input_terminates_at_itself(qc, pc):
    q = Polynomial([Fraction(c) for c in qc], QQ)
    p = Polynomial([Fraction(c) for c in pc], QQ) % q
    alpha = rational_series(p, q, 4 * q.degree + 4)
    cf = cf_expand(alpha)
    assert cf.terminating
    last = convergent_list(cf)[-1]
    assert last.p * q == p * last.q
    assert legendre_verify(alpha, last, None)


def test_convergents():
    g = thue_morse_series(QQ, 2, 64)
    cf = cf_expand(g)
    assert convergents(cf, 0).p == cf.b0 and convergents(cf, 0).q == 1
    with pytest.raises(PrecisionError):
        convergents(cf, cf.certified_count + 1)


def test_first_convergent_of_tail():
    g = thue_morse_series(QQ, 3, 64)
    t = Polynomial.gen(QQ)
    for m in range(0, 8):
        tail = LaurentSeries.from_coefficients(QQ, g.coefficients(m + 1, 64), start=1, order=64 - m)
        c = convergent_list(cf_expand(tail))[1]
        a1, a2 = g[m + 1], g[m + 2]
        assert c.p * (t - a2 / a1) == a1 * c.q


def test_second_denominator_of_doubled_shift():
    u = QU().gen
    g = thue_morse_series(QU(), N=80)
    t = Polynomial.gen(QU())
    for n in range(1, 9):
        q2 = convergent_list(cf_expand(shift(g, 2 * n), 4))[2].q
        assert q2 == t ** 2 - u ** (tau2(n + 1) - tau2(n))


def test_legendre_examples():
    g = thue_morse_series(QQ, 2, 128)
    cf = cf_expand(g)
    convs = convergent_list(cf)
    for k in range(cf.certified_count):
        assert legendre_verify(g, convs[k], 1)
        assert convs[k].s == k
    c = convs[5]
    assert not legendre_verify(g, Convergent(c.p + 1, c.q, True), 1)
    with pytest.raises(PrecisionError):
        legendre_verify(g, convs[cf.certified_count], 200)


def test_beta_recurrence_examples():
    Qu = QU()
    u = Qu.gen
    rec = beta_recurrence(u, 6, Qu)
    assert rec.betas[:4] == [1, u * u - u, -1, u * u + u + 1]
    assert rec.alphas[:4] == [-u, u, -u, u]
    rec1 = beta_recurrence(1, 10, QQ)
    assert rec1.abort_index == 2


@pytest.mark.parametrize("u", [Fraction(2), Fraction(-3), Fraction(5, 7)])
def test_recurrence_matches_expansion(u):
    cf = cf_expand(thue_morse_series(QQ, u, 256), 100)
    rec = beta_recurrence(u, 100, QQ)
    assert [(t.alpha_lin, t.beta) for t in cf.terms] == list(rec.pairs)


def test_shifted_recurrence():
    Qu = QU()
    u = Qu.gen
    g = thue_morse_series(Qu, N=200)
    base = beta_recurrence(u, 50, Qu)
    rec0 = shifted_recurrence(u, 0, cf_expand(g, 50), 50, Qu)
    assert rec0.pairs == base.pairs
    for n in (1, 2, 3, 5):
        rec = shifted_recurrence(u, n, cf_expand(shift(g, n), 30), 30, Qu)
        assert rec.betas[0] == u ** tau2(2 * n)
        assert rec.betas[1] == u * u - u ** (tau2(n + 1) - tau2(n))
        direct = cf_expand(shift(g, 2 * n), 30)
        assert [(t.alpha_lin, t.beta) for t in direct.terms] == list(rec.pairs)


def test_lift_convergent():
    g = thue_morse_series(QQ, 2, 160)
    t = Polynomial.gen(QQ)
    for n in (0, 1, 3):
        cn = convergent_list(cf_expand(shift(g, n)))
        c2 = convergent_list(cf_expand(shift(g, 2 * n)))
        for k in range(1, 8):
            lifted = lift_convergent(cn[k], 2)
            assert lifted.p * c2[2 * k].q == c2[2 * k].p * lifted.q
    one = Convergent(t + 1, Polynomial([Fraction(1)], QQ), True)
    lifted = lift_convergent(one, 2)
    assert lifted.q == 1 and lifted.p == (t + 2) * (t ** 2 + 1)


def test_coeffs_from_hankel():
    Zu, Qu = ZU(), QU()
    u = Qu.gen
    grid = HankelGrid(thue_morse_series(Zu, N=40), u=Zu.gen)
    a3, b3 = coeffs_from_hankel(grid.det, 3, Zu)
    assert (a3, b3) == (-u, -1)
    a4, b4 = coeffs_from_hankel(grid.det, 4, Zu)
    assert b4 == u * u + u + 1 and a4 == u
    rec = beta_recurrence(u, 18, Qu)
    for m in range(3, 19):
        assert coeffs_from_hankel(grid.det, m, Zu) == rec.pairs[m - 1]
