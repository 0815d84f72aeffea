from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tlcheck.core import GF, QQ, ZU, Polynomial, PrecisionError, UndefinedInputError, tau2
from tlcheck.series import (LaurentSeries, MahlerSpec, coeff_closed_form, expand_product,
                            functional_equation_check, measure, mirror_identity_check,
                            multiply, series_equal_upto, shift, substitute, thue_morse_series)


def brute_product(P, d, N, domain):
    """a_1..a_N of t^-1 prod P*(t^-(d^i)) by full polynomial products in x = 1/t."""
    D = P.degree
    rev = [P.coeff(D - j) for j in range(D + 1)]
    acc = Polynomial([domain.one], domain, "x")
    step = 1
    while step <= N:
        factor = [domain.zero] * (D * step + 1)
        for j, c in enumerate(rev):
            factor[j * step] = c
        acc = acc * Polynomial(factor, domain, "x")
        acc = Polynomial(acc.coeffs[:N], domain, "x")
        step *= d
    return [acc.coeff(k) for k in range(N)]


def test_thue_morse_first_coefficients():
    Zu = ZU()
    u = Zu.gen
    g = thue_morse_series(Zu, N=5)
    assert g.coefficients(1, 5) == [1, u, u, u ** 2, u]


def test_zero_parameter_gives_pure_inverse():
    t = Polynomial.gen(QQ)
    g = expand_product(MahlerSpec(t, 2), 4)
    assert g.coefficients(1, 4) == [1, 0, 0, 0]


def test_cubic_substitution_example():
    Zu = ZU()
    u = Zu.gen
    g = expand_product(MahlerSpec.linear(Zu, d=3), 4)
    assert g.coefficients(1, 4) == [1, u, 0, u]


@pytest.mark.parametrize("coeffs,d,N", [([1, 1], 3, 40), ([2, 0, 1], 2, 40), ([1, 3, 1], 3, 60),
                                        ([5, 1], 2, 64), ([1, 0, 0, 1], 4, 70)])
def test_expand_product_brute_force(coeffs, d, N):
    P = Polynomial([Fraction(c) for c in coeffs], QQ)
    g = expand_product(MahlerSpec(P, d), N)
    assert g.coefficients(1, N) == brute_product(P, d, N, QQ)


@given(st.integers(1, 2000))
def test_closed_form_matches_product(n):
    Zu = ZU()
    g = _TM_4096
    assert g[n] == coeff_closed_form(Zu.gen, n, Zu)


_TM_4096 = thue_morse_series(ZU(), N=4096)


def test_closed_form_examples():
    u = ZU().gen
    assert coeff_closed_form(u, 1) == 1
    assert coeff_closed_form(u, 8) == u ** 3
    assert coeff_closed_form(2, 6) == 4


def test_digit_identities():
    g = _TM_4096
    u = ZU().gen
    assert all(g[2 * n] == u * g[2 * n - 1] for n in range(1, 2048))
    assert all(g[2 * n + 1] == g[n + 1] for n in range(1, 2047))


def test_mahler_spec_validation():
    t = Polynomial.gen(QQ)
    with pytest.raises(UndefinedInputError):
        MahlerSpec(t + 1, 1)
    with pytest.raises(UndefinedInputError):
        MahlerSpec(2 * t + 1, 2)
    with pytest.raises(UndefinedInputError):
        MahlerSpec(Polynomial([Fraction(1)], QQ), 2)


def test_measure_examples():
    a = LaurentSeries.from_coefficients(QQ, [1, 0, 0, 1], start=-2, order=None)
    m = measure(a)
    assert (m.valuation, m.abs_value, m.norm) == (2, 4, Fraction(1, 2))
    g = thue_morse_series(QQ, 2, 16)
    assert measure(g).valuation == -1 and measure(g).norm == Fraction(1, 2)
    p = LaurentSeries.from_polynomial(Polynomial.gen(QQ) ** 3)
    assert measure(p).norm == 0 and not measure(p).truncation_limited


def test_transforms():
    Zu = ZU()
    u = Zu.gen
    g = thue_morse_series(Zu, N=64)
    s = shift(g, 1)
    assert s[0] == 1 and s[1] == g[2] and s.order == 63
    inv_t = LaurentSeries.from_coefficients(QQ, [1], start=1, order=None)
    sq = substitute(inv_t, 2)
    assert sq[2] == 1 and sq[1] == 0 and sq.start == 2
    t = Polynomial.gen(Zu)
    rhs = shift(multiply(substitute(g, 2), t + u), 0)
    assert series_equal_upto(g, rhs, 63)


def test_precision_error_beyond_order():
    g = thue_morse_series(QQ, 2, 8)
    with pytest.raises(PrecisionError):
        g[9]


def test_functional_equation():
    Zu = ZU()
    spec = MahlerSpec.linear(Zu)
    assert functional_equation_check(spec, 64)
    bad = expand_product(spec, 64)
    bad = bad.with_coefficient(5, bad[5] + 1)
    assert not functional_equation_check(spec, 64, bad)
    t = Polynomial.gen(QQ)
    assert functional_equation_check(MahlerSpec(t + 1, 3), 32)
    assert functional_equation_check(MahlerSpec(t ** 2 + 3 * t + 1, 3), 60)


def test_mirror_identity():
    Zu = ZU()
    u = Zu.gen
    g = thue_morse_series(Zu, N=4)
    assert g[1] * g[4] == u ** 2 and g[2] * g[3] == u ** 2
    assert g[1] * g[2] == u
    assert mirror_identity_check(2, 6, QQ)
    assert mirror_identity_check(u, 10, Zu)
    with pytest.raises(UndefinedInputError):
        mirror_identity_check(0, 3, QQ)


def test_prime_field_series():
    F = GF(5)
    g = thue_morse_series(F, 2, 32)
    assert all(g[n] == F(2) ** tau2(n - 1) for n in range(1, 33))


def test_export_is_deterministic():
    g = thue_morse_series(ZU(), N=16)
    assert g.to_csv(1, 16).splitlines()[0] == "k,coefficient"
    assert len(g.to_csv(1, 16).splitlines()) == 17
    assert g.table_hash(1, 16) == thue_morse_series(ZU(), N=16).table_hash(1, 16)
