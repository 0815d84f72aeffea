from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tlcheck.contfrac import cf_expand
from tlcheck.core import (GF, QQ, QU, ZU, ZZ, CoverageError, DomainError, Polynomial,
                          PrecisionError, is_doubly_monic, sigma, tau2, v2)
from tlcheck.hankel import (HankelGrid, block_factor_check, block_factors, build,
                            cofactor_det, index_set_check, deficiency,
                            deficiency_from_quotients, degree_formula_check, det_entries,
                            det_exact, even_row_one_closed_form, expected_degree,
                            grid_compute, han_product_check)
from tlcheck.series import shift, thue_morse_series

Zu = ZU()
u = Zu.gen
G48 = thue_morse_series(Zu, N=48)


def test_build_examples():
    M = build(G48, 3, 1)
    assert M.entries == ((u, u ** 2), (u ** 2, u))
    assert build(G48, 7, 0).entries == ((G48[7],),)
    assert build(G48, 1, 0, twisted=True, u=u).entries == ((u - u ** 2,),)
    with pytest.raises(PrecisionError):
        build(thue_morse_series(Zu, N=6), 3, 2)


def test_det_examples():
    assert det_exact(build(G48, 3, 1)) == u ** 2 - u ** 4
    assert det_exact(build(G48, 1, 2)) == u ** 4 - 2 * u ** 3 + u ** 2
    assert det_exact(build(G48, 2, 2)) == -u ** 3 * (u - 1) ** 2 * (u + 1)
    g = thue_morse_series(QQ, -1, 8)
    assert det_exact(build(g, 3, 1)) == 0
    assert det_entries((), QQ) == 1


@pytest.mark.parametrize("domain,uval", [(Zu, None), (QQ, Fraction(3, 5)), (GF(5), 2), (GF(3), 2)])
def test_det_matches_cofactor_small(domain, uval):
    g = thue_morse_series(domain, uval, 24)
    uu = domain.gen if uval is None else domain.coerce(uval)
    for l in range(0, 4):
        for n in range(1, 12):
            for tw in (False, True):
                M = build(g, n, l, tw, uu)
                assert det_exact(M) == cofactor_det(M.entries, domain)
                assert det_exact(M.transpose()) == det_exact(M)


mat = st.integers(1, 5).flatmap(
    lambda k: st.lists(st.lists(st.integers(-9, 9), min_size=k, max_size=k), min_size=k, max_size=k))


@given(mat)
def test_integer_bareiss_against_cofactor(rows):
    assert det_entries(rows, ZZ) == cofactor_det(rows, ZZ)


@given(mat, st.integers(1, 7))
def test_rational_and_prime_field_det(rows, den):
    q = [[Fraction(x, den) for x in r] for r in rows]
    assert det_entries(q, QQ) == cofactor_det(q, QQ)
    F = GF(7)
    f = [[F(x) for x in r] for r in rows]
    assert det_entries(f, F) == cofactor_det(f, F)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4).flatmap(lambda k: st.lists(
    st.lists(st.lists(st.integers(-3, 3), max_size=4), min_size=k, max_size=k), min_size=k, max_size=k)))
def test_polynomial_bareiss_against_cofactor(rows):
    P = [[Polynomial(c, ZZ, "u") for c in r] for r in rows]
    assert det_entries(P, Zu) == cofactor_det(P, Zu)


def test_grid_examples():
    grid = grid_compute(thue_morse_series(Zu, N=12), 12)
    c = grid.cell(1, 1)
    assert c.det == u - u ** 2 and c.degree == 2 and not c.singular and c.doubly_monic
    ones = grid_compute(thue_morse_series(QQ, 1, 8), 8)
    assert ones.cell(3, 1).singular
    f3 = grid_compute(thue_morse_series(GF(3), 2, 12), 12)
    assert f3.det(4, 1) == 0
    assert len(grid.cells_within()) == sum(max(0, 12 - 2 * l) for l in range(6))


def test_grid_coverage():
    grid = HankelGrid(thue_morse_series(Zu, N=12), u=u)
    with pytest.raises(CoverageError):
        grid.det(1, 6)
    with pytest.raises(CoverageError):
        block_factor_check(grid, 3, 5)
    assert grid.det(5, -1) == 1


def test_block_examples():
    grid = HankelGrid(thue_morse_series(Zu, N=12), u=u)
    assert block_factors(1, 1)[2:] == ((1, 0), (1, 0))
    assert block_factor_check(grid, 1, 1)
    assert block_factors(2, 2)[1:] == (1, (1, 1), (2, 0))
    assert grid.det(1, 1) * grid.twisted_det(2, 0) * u == -grid.det(2, 2)
    assert block_factor_check(grid, 2, 2)
    assert block_factor_check(grid, 3, 0)


@pytest.mark.parametrize("domain,uval", [(Zu, None), (GF(3), 2), (GF(5), 3), (QQ, Fraction(-2, 3))])
def test_strategies_agree(domain, uval):
    g = thue_morse_series(domain, uval, 32)
    uu = domain.gen if uval is None else domain.coerce(uval)
    direct = grid_compute(g, 32, u=uu)
    block = grid_compute(g, 32, strategy="block", u=uu)
    for n, l in direct.cells_within():
        assert direct.det(n, l) == block.det(n, l)
        assert block_factor_check(direct, n, l, exact_sign=True)


def test_block_strategy_rejects_other_series():
    t = thue_morse_series(QQ, 2, 16)
    bad = t.with_coefficient(6, 99)
    with pytest.raises(Exception):
        grid_compute(bad, 16, strategy="block", u=2)


def test_degree_examples():
    grid = HankelGrid(G48, u=u)
    assert grid.det(1, 2).degree == 4 == 2 * sigma(2)
    assert grid.det(3, 1).degree == 4 == sigma(1) + sigma(3) - sigma(1)
    assert grid.det(1, 1).degree == 2 == expected_degree(1, 1)
    assert degree_formula_check(grid, 5, 7)
    assert degree_formula_check(grid, 4, 6, twisted=True)
    with pytest.raises(DomainError):
        degree_formula_check(HankelGrid(thue_morse_series(QQ, 2, 16)), 1, 1)


def test_doubly_monic_grid():
    grid = grid_compute(thue_morse_series(Zu, N=24), 24)
    for n, l in grid.cells_within():
        d = grid.det(n, l)
        assert d and is_doubly_monic(d) and d.degree == expected_degree(n, l)


def test_even_row_one_closed_form():
    g = thue_morse_series(Zu, N=2 ** 10 + 2)
    for n in range(2, 2 ** 10 + 1, 2):
        assert det_exact(build(g, n, 1)) == even_row_one_closed_form(n, u)
        assert even_row_one_closed_form(n, u) == u ** (2 * tau2(n)) * (u ** v2(n) - 1)


def test_han_examples():
    grid = HankelGrid(G48, u=u)
    cf = cf_expand(thue_morse_series(QU(), N=48))
    b = cf.betas
    assert grid.det(1, 0) == b[0] == 1
    assert -b[0] ** 2 * b[1] == grid.det(1, 1)
    assert grid.det(1, 2) == (u * u - u) ** 2
    assert han_product_check(grid, cf, 20)
    assert han_product_check(grid, cf, 20, general=True)
    with pytest.raises(PrecisionError):
        han_product_check(grid, cf, cf.certified_count + 1)


def test_han_general_with_gaps():
    gm = shift(thue_morse_series(QQ, -1, 120), 3)
    cf = cf_expand(gm)
    assert max(t.degree for t in cf.terms) > 1
    grid = HankelGrid(gm)
    K = max(k for k in range(cf.certified_count + 1) if grid.covers(1, cf.degrees[k] - 1))
    assert han_product_check(grid, cf, K)
    assert not han_product_check(grid, cf, K, general=False)


def test_index_sets():
    gm = shift(thue_morse_series(QQ, -1, 120), 3)
    assert index_set_check(HankelGrid(gm), cf_expand(gm))
    g = thue_morse_series(QQ, 2, 64)
    assert index_set_check(HankelGrid(g, u=2), cf_expand(g))


def test_deficiency_examples():
    r = deficiency(grid_compute(thue_morse_series(Zu, N=24), 24))
    assert r.max_singular_run == 0 and r.lower_bound == 1 and not r.exact
    gm = grid_compute(thue_morse_series(QQ, -1, 12), 12)
    r = deficiency(gm)
    assert r.lower_bound >= 2 and gm.cell(3, 1).singular
    f3 = grid_compute(thue_morse_series(GF(3), 2, 12), 12)
    r = deficiency(f3)
    assert r.lower_bound >= 2 and f3.cell(4, 1).singular
    assert r.to_json()["deficiencyLowerBound"] == r.lower_bound


def test_deficiency_cross_check():
    for N in (12, 24):
        g = thue_morse_series(QQ, -1, N)
        assert deficiency(grid_compute(g, N)).lower_bound == deficiency_from_quotients(g, 8)


def test_parallel_grid_matches_serial():
    g = thue_morse_series(Zu, N=16)
    a = grid_compute(g, 16, threads=1)
    b = grid_compute(g, 16, threads=2)
    assert a.to_csv() == b.to_csv()
