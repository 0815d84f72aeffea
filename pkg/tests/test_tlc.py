from fractions import Fraction

import pytest

from tlcheck.core import GF, ZU, Polynomial, UndefinedInputError
from tlcheck.hankel import build, det_exact
from tlcheck.series import thue_morse_series
from tlcheck.tlc import (CERTIFIED_UP_TO_BOUND, SYMBOLIC_CERTIFICATE, bad_evidence,
                         certify_numeric, certify_symbolic, elc_threshold,
                         finite_field_search)


def test_threshold():
    t = Polynomial.gen(ZU())
    u = ZU().gen
    assert elc_threshold(t + u, 2) == 1
    assert elc_threshold(t ** 2 + 1, 2) == 2
    assert elc_threshold(t + u, 3) == Fraction(1, 2)
    with pytest.raises(UndefinedInputError):
        elc_threshold(t + u, 1)


def test_symbolic_certificate():
    r = certify_symbolic(24)
    assert r.verdict == SYMBOLIC_CERTIFICATE
    assert r.counts["singular"] == 0 and r.counts["doublyMonic"] == r.counts["cells"] == 156
    small = certify_symbolic(4)
    assert small.counts["cells"] == 6 and small.verdict == SYMBOLIC_CERTIFICATE


def test_symbolic_fault_injection():
    g = thue_morse_series(ZU(), N=24)
    bad = g.with_coefficient(7, g[7] * 2)
    r = certify_symbolic(24, series=bad)
    assert r.verdict != SYMBOLIC_CERTIFICATE
    assert r.witnesses
    assert all(n + 2 * l >= 7 for n, l, _ in r.witnesses)


def test_numeric_runs():
    assert certify_numeric(2, 32).verdict == CERTIFIED_UP_TO_BOUND
    r = certify_numeric(-1, 8)
    assert r.verdict == "counterexample(3,1)" and r.counterexample_cell == (3, 1)
    with pytest.raises(UndefinedInputError):
        certify_numeric(1, 8)
    with pytest.raises(UndefinedInputError):
        certify_numeric(0, 8)


def test_symbolic_implies_numeric():
    assert certify_symbolic(20).verdict == SYMBOLIC_CERTIFICATE
    for uval in (Fraction(2), Fraction(-3), Fraction(1, 3), Fraction(-5, 2)):
        assert certify_numeric(uval, 20).counts["singular"] == 0


def test_report_schema():
    js = certify_numeric(2, 8).to_json()
    assert set(js) == {"version", "params", "verdict", "witnesses", "counts", "runtimeMs",
                       "coefficientTableHash"}
    assert js["params"] == {"u": "2", "domain": "Q", "N": 8, "mode": "numeric"}
    assert "runtimeMs" not in certify_numeric(2, 8).to_json(include_runtime=False)


@pytest.mark.parametrize("p,uval,cell", [(3, 2, (4, 1)), (5, 2, (16, 1)), (7, 3, (64, 1)), (3, 1, (3, 1))])
def test_finite_field_witnesses(p, uval, cell):
    w = finite_field_search(p, uval)
    assert (w.n, w.l) == cell and w.det == 0
    F = GF(p)
    g = thue_morse_series(F, uval, cell[0] + 2)
    assert det_exact(build(g, *cell)) == 0


def test_finite_field_exhaustive_and_errors():
    w = finite_field_search(3, 2, exhaustive=True)
    assert w.least is not None and w.least <= (w.n, w.l)
    with pytest.raises(UndefinedInputError):
        finite_field_search(5, 0)


def test_bad_evidence():
    assert bad_evidence(2, 200).max_quotient_degree == 1
    r = bad_evidence(-1, 200)
    assert r.max_quotient_degree == 1 and r.terms == 200 and "evidence" in r.note
    assert bad_evidence(1, 10).abort_index == 2
    with pytest.raises(UndefinedInputError):
        bad_evidence(0, 10)
