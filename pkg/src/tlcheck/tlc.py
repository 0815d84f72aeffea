"""Certification runs for the Thue-Morse family ``g_u``.

A symbolic run computes every ``det H(n, l)``, ``n + 2l <= N``, over Z[u]
and checks that each is doubly monic: such a polynomial cannot vanish at
any rational ``u`` other than 0 and -1, 1, so the covered cells are
nonsingular for all those ``u`` at once.  Numeric runs evaluate the same
grid over Q or F_p.  Scope is always the stated bound ``N``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import __version__
from .contfrac import beta_recurrence, cf_expand
from .core import (GF, QQ, ZU, DomainError, Polynomial, PrecisionError,
                   UndefinedInputError, is_doubly_monic, mult_order)
from .hankel import HankelGrid, build, det_exact, expected_degree, grid_compute
from .series import LaurentSeries, thue_morse_series

SYMBOLIC_CERTIFICATE = "symbolic-certificate"
CERTIFIED_UP_TO_BOUND = "certified-up-to-bound"
ABORTED_PRECISION = "aborted-precision"


def counterexample(n: int, l: int) -> str:
    return f"counterexample({n},{l})"


@dataclass(frozen=True)
class CertificationReport:
    u: Optional[str]
    domain: str
    N: int
    mode: str                        # "symbolic" | "numeric"
    verdict: str
    witnesses: tuple                 # ((n, l, det string), ...)
    counts: dict
    runtime_ms: int
    table_hash: str
    scope: str = ""

    @property
    def counterexample_cell(self):
        if self.verdict.startswith("counterexample("):
            n, l = self.verdict[len("counterexample("):-1].split(",")
            return int(n), int(l)
        return None

    def to_json(self, include_runtime: bool = True) -> dict:
        out = {
            "version": __version__,
            "params": {"u": self.u, "domain": self.domain, "N": self.N, "mode": self.mode},
            "verdict": self.verdict,
            "witnesses": [{"n": n, "l": l, "det": d} for n, l, d in self.witnesses],
            "counts": dict(self.counts),
            "runtimeMs": self.runtime_ms,
            "coefficientTableHash": self.table_hash,
        }
        if not include_runtime:
            del out["runtimeMs"]
        return out


def elc_threshold(P: Polynomial, d: int) -> Fraction:
    """Deficiency bound ``deg P / (d - 1)`` for the product built from ``P``."""
    if d < 2:
        raise UndefinedInputError("d must be >= 2")
    if not P or P.degree < 1:
        raise UndefinedInputError("P must have degree >= 1")
    return Fraction(int(P.degree), d - 1)


def _by_size(cells):
    return sorted(cells, key=lambda c: (c[1], c[0]))


def certify_symbolic(N: int, series: Optional[LaurentSeries] = None, threads: int = 1,
                     strategy: str = "direct") -> CertificationReport:
    """Doubly-monic certification of every cell ``n + 2l <= N`` over Z[u]."""
    start = time.perf_counter()
    dom = ZU()
    if series is None:
        series = thue_morse_series(dom, N=N)
    if series.domain != dom:
        raise DomainError("symbolic certification runs over Zu")
    if not series.is_exact and series.order < N:
        raise PrecisionError(f"series known to {series.order} < N = {N}")
    grid = grid_compute(series, N, strategy=strategy, u=dom.gen, threads=threads)
    cells = _by_size(grid.cells_within())
    singular, not_dm, bad_degree = [], [], []
    dm = 0
    for n, l in cells:
        d = grid.det(n, l)
        if not d:
            singular.append((n, l))
        elif is_doubly_monic(d):
            dm += 1
        else:
            not_dm.append((n, l))
        if d and d.degree != expected_degree(n, l):
            bad_degree.append((n, l))
    if singular:
        verdict = counterexample(*singular[0])
    elif not_dm:
        verdict = CERTIFIED_UP_TO_BOUND
    else:
        verdict = SYMBOLIC_CERTIFICATE
    witnesses = tuple((n, l, dom.render(grid.det(n, l))) for n, l in _by_size(singular + not_dm))
    counts = {"cells": len(cells), "singular": len(singular), "doublyMonic": dm,
              "degreeMismatch": len(bad_degree)}
    return CertificationReport(None, dom.name, N, "symbolic", verdict, witnesses, counts,
                               int((time.perf_counter() - start) * 1000),
                               series.table_hash(1, N),
                               f"cells n + 2l <= {N}")


def certify_numeric(u, N: int, domain=QQ, threads: int = 1) -> CertificationReport:
    """Nonsingularity of every cell ``n + 2l <= N`` at a specific ``u``.

    ``u = 0`` and ``u = 1`` are rejected; ``u = -1`` runs and reports the
    smallest singular cell as a counterexample.
    """
    start = time.perf_counter()
    uval = domain.coerce(u)
    if not uval or uval == 1:
        raise UndefinedInputError(f"u = {domain.render(uval)} is excluded (u must not be 0 or 1)")
    series = thue_morse_series(domain, uval, N)
    grid = grid_compute(series, N, u=uval, threads=threads)
    cells = _by_size(grid.cells_within())
    singular = [c for c in cells if not grid.det(*c)]
    verdict = counterexample(*singular[0]) if singular else CERTIFIED_UP_TO_BOUND
    witnesses = tuple((n, l, domain.render(grid.det(n, l))) for n, l in singular)
    counts = {"cells": len(cells), "singular": len(singular), "doublyMonic": None}
    return CertificationReport(domain.render(uval), domain.name, N, "numeric", verdict,
                               witnesses, counts,
                               int((time.perf_counter() - start) * 1000),
                               series.table_hash(1, N), f"cells n + 2l <= {N}")


@dataclass(frozen=True)
class FieldWitness:
    p: int
    u: int
    n: int
    l: int
    det: int
    least: Optional[tuple] = None    # lexicographically least singular cell, if scanned

    def to_json(self) -> dict:
        out = {"p": self.p, "u": self.u, "n": self.n, "l": self.l, "det": self.det}
        if self.least is not None:
            out["least"] = {"n": self.least[0], "l": self.least[1]}
        return out


def finite_field_search(p: int, u, exhaustive: bool = False) -> FieldWitness:
    """A singular ``H(n, 1)`` of ``g_u`` over F_p.

    ``n = 2^ord(u)`` makes ``det H(n, 1) = u^(2 tau2(n)) (u^v2(n) - 1)``
    vanish; ``u = 1`` gives the rank-one ``H(3, 1)``.  The witness is always
    recomputed by a direct determinant before being returned.
    """
    F = GF(p)
    uval = F.coerce(u)
    if not uval:
        raise UndefinedInputError("u = 0 gives a rational function; no search")
    n = 3 if uval == 1 else 2 ** mult_order(uval)
    series = thue_morse_series(F, uval, n + 2)
    det = det_exact(build(series, n, 1))
    if det:
        raise AssertionError(f"witness H({n},1) over F_{p} is not singular")
    least = None
    if exhaustive:
        bound = n + 2
        series_b = thue_morse_series(F, uval, bound)
        grid = HankelGrid(series_b, u=uval, N=bound)
        for cn, cl in sorted(grid.cells_within()):
            if not grid.det(cn, cl):
                least = (cn, cl)
                break
    return FieldWitness(p, uval.residue, n, 1, int(det.residue), least)


@dataclass(frozen=True)
class BadEvidence:
    u: str
    max_quotient_degree: int
    terms: int
    abort_index: Optional[int]
    note: str

    def to_json(self) -> dict:
        return {"u": self.u, "maxQuotientDegree": self.max_quotient_degree,
                "terms": self.terms, "abortIndex": self.abort_index, "note": self.note}


def bad_evidence(u, K: int, domain=QQ) -> BadEvidence:
    """Largest partial-quotient degree among the first ``K`` terms of ``g_u``."""
    uval = domain.coerce(u)
    if not uval:
        raise UndefinedInputError("u = 0 gives a rational function")
    rec = beta_recurrence(uval, K, domain)
    if rec.abort_index is not None and uval == 1:
        return BadEvidence(domain.render(uval), 0, rec.abort_index - 1, rec.abort_index,
                           f"recurrence aborts at beta_{rec.abort_index}")
    series = thue_morse_series(domain.fraction_field(), uval, 2 * K + 2)
    cf = cf_expand(series, K)
    terms = min(K, cf.certified_count)
    deg = max((t.degree for t in cf.terms[:terms]), default=0)
    if deg == 1 and terms == K:
        note = (f"all of the first {K} partial quotients are linear; "
                "this is evidence, not a proof, of bounded quotient degree")
    else:
        note = f"maximum partial-quotient degree {deg} over {terms} certified terms"
    return BadEvidence(domain.render(uval), deg, terms, rec.abort_index, note)
