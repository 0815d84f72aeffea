"""Exact arithmetic foundation: integers, rationals, prime fields,
polynomials, rational functions in ``u`` and 2-adic digit statistics."""
from .domains import GF, QQ, ZZ, Domain, parse_domain
from .errors import (CoverageError, DomainError, PrecisionError, TLCheckError,
                     UndefinedInputError)
from .parse import parse_expression
from .poly import NEG_INF, Polynomial
from .primefield import PrimeFieldElement, is_prime, mult_order
from .ratfunc import RationalFunction, is_doubly_monic, is_monic, ratfunc_normalize
from .twoadic import phi, sigma, tau2, two_adic_stats, v2


def ZU():
    """The symbolic ring Z[u]."""
    from .domains import _zu
    return _zu()


def QU():
    """The symbolic field Q(u)."""
    from .domains import _qu
    return _qu()


__all__ = [
    "GF", "QQ", "ZZ", "ZU", "QU", "Domain", "parse_domain",
    "CoverageError", "DomainError", "PrecisionError", "TLCheckError", "UndefinedInputError",
    "parse_expression", "NEG_INF", "Polynomial", "PrimeFieldElement", "is_prime",
    "mult_order", "RationalFunction", "is_doubly_monic", "is_monic", "ratfunc_normalize",
    "phi", "sigma", "tau2", "two_adic_stats", "v2",
]
