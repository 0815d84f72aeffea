"""Binary digit statistics of non-negative integers.

``tau2`` counts binary ones, ``v2`` is the ordinary 2-adic valuation
(largest ``k`` with ``2**k | n``) and ``sigma`` is the running sum of
``tau2``.  Formulas that are usually written with a degree-style valuation
``-v2(n)`` are restated here in terms of ``v2``.
"""
from __future__ import annotations

from typing import NamedTuple, Optional

from .errors import UndefinedInputError


class TwoAdicStats(NamedTuple):
    tau2: int
    v2: Optional[int]


def tau2(n: int) -> int:
    if n < 0:
        raise UndefinedInputError(f"tau2 is defined for n >= 0, got {n}")
    return bin(n).count("1")


def v2(n: int) -> int:
    if n <= 0:
        raise UndefinedInputError(f"v2 is defined for n >= 1, got {n}")
    return (n & -n).bit_length() - 1


def two_adic_stats(n: int) -> TwoAdicStats:
    """Return ``(tau2, v2)``; ``v2`` is None for ``n == 0``."""
    return TwoAdicStats(tau2(n), v2(n) if n > 0 else None)


def sigma(n: int) -> int:
    """Sum of tau2(i) for 1 <= i <= n, and 0 for n <= 0.

    Counted bit by bit: bit ``b`` is set in ``2**b`` of every ``2**(b+1)``
    consecutive integers.
    """
    if n <= 0:
        return 0
    total = 0
    count = n + 1  # integers 0..n
    b = 0
    while (1 << b) <= n:
        block = 1 << (b + 1)
        total += (count // block) * (1 << b) + max(0, count % block - (1 << b))
        b += 1
    return total


def phi(m: int) -> int:
    """Map ``m`` to ``(odd part of m - 1) / 2``.

    On ``{l+1, ..., 2l+1}`` this is a bijection onto ``{0, ..., l}`` and
    ``tau2(m) == tau2(phi(m)) + 1``.
    """
    if m <= 0:
        raise UndefinedInputError(f"phi is defined for m >= 1, got {m}")
    return ((m >> v2(m)) - 1) // 2
