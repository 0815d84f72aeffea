"""Generalised Thue-Morse Laurent series, their continued fractions and
Hankel determinants, with exact t-adic Littlewood certificates."""

__version__ = "0.1.0"
