"""Tiny recursive-descent parser for polynomial and rational expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Names are looked up in a caller-supplied environment, integers are
coerced into the target domain, so ``parse_expression("t + 3/5", env, QQ)``
yields a polynomial in ``t`` over the rationals.
"""
from __future__ import annotations

import re

from .errors import DomainError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character {text[pos]!r} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, env, domain):
        self.toks = _tokenize(text)
        self.i = 0
        self.env = env
        self.domain = domain
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg):
        raise ValueError(f"{msg} in expression {self.text!r}")

    def parse(self):
        if not self.toks:
            self.fail("empty input")
        v = self.expr()
        if self.i != len(self.toks):
            self.fail(f"trailing token {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.unary()
            v = v * w if op == "*" else self.divide(v, w)
        return v

    def divide(self, a, b):
        if getattr(b, "var", None) == "t":
            raise DomainError("division by a polynomial in t")
        if self.domain.is_field:
            return a * (self.domain.one / self.domain.coerce(b))
        if isinstance(a, int) and isinstance(b, int) and b and a % b == 0:
            return a // b
        raise DomainError(f"cannot divide in {self.domain}")

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, k = self.take()
            if kind != "int":
                self.fail("exponent must be an integer")
            v = v ** (-k if neg else k)
        return v

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return self.domain.coerce(val) if self.domain.is_field else val
        if kind == "name":
            if val not in self.env:
                self.fail(f"unknown name {val!r}")
            return self.env[val]
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return v
        self.fail(f"unexpected token {val!r}")


def parse_expression(text: str, env: dict, domain):
    """Evaluate ``text`` with names from ``env`` and literals in ``domain``."""
    value = _Parser(text, env, domain).parse()
    return value
