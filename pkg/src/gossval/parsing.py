"""Parser for the polynomial literal grammar used across text and JSON forms.

    poly  := term ('+' term)*
    term  := coeff | coeff '*'? mono | mono
    mono  := var ('^' nat)?
    coeff := nat | '(' poly-in-g ')'

The multivariate extension (shtuka entries over x0, x1 with z coefficients)
allows a term to be a '*'-separated product of factors.  Whitespace is
ignored.  Coefficients reduce mod p; parenthesized subexpressions are
polynomials in the field generator g and fold to a single field value.
"""

from __future__ import annotations

import re

from .fields import Fq

_TOKEN_RE = re.compile(r"\s*([0-9]+|[A-Za-z][A-Za-z0-9]*|\^|\*|\+|\(|\)|-)")


class ParseError(ValueError):
    pass


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"bad character at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, field: Fq, variables):
        self.toks = tokens
        self.i = 0
        self.field = field
        self.vars = tuple(variables)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, tok):
        t = self.take()
        if t != tok:
            raise ParseError(f"expected {tok!r}, got {t!r}")

    def parse_poly(self):
        """Return dict: exponent tuple (aligned with self.vars) -> field value."""
        acc = {}
        negate = False
        if self.peek() == "-":
            self.take()
            negate = True
        self._add_term(acc, negate)
        while self.peek() in ("+", "-"):
            negate = self.take() == "-"
            self._add_term(acc, negate)
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.toks[self.i:]}")
        return {k: v for k, v in acc.items() if v != 0}

    def _add_term(self, acc, negate):
        coeff, expo = self._parse_term()
        if negate:
            coeff = self.field.neg(coeff)
        key = tuple(expo)
        acc[key] = self.field.add(acc.get(key, 0), coeff)

    def _parse_term(self):
        F = self.field
        coeff = F.one
        expo = [0] * len(self.vars)
        saw_factor = False
        while True:
            t = self.peek()
            if t is None or t in ("+", "-", ")"):
                break
            if t == "*":
                if not saw_factor:
                    raise ParseError("term starts with '*'")
                self.take()
                nxt = self.peek()
                if nxt == "*":
                    raise ParseError("use '^' for exponents, not '**'")
                if nxt is None or nxt in ("+", "-", ")"):
                    raise ParseError("dangling '*'")
                continue
            if t == "(":
                self.take()
                coeff = F.mul(coeff, self._parse_gpoly())
                self.expect(")")
            elif t.isdigit():
                self.take()
                coeff = F.mul(coeff, F.from_int(int(t)))
            elif t in self.vars:
                self.take()
                n = 1
                if self.peek() == "^":
                    self.take()
                    nt = self.take()
                    if nt is None or not nt.isdigit():
                        raise ParseError("expected integer exponent after '^'")
                    n = int(nt)
                expo[self.vars.index(t)] += n
            elif t == "g":
                raise ParseError("generator g only allowed inside parentheses")
            else:
                raise ParseError(f"unknown variable {t!r} (allowed: {self.vars})")
            saw_factor = True
        if not saw_factor:
            raise ParseError("empty term")
        return coeff, expo

    def _parse_gpoly(self) -> int:
        """Polynomial in g between parens, folded to a packed field value."""
        F = self.field
        gval = None if F.e == 1 else F.p  # packed value of the generator
        total = 0
        while True:
            sign_neg = False
            if self.peek() == "-":
                self.take()
                sign_neg = True
            elif self.peek() == "+":
                self.take()
            coeff = F.one
            saw = False
            while True:
                t = self.peek()
                if t is None or t in ("+", "-", ")"):
                    break
                if t == "*":
                    self.take()
                elif t.isdigit():
                    self.take()
                    coeff = F.mul(coeff, F.from_int(int(t)))
                elif t == "g":
                    self.take()
                    n = 1
                    if self.peek() == "^":
                        self.take()
                        nt = self.take()
                        if nt is None or not nt.isdigit():
                            raise ParseError("expected integer exponent after '^'")
                        n = int(nt)
                    if gval is None:
                        raise ParseError("g used over a prime field")
                    coeff = F.mul(coeff, F.pow(gval, n))
                else:
                    raise ParseError(f"unexpected {t!r} inside coefficient")
                saw = True
            if not saw:
                raise ParseError("empty coefficient term")
            total = F.add(total, F.neg(coeff) if sign_neg else coeff)
            if self.peek() not in ("+", "-"):
                break
        return total


def parse_monomials(text: str, field: Fq, variables) -> dict:
    """Parse text to a dict {exponent tuple -> packed coeff}, vars aligned."""
    toks = _tokenize(text)
    return _Parser(toks, field, variables).parse_poly()


def parse_univariate(text: str, field: Fq, var: str):
    """Parse a single-variable literal to a low-to-high coefficient list."""
    mono = parse_monomials(text, field, (var,))
    if not mono:
        return []
    deg = max(k[0] for k in mono)
    out = [0] * (deg + 1)
    for (k,), v in mono.items():
        out[k] = v
    return out


def parse_univariate_flex(text: str, field: Fq, aliases=("x", "t", "theta", "T")):
    """Like parse_univariate but accepting any one of several variable names
    (the same polynomial ring is written in t at the CLI and x internally).
    Mixing two names in one literal is an error."""
    mono = parse_monomials(text, field, tuple(aliases))
    used = {i for k in mono for i, n in enumerate(k) if n}
    if len(used) > 1:
        names = sorted(aliases[i] for i in used)
        raise ParseError(f"literal mixes variables {names}; use a single name")
    out: list = []
    for k, v in mono.items():
        d = max(k) if any(k) else 0
        if d >= len(out):
            out.extend([0] * (d + 1 - len(out)))
        out[d] = field.add(out[d], v) if out[d] else v
    while out and out[-1] == 0:
        out.pop()
    return out
