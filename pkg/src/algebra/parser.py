# src/algebra/parser.py
"""
Text syntax for algebra elements, e.g. ``3*x1^2*t1^-1*xi2*s1 + 1/2``.

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' ['-'] INT]
    atom   := NUMBER | NAME | '(' expr ')'

Generator names are 1-based: x<i>, t<i>, xi<i>, s<i>. Only t and s accept
negative exponents. The printer emits the canonical form that the parser
reads back unchanged.
"""

import logging
import re
from fractions import Fraction
from typing import List, Tuple

from ..utils.errors import ParseError
from .ore import MotifAlgebra, OreElement

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>xi\d+|x\d+|t\d+|s\d+)|(?P<op>[-+*^()]))")
_NAME = re.compile(r"(xi|x|t|s)(\d+)")


def _tokenize(text: str) -> List[Tuple[str, str]]:
    text = text.replace("−", "-")
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at position {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, algebra: MotifAlgebra):
        self.text = text
        self.algebra = algebra
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or 'a token'} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> OreElement:
        if not self.tokens:
            raise ParseError("empty element string")
        result = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return result

    def expr(self) -> OreElement:
        negate = False
        if self.peek() == ("op", "-"):
            self.take()
            negate = True
        result = self.term()
        if negate:
            result = -result
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> OreElement:
        result = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> OreElement:
        base, name = self.atom()
        if self.peek() != ("op", "^"):
            return base
        self.take()
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        kind, value = self.take()
        if kind != "num" or "/" in value:
            raise ParseError(f"exponent must be an integer in {self.text!r}")
        n = sign * int(value)
        if n >= 0:
            return base ** n
        if name is None or name[0] not in ("t", "s"):
            raise ParseError(f"negative exponent on {name or 'an expression'} in {self.text!r}")
        return self._generator(name[0], name[1], -1) ** (-n)

    def atom(self):
        kind, value = self.peek()
        if kind == "num":
            self.take()
            return self.algebra.scalar(Fraction(value)), None
        if kind == "name":
            self.take()
            prefix, index = _NAME.fullmatch(value).groups()
            return self._generator(prefix, int(index), 1), (prefix, int(index))
        if (kind, value) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take(")")
            return inner, None
        raise ParseError(f"unexpected token {value!r} in {self.text!r}")

    def _generator(self, prefix: str, index: int, power: int) -> OreElement:
        alg = self.algebra
        bound = {"x": alg.nx, "t": alg.nt, "xi": alg.nxi, "s": alg.ns}[prefix]
        if not 1 <= index <= bound:
            raise ParseError(f"generator {prefix}{index} not in algebra with {bound} {prefix}-generators")
        if prefix in ("t", "s"):
            return alg.gen((prefix, index - 1, power))
        return alg.gen((prefix, index - 1))


def parse_element(text: str, algebra: MotifAlgebra) -> OreElement:
    return _Parser(str(text), algebra).parse()


def _format_monomial(m) -> str:
    parts = []
    for prefix, exps in zip(("x", "t", "xi", "s"), m):
        for i, e in enumerate(exps):
            if e:
                parts.append(f"{prefix}{i + 1}" if e == 1 else f"{prefix}{i + 1}^{e}")
    return "*".join(parts)


def _sort_key(m):
    total = sum(m[0]) + sum(abs(b) for b in m[1]) + sum(m[2]) + sum(abs(d) for d in m[3])
    return (total, tuple(v for block in m for v in block))


def format_element(element: OreElement) -> str:
    """Canonical printer: terms by (total degree, exponents) descending, constant last."""
    if element.is_zero():
        return "0"
    pieces = []
    for m in sorted(element.terms, key=_sort_key, reverse=True):
        c = element.terms[m]
        body = _format_monomial(m)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        pieces.append((c < 0, text))
    first_neg, first = pieces[0]
    out = ("-" if first_neg else "") + first
    for neg, text in pieces[1:]:
        out += (" - " if neg else " + ") + text
    return out
