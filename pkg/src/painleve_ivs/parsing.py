"""Plain-text and LaTeX forms for exact expressions.

The text grammar is the obvious one:

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom [('^'|'**') ['-'] integer]
    atom   := name | integer | '(' expr ')' | '-' atom

Names are symbol names in the shared universe (unknown names are
registered on first use).  ``poly_to_text`` emits the canonical form —
terms in descending graded-lex order — and ``parse`` inverts it, so
text round-trips exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Poly, mono_degree
from .ratfn import RatFn, rat
from .symbols import UNIVERSE, latex_of, name_of, sym

__all__ = [
    "parse",
    "parse_poly",
    "poly_to_text",
    "ratfn_to_text",
    "poly_to_latex",
    "ratfn_to_latex",
]

_TOKEN = re.compile(r"\s*(?:(\*\*|[()+\-*/^])|([A-Za-z_][A-Za-z0-9_]*)|([0-9]+))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"cannot tokenize {text[pos:pos + 20]!r}")
            break
        op, name, num = m.groups()
        if op:
            tokens.append(("op", "^" if op == "**" else op))
        elif name:
            tokens.append(("name", name))
        else:
            tokens.append(("int", int(num)))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _Parser:
    """Recursive descent into a small AST.

    The AST keeps the syntactic shape of products under a division so
    that ``1/(t*(t-1)*x)`` lands in the factored denominator as three
    separate factors rather than one expanded cubic.
    """

    def __init__(self, tokens: list):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val = self.next()
        if kind != "op" or val != op:
            raise ValueError(f"expected {op!r}, got {val!r}")

    def expr(self):
        kind, val = self.peek()
        acc = None
        if kind == "op" and val == "-":
            self.next()
            acc = ("neg", self.term())
        else:
            acc = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                acc = ("add" if val == "+" else "sub", acc, rhs)
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.factor()
                acc = ("mul" if val == "*" else "div", acc, rhs)
            else:
                return acc

    def factor(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.next()
            sign = 1
            kind, val = self.peek()
            if kind == "op" and val == "-":
                self.next()
                sign = -1
            kind, val = self.next()
            if kind != "int":
                raise ValueError("exponent must be an integer")
            return ("pow", base, sign * val)
        return base

    def atom(self):
        kind, val = self.next()
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "op" and val == "-":
            return ("neg", self.atom())
        if kind == "name":
            return ("sym", val)
        if kind == "int":
            return ("num", val)
        raise ValueError(f"unexpected token {val!r}")


def _factor_list(node, out: list, exp: int):
    """Flatten a divisor AST into (node, exponent) factor pairs."""
    op = node[0]
    if op == "mul":
        _factor_list(node[1], out, exp)
        _factor_list(node[2], out, exp)
    elif op == "pow" and node[2] >= 0:
        _factor_list(node[1], out, exp * node[2])
    else:
        out.append((node, exp))


def _eval_ast(node) -> RatFn:
    op = node[0]
    if op == "num":
        return RatFn.const(node[1])
    if op == "sym":
        return RatFn.var(sym(node[1]))
    if op == "neg":
        return -_eval_ast(node[1])
    if op == "add":
        return _eval_ast(node[1]) + _eval_ast(node[2])
    if op == "sub":
        return _eval_ast(node[1]) - _eval_ast(node[2])
    if op == "mul":
        return _eval_ast(node[1]) * _eval_ast(node[2])
    if op == "pow":
        return _eval_ast(node[1]) ** node[2]
    if op == "div":
        acc = _eval_ast(node[1])
        factors: list = []
        _factor_list(node[2], factors, 1)
        for fnode, e in factors:
            f = _eval_ast(fnode)
            if f.is_polynomial() and not f.is_const() and e > 0:
                acc = acc * RatFn(Poly.const(1), [(f.as_poly(), e)])
            else:
                acc = acc / f ** e
        return acc
    raise ValueError(f"bad AST node {op!r}")


def parse(text: str) -> RatFn:
    """Parse text into an exact rational function."""
    p = _Parser(_tokenize(text))
    ast = p.expr()
    kind, _ = p.peek()
    if kind != "end":
        raise ValueError(f"trailing input in {text!r}")
    return _eval_ast(ast)


def parse_poly(text: str) -> Poly:
    """Parse text that must denote a polynomial."""
    return parse(text).as_poly()


def _coeff_text(c: Fraction) -> str:
    return str(c)


def _mono_text(m: tuple, names=name_of, power="^{e}".format) -> str:
    parts = []
    for s, e in m:
        n = names(s)
        parts.append(n if e == 1 else f"{n}^{e}")
    return "*".join(parts)


def poly_to_text(p: Poly) -> str:
    """Canonical text: terms in descending graded-lex order."""
    if p.is_zero():
        return "0"
    pieces = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = _coeff_text(a)
        elif a == 1:
            body = _mono_text(m)
        else:
            body = f"{_coeff_text(a)}*{_mono_text(m)}"
        if k == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


def ratfn_to_text(r: RatFn) -> str:
    """Canonical text of a rational function; round-trips through parse."""
    num = poly_to_text(r.num)
    if not r.den:
        return num
    factors = []
    for f, m in r.den:
        body = f"({poly_to_text(f)})"
        factors.append(body if m == 1 else f"{body}^{m}")
    return f"({num})/({'*'.join(factors)})"


def _mono_latex(m: tuple) -> str:
    parts = []
    for s, e in m:
        n = latex_of(s)
        parts.append(n if e == 1 else f"{n}^{{{e}}}")
    return " ".join(parts)


def _coeff_latex(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def poly_to_latex(p: Poly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = _coeff_latex(a)
        elif a == 1:
            body = _mono_latex(m)
        else:
            body = f"{_coeff_latex(a)} {_mono_latex(m)}"
        if k == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


def ratfn_to_latex(r: RatFn) -> str:
    num = poly_to_latex(r.num)
    if not r.den:
        return num
    factors = []
    for f, m in r.den:
        body = f"\\left({poly_to_latex(f)}\\right)"
        factors.append(body if m == 1 else f"{body}^{{{m}}}")
    return f"\\frac{{{num}}}{{{' '.join(factors)}}}"
