"""Parser and printer for polynomial expressions in the generators.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := "-" factor | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | "v" | "q" | "qb" | "B" | "a" | gen | "(" expr ")"
    gen    := ("t" | "s") DIGITS | ("t" | "s") "[" INT ("," INT)* "]"

``qb`` is ``1/q``, ``B`` is beta and ``a`` is alpha.  Digit shorthand reads
one index per digit; the bracket form allows indices above 9.  Indices must
increase strictly, except that ``s_ii`` (for instance ``s11``) is accepted and
expands to ``alpha - beta t_i^2``.

>>> from planarskein.expr import parse, parse_poly, to_string
>>> parse_poly("q*s23*s12 - qb*s12*s23")
-q^-1*s12*s23 + q*s23*s12
>>> to_string(parse("-(t1 + s[2,10])^2"))
'-(t1 + s[2,10])^2'
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ncpoly import NCPoly, gen
from .ring import ALPHA, BETA, Q, QBAR, V, ScalarR

__all__ = ["ExprError", "parse", "to_string", "to_poly", "parse_poly"]


class ExprError(ValueError):
    def __init__(self, msg: str, pos: int | None = None):
        super().__init__(msg if pos is None else f"{msg} at position {pos}")
        self.pos = pos


_SYMBOLS = {"v": V, "q": Q, "qb": QBAR, "B": BETA, "a": ALPHA}

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<gen>[ts])(?:(?P<digits>\d+)|\[(?P<list>[^\]]*)\])?|(?P<sym>qb|[vqBa])|(?P<op>[-+*^()]))"
)


@dataclass(frozen=True)
class Tok:
    kind: str
    value: object
    pos: int


def tokenize(text: str) -> list:
    out = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ExprError(f"unexpected character {text[i]!r}", i)
        start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        if m.group("int") is not None:
            out.append(Tok("int", int(m.group("int")), start))
        elif m.group("gen") is not None:
            kind = m.group("gen")
            if m.group("digits") is not None:
                idx = tuple(int(c) for c in m.group("digits"))
            elif m.group("list") is not None:
                try:
                    idx = tuple(int(x) for x in m.group("list").split(","))
                except ValueError:
                    raise ExprError(f"bad index list [{m.group('list')}]", start) from None
            else:
                raise ExprError(f"generator {kind} needs indices", start)
            out.append(Tok("gen", (kind, _check_indices(kind, idx, start)), start))
        elif m.group("sym") is not None:
            out.append(Tok("sym", m.group("sym"), start))
        else:
            out.append(Tok(m.group("op"), None, start))
        i = m.end()
        # an identifier glued to letters (e.g. "qq", "tx") is an error
        if i < n and text[i].isalpha() and out[-1].kind in ("sym", "gen"):
            raise ExprError(f"unknown identifier near {text[start:i + 1]!r}", start)
    out.append(Tok("end", None, n))
    return out


def _check_indices(kind: str, idx: tuple, pos: int) -> tuple:
    if any(i < 1 for i in idx):
        raise ExprError("indices start at 1", pos)
    if kind == "s" and len(idx) < 2:
        raise ExprError("s needs at least two indices", pos)
    if kind == "s" and len(idx) == 2 and idx[0] == idx[1]:
        return idx
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ExprError(f"indices must increase strictly in {kind}{list(idx)}", pos)
    return idx


# AST: ("int", n) ("sym", name) ("gen", kind, idx) ("neg", x) ("add"|"sub"|"mul", x, y) ("pow", x, k)


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Tok:
        return self.toks[self.i]

    def take(self, kind: str | None = None) -> Tok:
        t = self.toks[self.i]
        if kind is not None and t.kind != kind:
            raise ExprError(f"expected {kind!r}, found {t.kind!r}", t.pos)
        self.i += 1
        return t

    def expr(self):
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind == "*":
            self.take()
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        if self.peek().kind == "-":
            self.take()
            return ("neg", self.factor())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek().kind == "^":
            self.take()
            sign = 1
            if self.peek().kind == "-":
                self.take()
                sign = -1
            node = ("pow", node, sign * self.take("int").value)
        return node

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return ("int", t.value)
        if t.kind == "sym":
            return ("sym", t.value)
        if t.kind == "gen":
            return ("gen", t.value[0], t.value[1])
        if t.kind == "(":
            node = self.expr()
            self.take(")")
            return node
        raise ExprError(f"unexpected {t.kind!r}", t.pos)


def parse(text: str):
    """Parse to an AST of nested tuples."""
    p = _Parser(text)
    node = p.expr()
    if p.peek().kind != "end":
        raise ExprError(f"trailing input {p.peek().kind!r}", p.peek().pos)
    return node


_PREC = {"add": 1, "sub": 1, "mul": 2, "neg": 3, "pow": 4}


def _atom_prec(node) -> int:
    return _PREC.get(node[0], 5)


def to_string(node) -> str:
    """Canonical text; ``parse(to_string(x)) == x`` for every AST."""

    def wrap(x, need: int) -> str:
        s = to_string(x)
        return f"({s})" if _atom_prec(x) < need else s

    k = node[0]
    if k == "int":
        return str(node[1])
    if k == "sym":
        return node[1]
    if k == "gen":
        kind, idx = node[1], node[2]
        if all(i <= 9 for i in idx):
            return kind + "".join(map(str, idx))
        return f"{kind}[{','.join(map(str, idx))}]"
    if k == "neg":
        return "-" + wrap(node[1], 3)
    if k == "pow":
        return f"{wrap(node[1], 5)}^{node[2]}"
    op = {"add": " + ", "sub": " - ", "mul": "*"}[k]
    lp = 1 if k != "mul" else 2
    return wrap(node[1], lp) + op + wrap(node[2], lp + 1)


def to_poly(node) -> NCPoly:
    k = node[0]
    if k == "int":
        return NCPoly.const(node[1])
    if k == "sym":
        return NCPoly.const(_SYMBOLS[node[1]])
    if k == "gen":
        return gen(node[1], node[2])
    if k == "neg":
        return -to_poly(node[1])
    if k == "pow":
        base = to_poly(node[1])
        if node[2] < 0 and not (set(base.terms) <= {()}):
            raise ExprError("negative exponent on a non-scalar")
        if node[2] < 0 and base.terms and not base.terms[()].is_unit():
            raise ExprError(f"{base!r} is not invertible in R")
        return base ** node[2]
    a, b = to_poly(node[1]), to_poly(node[2])
    if k == "add":
        return a + b
    if k == "sub":
        return a - b
    return a * b


def parse_poly(text: str) -> NCPoly:
    return to_poly(parse(text))


def parse_scalar(text: str) -> ScalarR:
    p = parse_poly(text)
    if not set(p.terms) <= {()}:
        raise ExprError("expected a scalar expression")
    return p.terms.get((), ScalarR(0))
