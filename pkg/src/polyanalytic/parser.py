"""Text form of polyanalytic polynomials.

Grammar (no implicit multiplication, no division)::

    expr    := term (('+' | '-') term)*
    term    := '-' term | factor ('*' factor)*
    factor  := primary ('^' uint)?
    primary := 'z' | 'zbar' | 'conj(z)' | number ['i'] | 'i' | '(' expr ')'

``*`` is always the full product in PA(K); when an order bound q is given,
``lower`` reduces modulo zbar^q once, at the end.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .algebra import PolyElement, QuotientElement, add, full_mul, truncate_to_order
from .errors import InputError, ParseError

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")
_SINGLE = {"+": "plus", "-": "minus", "*": "star", "^": "caret", "(": "lparen", ")": "rparen"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int

    @property
    def value(self):
        if self.kind == "number":
            return float(self.text)
        return None


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("conj(z)", i):
            tokens.append(Token("zbar", text[i:i + 7], i, i + 7))
            i += 7
            continue
        if text.startswith("zbar", i):
            tokens.append(Token("zbar", "zbar", i, i + 4))
            i += 4
            continue
        if ch == "z":
            tokens.append(Token("z", "z", i, i + 1))
            i += 1
            continue
        if ch == "i":
            tokens.append(Token("imagunit", "i", i, i + 1))
            i += 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            tokens.append(Token("number", m.group(), i, m.end()))
            i = m.end()
            continue
        if ch in _SINGLE:
            tokens.append(Token(_SINGLE[ch], ch, i, i + 1))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


# AST nodes

@dataclass(frozen=True)
class Lit:
    value: complex


@dataclass(frozen=True)
class VarZ:
    pass


@dataclass(frozen=True)
class VarZbar:
    pass


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


class _Parser:
    def __init__(self, tokens, length):
        self.toks = tokens
        self.pos = 0
        self.length = length

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, kind=None):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.length)
        if kind is not None and tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.text!r}", tok.start)
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while (tok := self.peek()) is not None and tok.kind in ("plus", "minus"):
            self.pos += 1
            rhs = self.term()
            node = Add(node, rhs) if tok.kind == "plus" else Sub(node, rhs)
        return node

    def term(self):
        tok = self.peek()
        if tok is not None and tok.kind == "minus":
            self.pos += 1
            return Neg(self.term())
        node = self.factor()
        while (tok := self.peek()) is not None and tok.kind == "star":
            self.pos += 1
            node = Mul(node, self.factor())
        return node

    def factor(self):
        base = self.primary()
        tok = self.peek()
        if tok is not None and tok.kind == "caret":
            self.pos += 1
            exp = self.take()
            if exp.kind != "number" or not exp.text.isdigit():
                raise ParseError("exponent must be a nonnegative integer", exp.start)
            return Pow(base, int(exp.text))
        return base

    def primary(self):
        tok = self.take()
        if tok.kind == "z":
            return VarZ()
        if tok.kind == "zbar":
            return VarZbar()
        if tok.kind == "imagunit":
            return Lit(1j)
        if tok.kind == "number":
            nxt = self.peek()
            if nxt is not None and nxt.kind == "imagunit":
                self.pos += 1
                return Lit(complex(0.0, tok.value))
            return Lit(complex(tok.value, 0.0))
        if tok.kind == "lparen":
            node = self.expr()
            self.take("rparen")
            return node
        raise ParseError(f"unexpected token {tok.text!r}", tok.start)


def parse(source) -> object:
    """Parse text (or a token list) into an AST."""
    if isinstance(source, str):
        tokens, length = tokenize(source), len(source)
    else:
        tokens = list(source)
        length = tokens[-1].end if tokens else 0
    if not tokens:
        raise ParseError("empty expression", 0)
    p = _Parser(tokens, length)
    node = p.expr()
    extra = p.peek()
    if extra is not None:
        raise ParseError(f"unexpected token {extra.text!r}", extra.start)
    return node


def _lower(node) -> PolyElement:
    if isinstance(node, Lit):
        return PolyElement.constant(node.value)
    if isinstance(node, VarZ):
        return PolyElement.z()
    if isinstance(node, VarZbar):
        return PolyElement.zbar()
    if isinstance(node, Add):
        return add(_lower(node.left), _lower(node.right))
    if isinstance(node, Sub):
        return add(_lower(node.left), -_lower(node.right))
    if isinstance(node, Neg):
        return -_lower(node.operand)
    if isinstance(node, Mul):
        return full_mul(_lower(node.left), _lower(node.right))
    if isinstance(node, Pow):
        return _lower(node.base) ** node.exponent
    raise InputError(f"unknown node {node!r}")


def lower(ast, q: int | None = None):
    """Element of PA(K) for the AST, reduced modulo zbar^q when q is given."""
    f = _lower(ast)
    return f if q is None else truncate_to_order(f, q)


def parse_element(text: str, q: int | None = None):
    return lower(parse(text), q)


def interpret(ast, z):
    """Evaluate an AST directly at z, without building an element."""
    if isinstance(ast, Lit):
        return ast.value
    if isinstance(ast, VarZ):
        return z
    if isinstance(ast, VarZbar):
        return np.conj(z)
    if isinstance(ast, Add):
        return interpret(ast.left, z) + interpret(ast.right, z)
    if isinstance(ast, Sub):
        return interpret(ast.left, z) - interpret(ast.right, z)
    if isinstance(ast, Neg):
        return -interpret(ast.operand, z)
    if isinstance(ast, Mul):
        return interpret(ast.left, z) * interpret(ast.right, z)
    if isinstance(ast, Pow):
        return interpret(ast.base, z) ** ast.exponent
    raise InputError(f"unknown node {ast!r}")


def _num(x: float) -> str:
    return format(x, ".17g")


def _coeff_term(c: complex, power: int):
    """(sign, text) for c * z^power, with the sign pulled out where it is unambiguous."""
    mono = "" if power == 0 else ("z" if power == 1 else f"z^{power}")
    re_, im = c.real, c.imag
    if im == 0:
        sign, mag, body = ("-" if re_ < 0 else "+"), abs(re_), None
        if mag == 1 and mono:
            return sign, mono
        body = _num(mag)
    elif re_ == 0:
        sign, mag = ("-" if im < 0 else "+"), abs(im)
        body = "i" if mag == 1 else f"{_num(mag)}i"
    else:
        sign = "+"
        body = f"({_num(re_)}{'-' if im < 0 else '+'}{_num(abs(im))}i)"
    return sign, body if not mono else f"{body}*{mono}"


def _poly_text(row) -> str:
    parts = []
    for k, c in enumerate(row):
        c = complex(c)
        if c == 0:
            continue
        sign, text = _coeff_term(c, k)
        if not parts:
            parts.append(text if sign == "+" else f"-{text}")
        else:
            parts.append(f" {sign} {text}")
    return "".join(parts)


def print_canonical(f) -> str:
    """Deterministic text ``a_0(z) + (a_1(z))*zbar + (a_2(z))*zbar^2 + ...``.

    Coefficients use 17 significant digits, so parsing the text back gives
    the same element exactly.
    """
    if isinstance(f, QuotientElement):
        f = f.rep
    if f.kind != "polynomial":
        raise InputError("only polynomial-kind elements have a canonical text form")
    pieces = []
    for j, row in enumerate(f.matrix):
        text = _poly_text(row)
        if not text:
            continue
        if j == 0:
            pieces.append(text)
        else:
            zb = "zbar" if j == 1 else f"zbar^{j}"
            pieces.append(f"({text})*{zb}")
    return " + ".join(pieces) if pieces else "0"
