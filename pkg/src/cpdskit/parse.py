"""Text grammar for polynomials and problem files.

Polynomials: identifiers, integer/rational literals, + - * ^ ( ); products
need an explicit *.  Problem files declare one ring followed by named ideals:

    ring params [a, b] vars [x, y] order lex;
    ideal I = [x^2 - a, b*x*y];
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CpdsError
from .poly import Polynomial
from .ring import GREVLEX, LEX, RingContext


class ParseError(CpdsError):
    def __init__(self, message, line, col):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


_PUNCT = "+-*^()[],;="


@dataclass
class Token:
    kind: str  # name | int | punct | end
    text: str
    line: int
    col: int


def _tokenize(text):
    toks = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("name", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(Token("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            toks.append(Token("punct", ch, line, start_col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(Token("end", "", line, col))
    return toks


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        t = self.tokens[self.pos]
        if t.kind != "end":
            self.pos += 1
        return t

    def expect(self, kind, text=None):
        t = self.peek()
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            raise ParseError(f"expected {want!r}, found {t.text or 'end of input'!r}",
                             t.line, t.col)
        return self.next()

    def fail(self, message):
        t = self.peek()
        raise ParseError(message, t.line, t.col)


# -- polynomial expressions -----------------------------------------------


def _parse_expr(cur, ring):
    node = _parse_term(cur, ring)
    while cur.peek().kind == "punct" and cur.peek().text in "+-":
        op = cur.next().text
        rhs = _parse_term(cur, ring)
        node = node + rhs if op == "+" else node - rhs
    return node


def _parse_term(cur, ring):
    node = _parse_factor(cur, ring)
    while True:
        t = cur.peek()
        if t.kind == "punct" and t.text == "*":
            cur.next()
            node = node * _parse_factor(cur, ring)
        elif t.kind == "punct" and t.text == "/":  # pragma: no cover - not in grammar
            cur.fail("division is not part of the grammar")
        elif t.kind in ("name", "int") or (t.kind == "punct" and t.text == "("):
            cur.fail("missing '*' between factors")
        else:
            return node


def _parse_factor(cur, ring):
    t = cur.peek()
    if t.kind == "punct" and t.text == "-":
        cur.next()
        return -_parse_factor(cur, ring)
    base = _parse_base(cur, ring)
    if cur.peek().kind == "punct" and cur.peek().text == "^":
        cur.next()
        e = cur.peek()
        if e.kind != "int":
            cur.fail("exponent must be a nonnegative integer")
        cur.next()
        return base ** int(e.text)
    return base


def _parse_base(cur, ring):
    t = cur.peek()
    if t.kind == "name":
        cur.next()
        if t.text not in ring._index:
            raise ParseError(f"unknown identifier {t.text!r}", t.line, t.col)
        return Polynomial.variable(ring, t.text)
    if t.kind == "int":
        cur.next()
        num = int(t.text)
        # rational literal p/q is written p/q?  grammar keeps integers only;
        # rationals arise via parenthesised division-free arithmetic, so
        # fractions are printed as (p/q) -> p * q^-1 is NOT allowed.  We accept
        # "p/q" nowhere; exact rationals print as fractions only in CLI points.
        return Polynomial.constant(ring, num)
    if t.kind == "punct" and t.text == "(":
        cur.next()
        inner = _parse_expr(cur, ring)
        cur.expect("punct", ")")
        return inner
    cur.fail(f"expected a polynomial factor, found {t.text or 'end of input'!r}")


def parse_polynomial(text, ring):
    cur = _Cursor(_tokenize(text))
    p = _parse_expr(cur, ring)
    t = cur.peek()
    if t.kind != "end":
        raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
    return p


# -- problem files ----------------------------------------------------------


@dataclass
class ProblemFile:
    ring: RingContext
    ideals: dict = field(default_factory=dict)  # name -> list[Polynomial]
    options: dict = field(default_factory=dict)

    def ideal_named(self, name=None):
        if not self.ideals:
            raise CpdsError("problem file declares no ideals")
        if name is None:
            return next(iter(self.ideals.items()))
        if name not in self.ideals:
            raise CpdsError(f"no ideal named {name!r}")
        return name, self.ideals[name]


def _parse_name_list(cur):
    cur.expect("punct", "[")
    names = []
    if not (cur.peek().kind == "punct" and cur.peek().text == "]"):
        while True:
            t = cur.expect("name")
            names.append(t.text)
            if cur.peek().kind == "punct" and cur.peek().text == ",":
                cur.next()
                continue
            break
    cur.expect("punct", "]")
    return names


def parse_problem(text):
    cur = _Cursor(_tokenize(text))
    kw = cur.expect("name")
    if kw.text != "ring":
        raise ParseError("problem file must start with a ring declaration",
                         kw.line, kw.col)
    cur.expect("name", "params")
    params = _parse_name_list(cur)
    cur.expect("name", "vars")
    variables = _parse_name_list(cur)
    if not variables:
        cur.fail("empty variable list")
    cur.expect("name", "order")
    style_tok = cur.expect("name")
    if style_tok.text not in (LEX, GREVLEX):
        raise ParseError(f"unknown order {style_tok.text!r}",
                         style_tok.line, style_tok.col)
    cur.expect("punct", ";")
    ring = RingContext(variables, params, var_order=style_tok.text)
    problem = ProblemFile(ring=ring)

    while cur.peek().kind != "end":
        head = cur.expect("name")
        if head.text == "ideal":
            name_tok = cur.expect("name")
            if name_tok.text in problem.ideals:
                raise ParseError(f"duplicate ideal name {name_tok.text!r}",
                                 name_tok.line, name_tok.col)
            cur.expect("punct", "=")
            cur.expect("punct", "[")
            gens = []
            while True:
                gens.append(_parse_expr(cur, ring))
                if cur.peek().kind == "punct" and cur.peek().text == ",":
                    cur.next()
                    continue
                break
            cur.expect("punct", "]")
            cur.expect("punct", ";")
            problem.ideals[name_tok.text] = gens
        elif head.text == "option":
            key = cur.expect("name").text
            cur.expect("punct", "=")
            val = cur.expect("int").text
            cur.expect("punct", ";")
            problem.options[key] = int(val)
        else:
            raise ParseError(f"expected 'ideal' or 'option', found {head.text!r}",
                             head.line, head.col)
    return problem


def parse_point(text, ring):
    """Parse 'a=2,b=-1/3' into a parameter assignment."""
    point = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise CpdsError(f"bad point component {chunk!r}")
        name, val = chunk.split("=", 1)
        name = name.strip()
        if name not in ring.parameters:
            raise CpdsError(f"{name!r} is not a parameter of the ring")
        point[name] = Fraction(val.strip())
    missing = [a for a in ring.parameters if a not in point]
    if missing:
        raise CpdsError(f"point misses parameters {missing}")
    return point
