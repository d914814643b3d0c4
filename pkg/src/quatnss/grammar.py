"""Text grammar for polynomials, quaternions, rows and matrices, and the canonical printer.

    expr   := term (("+" | "-") term)*
    term   := factor (["*"] factor)*        juxtaposition: see below
    factor := ("-" | "+") factor | atom ["^" INT]
    atom   := NUMBER | NAME | "(" expr ")"
    row    := "(" expr ("," expr)+ ")"
    matrix := "[" expr ("," expr)* (";" expr ("," expr)*)* "]"

NUMBER is an integer or a rational literal such as 3/2.  NAME is a unit
(i, j, k), a variable x1, x2, ... (aliases x, y, z), or a real coordinate
y{i}_{c} of a quaternion variable.  In the commutative rings juxtaposition is
only allowed after a numeric literal (2i, 3x1); in the free ring H any two
factors may be juxtaposed and their order is kept.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ncpoly import NCPoly, format_ncpoly
from .poly import Poly, QPoly, default_names, format_poly, format_qpoly, phi_names
from .quat import BASIS, Quaternion, format_quaternion

PARSE_RINGS = ("auto", "Q", "Hc", "H")
ALIASES = {"x": 0, "y": 1, "z": 2}
UNIT_NAMES = {"i": 1, "j": 2, "k": 3}

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()\[\],;]))")
_XVAR = re.compile(r"x([1-9]\d*)$")
_YVAR = re.compile(r"y([1-9]\d*)_([1-4])$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: Sequence[str] = ()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        text = f"line {line}, column {column}: {message}"
        if self.expected:
            text += " (expected one of: " + ", ".join(self.expected) + ")"
        super().__init__(text)


@dataclass(frozen=True)
class Token:
    kind: str  # num | name | op | eof
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while True:
        m = _TOKEN.match(text, pos)
        ws_end = pos
        while ws_end < len(text) and text[ws_end].isspace():
            if text[ws_end] == "\n":
                line, line_start = line + 1, ws_end + 1
            ws_end += 1
        if ws_end >= len(text):
            tokens.append(Token("eof", "", line, ws_end - line_start + 1))
            return tokens
        if m is None:
            raise ParseError(f"unexpected character {text[ws_end]!r}", line, ws_end - line_start + 1)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), line, m.start(kind) - line_start + 1))
        pos = m.end()


# AST nodes are tuples (tag, token, *payload).


def _numeric(node) -> bool:
    return node[0] == "num" or (node[0] == "neg" and _numeric(node[2]))


class _Parser:
    def __init__(self, text: str, free: bool):
        self.tokens = tokenize(text)
        self.pos = 0
        self.free = free

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def error(self, message: str, expected=()):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"{message}, found {found}", t.line, t.column, expected)

    def is_op(self, s: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == s

    def expect_op(self, s: str, also=()):
        if not self.is_op(s):
            self.error("unexpected token", (f"'{s}'",) + tuple(also))
        return self.advance()

    def starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("num", "name") or (t.kind == "op" and t.text == "(")

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            t = self.advance()
            node = ("add" if t.text == "+" else "sub", t, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while True:
            if self.is_op("*"):
                t = self.advance()
                node = ("mul", t, node, self.factor())
            elif self.starts_atom():
                if not (self.free or _numeric(node)):
                    self.error("missing operator", ("'*'", "'+'", "'-'"))
                node = ("mul", self.tok, node, self.factor())
            else:
                return node

    def factor(self):
        if self.tok.kind == "op" and self.tok.text in "+-":
            t = self.advance()
            inner = self.factor()
            return inner if t.text == "+" else ("neg", t, inner)
        base = self.atom()
        if self.is_op("^"):
            self.advance()
            t = self.tok
            if t.kind != "num" or "/" in t.text:
                self.error("exponent must be a nonnegative integer", ("INTEGER",))
            self.advance()
            return ("pow", t, base, int(t.text))
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            num, _, den = t.text.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", t.line, t.column)
            return ("num", t, Fraction(int(num), int(den) if den else 1))
        if t.kind == "name":
            self.advance()
            return self.name(t)
        if self.is_op("("):
            self.advance()
            node = self.expr()
            self.expect_op(")", ("'+'", "'-'", "'*'"))
            return node
        self.error("expected a term", ("NUMBER", "NAME", "'('", "'-'"))

    def name(self, t: Token):
        s = t.text
        if s in UNIT_NAMES:
            return ("unit", t, UNIT_NAMES[s])
        if s in ALIASES:
            return ("var", t, "x", ALIASES[s])
        m = _XVAR.match(s)
        if m:
            return ("var", t, "x", int(m.group(1)) - 1)
        m = _YVAR.match(s)
        if m:
            return ("var", t, "y", 4 * (int(m.group(1)) - 1) + int(m.group(2)) - 1)
        raise ParseError(f"unknown name {s!r}", t.line, t.column, ("i", "j", "k", "x1..xd", "y{i}_{c}"))

    def end(self):
        if self.tok.kind != "eof":
            self.error("unexpected trailing input", ("end of input", "'+'", "'-'", "'*'"))

    def document(self):
        """Top level: ('poly', ast) | ('row', [ast]) | ('matrix', [[ast]])."""
        if self.is_op("["):
            self.advance()
            rows = [[self.expr()]]
            while True:
                if self.is_op(","):
                    self.advance()
                    rows[-1].append(self.expr())
                elif self.is_op(";"):
                    self.advance()
                    rows.append([self.expr()])
                else:
                    self.expect_op("]", ("','", "';'"))
                    break
            self.end()
            return ("matrix", rows)
        if self.is_op("("):
            save = self.pos
            self.advance()
            items = [self.expr()]
            while self.is_op(","):
                self.advance()
                items.append(self.expr())
            if len(items) > 1:
                self.expect_op(")", ("','",))
                self.end()
                return ("row", items)
            self.pos = save
        node = self.expr()
        self.end()
        return ("poly", node)


def _walk(node):
    yield node
    for child in node[2:]:
        if isinstance(child, tuple):
            yield from _walk(child)


def _scan(nodes) -> tuple[bool, set, int]:
    """(uses units, variable styles, number of variables needed)."""
    units, styles, need = False, set(), 0
    for root in nodes:
        for n in _walk(root):
            if n[0] == "unit":
                units = True
            elif n[0] == "var":
                styles.add(n[2])
                need = max(need, n[3] + 1)
    if "y" in styles:
        need = -(-need // 4) * 4
    return units, styles, need


def _check_styles(nodes, ring: str):
    first = {}
    for root in nodes:
        for n in _walk(root):
            if n[0] == "var":
                first.setdefault(n[2], n[1])
    if len(first) > 1:
        t = first["y"]
        raise ParseError("mixed-ring expression: x-variables and y-coordinates together", t.line, t.column)
    if ring == "H" and "y" in first:
        t = first["y"]
        raise ParseError("mixed-ring expression: real coordinates in an H[x] expression", t.line, t.column)


class _Builder:
    def __init__(self, ring: str, nvars: int):
        self.ring, self.nvars = ring, nvars

    def const(self, q):
        if self.ring == "Q":
            return Poly.constant(q, self.nvars)
        if self.ring == "Hc":
            return QPoly.from_quaternion(q, self.nvars)
        return NCPoly.constant(q, self.nvars)

    def build(self, node):
        tag, t = node[0], node[1]
        if tag == "num":
            return self.const(node[2])
        if tag == "unit":
            if self.ring == "Q":
                raise ParseError(f"mixed-ring expression: unit {t.text!r} in a rational expression",
                                 t.line, t.column)
            return self.const(BASIS[node[2]])
        if tag == "var":
            idx = node[3]
            if self.ring == "Q":
                return Poly.var(idx, self.nvars)
            if self.ring == "Hc":
                return QPoly.var(idx, self.nvars)
            return NCPoly.var(idx, self.nvars)
        if tag == "neg":
            return -self.build(node[2])
        if tag == "pow":
            return self.build(node[2]) ** node[3]
        a, b = self.build(node[2]), self.build(node[3])
        if tag == "add":
            return a + b
        if tag == "sub":
            return a - b
        return a * b


def _resolve(nodes, ring: str, nvars: int | None, first_token: Token):
    if ring not in PARSE_RINGS:
        raise ValueError(f"ring must be one of {PARSE_RINGS}, got {ring!r}")
    units, _, need = _scan(nodes)
    _check_styles(nodes, ring)
    if ring == "auto":
        ring = "Hc" if units else "Q"
    if nvars is None:
        nvars = need
    elif need > nvars:
        raise ParseError(f"expression uses {need} variables but only {nvars} are declared",
                         first_token.line, first_token.column)
    return ring, nvars


def parse(text: str, ring: str = "auto", nvars: int | None = None):
    """Parse a polynomial, a row (tuple) or a matrix (MatPoly)."""
    from .mring import MatPoly

    p = _Parser(text, free=(ring == "H"))
    kind, body = p.document()
    flat = [body] if kind == "poly" else body if kind == "row" else [x for r in body for x in r]
    ring, nvars = _resolve(flat, ring, nvars, p.tokens[0])
    b = _Builder(ring, nvars)
    if kind == "poly":
        return b.build(body)
    if kind == "row":
        return tuple(b.build(x) for x in body)
    rows = [tuple(b.build(x) for x in r) for r in body]
    if any(len(r) != len(rows[0]) for r in rows):
        t = p.tokens[0]
        raise ParseError("matrix rows have different lengths", t.line, t.column)
    return MatPoly(ring, nvars, tuple(rows))


def parse_expression(text: str, ring: str = "auto", nvars: int | None = None):
    return parse(text, ring, nvars)


def parse_row(text: str, ring: str = "auto", nvars: int | None = None) -> tuple:
    """A row vector; a bare polynomial is a row of length 1, a one-row matrix is its row."""
    from .mring import MatPoly

    v = parse(text, ring, nvars)
    if isinstance(v, MatPoly):
        if v.shape[0] != 1:
            raise ValueError("expected a row, got a matrix with several rows")
        return v.entries[0]
    if isinstance(v, tuple):
        return v
    return (v,)


def parse_quaternion(text: str) -> Quaternion:
    v = parse(text, "Hc", 0)
    if not isinstance(v, QPoly):
        raise ValueError(f"not a quaternion: {text!r}")
    return v.evaluate(())


def parse_point(text: str) -> tuple:
    """Comma-separated quaternion coordinates, optionally parenthesized."""
    if not text.strip():
        return ()
    t = text.strip()
    if not t.startswith(("(", "[")):
        t = "(" + t + ")"
    v = parse_row(t, "Hc", 0)
    return tuple(x.evaluate(()) for x in v)


# ---------------------------------------------------------------------------
# Printing


def format_value(x, names: Sequence[str] | None = None) -> str:
    from .mring import MatPoly

    if isinstance(x, MatPoly):
        return format_matrix(x, names)
    if isinstance(x, tuple):
        return "(" + ", ".join(format_value(e, names) for e in x) + ")"
    if isinstance(x, Poly):
        return format_poly(x, names)
    if isinstance(x, QPoly):
        return format_qpoly(x, names)
    if isinstance(x, NCPoly):
        return format_ncpoly(x, names)
    if isinstance(x, (Quaternion, int, Fraction)):
        return format_quaternion(Quaternion.coerce(x))
    raise TypeError(f"cannot format {type(x).__name__}")


def format_matrix(m, names: Sequence[str] | None = None) -> str:
    return "[" + "; ".join(", ".join(format_value(e, names) for e in r) for r in m.entries) + "]"


def names_for(nvars: int, style: str = "x") -> list[str]:
    if style == "y":
        if nvars % 4:
            raise ValueError("y-coordinate names need a multiple of 4 variables")
        return phi_names(nvars // 4)
    return default_names(nvars)
