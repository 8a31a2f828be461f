"""Tokenizer and recursive-descent parser for polynomial expressions.

Grammar (shared with the script language)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ['^' INT]
    atom   := INT | IDENT | '(' expr ')'
"""

import re
from dataclasses import dataclass

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|[-+*^()\[\]{},/=:;.])
  | (?P<str>"[^"\n]*")
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None, expected=()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        where = f" at line {line}, column {col}" if line is not None else ""
        exp = f" (expected {' | '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message}{where}{exp}")


@dataclass(frozen=True)
class Token:
    kind: str  # int, ident, op, str, eof
    value: str
    line: int
    col: int


def tokenize(text):
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self, k=0):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def at(self, value, kind=None):
        tok = self.peek()
        return tok.value == value and (kind is None or tok.kind == kind) and tok.kind != "str"

    def accept(self, value):
        if self.at(value):
            return self.next()
        return None

    def expect(self, *values):
        tok = self.peek()
        if tok.kind != "str" and tok.value in values:
            return self.next()
        self.error(f"unexpected {describe(tok)}", values)

    def expect_kind(self, kind, what=None):
        tok = self.peek()
        if tok.kind == kind:
            return self.next()
        self.error(f"unexpected {describe(tok)}", (what or kind,))

    def error(self, message, expected=()):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.col, expected)


def describe(tok):
    if tok.kind == "eof":
        return "end of input"
    return f"{tok.kind} {tok.value!r}"


class ExprParser:
    """Parses expressions into polynomials of ``ring``.

    ``resolve(name)`` maps an identifier to a polynomial; by default it looks
    the name up among the ring's variables.
    """

    def __init__(self, stream, ring, resolve=None):
        self.s = stream
        self.ring = ring
        self.resolve = resolve or self._variable

    def _variable(self, tok):
        if tok.value not in self.ring.names:
            raise ParseError(f"unknown variable {tok.value!r}", tok.line, tok.col)
        return self.ring.gen(tok.value)

    def expr(self):
        s = self.s
        neg = False
        if s.accept("-"):
            neg = True
        else:
            s.accept("+")
        acc = self.term()
        if neg:
            acc = -acc
        while s.at("+") or s.at("-"):
            op = s.next().value
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.s.accept("*"):
            acc = acc * self.factor()
        return acc

    def factor(self):
        if self.s.accept("-"):
            return -self.factor()
        base = self.atom()
        if self.s.accept("^"):
            tok = self.s.expect_kind("int", "integer exponent")
            base = base ** int(tok.value)
        return base

    def atom(self):
        s = self.s
        tok = s.peek()
        if tok.kind == "int":
            s.next()
            return self.ring.const(int(tok.value))
        if tok.kind == "ident":
            s.next()
            return self.resolve(tok)
        if s.accept("("):
            e = self.expr()
            s.expect(")")
            return e
        s.error(f"unexpected {describe(tok)}", ("integer", "identifier", "("))


def parse_polynomial(text, ring):
    """Parse ``text`` such as ``"3*x^2*y + u - 1"`` into an element of ``ring``."""
    s = TokenStream(tokenize(text))
    f = ExprParser(s, ring).expr()
    if s.peek().kind != "eof":
        s.error(f"unexpected {describe(s.peek())}", ("+", "-", "*", "^", "end of input"))
    return f
