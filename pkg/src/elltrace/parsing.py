"""Recursive-descent parser for the element / polynomial grammar.

Grammar (usual precedence, ``^`` binds tightest and takes a literal
nonnegative integer exponent)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary | <implicit> power)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | NAME | '(' expr ')'

Implicit multiplication applies when a factor is directly followed by a
name or an opening parenthesis, so ``2t^2``, ``3(l+1)`` and ``57/64x`` all
read the way they are written (the last one as ``(57/64)*x``).  ``**`` is
accepted as a synonym of ``^``.

The parser is generic: it evaluates with Python operators on whatever
values ``integer`` and ``symbols`` produce.
"""

import re

from .exceptions import ParseError

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "op" and value == "**":
            value = "^"
        tokens.append((kind, value, m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, integer, symbols):
        self.text = text
        self.integer = integer
        self.symbols = symbols
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, pos=None):
        if pos is None:
            pos = self.peek()[2]
        return ParseError(message, self.text, pos)

    def apply(self, op, a, b, pos):
        try:
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            if op == "/":
                return a / b
            return a ** b
        except ZeroDivisionError:
            raise self.error("division by zero", pos) from None
        except (ValueError, TypeError) as exc:
            raise self.error(str(exc), pos) from None

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.expr()
        kind, tok, pos = self.peek()
        if kind != "end":
            raise self.error(f"unexpected {tok!r}")
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, tok, pos = self.peek()
            if kind == "op" and tok in "+-":
                self.advance()
                value = self.apply(tok, value, self.term(), pos)
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            kind, tok, pos = self.peek()
            if kind == "op" and tok in "*/":
                self.advance()
                value = self.apply(tok, value, self.unary(), pos)
            elif kind == "name" or (kind == "op" and tok == "("):
                value = self.apply("*", value, self.power(), pos)
            else:
                return value

    def unary(self):
        kind, tok, pos = self.peek()
        if kind == "op" and tok in "+-":
            self.advance()
            operand = self.unary()
            return operand if tok == "+" else self.apply("-", self.integer(0), operand, pos)
        return self.power()

    def power(self):
        base = self.atom()
        kind, tok, pos = self.peek()
        if kind == "op" and tok == "^":
            self.advance()
            ekind, etok, epos = self.advance()
            if ekind != "int":
                raise self.error("exponent must be a nonnegative integer literal", epos)
            return self.apply("^", base, int(etok), pos)
        return base

    def atom(self):
        kind, tok, pos = self.advance()
        if kind == "int":
            return self.integer(int(tok))
        if kind == "name":
            if tok not in self.symbols:
                raise self.error(f"unknown symbol {tok!r}", pos)
            return self.symbols[tok]
        if kind == "op" and tok == "(":
            value = self.expr()
            ckind, ctok, cpos = self.advance()
            if not (ckind == "op" and ctok == ")"):
                raise self.error("expected ')'", cpos)
            return value
        if kind == "end":
            raise self.error("unexpected end of input", pos)
        raise self.error(f"unexpected {tok!r}", pos)


def evaluate(text, integer, symbols):
    """Parse ``text`` and evaluate it.

    ``integer`` maps a Python int to a value of the target algebra and
    ``symbols`` maps allowed names to values.  Any failure is raised as
    :class:`ParseError` carrying the offending position.
    """
    return _Parser(text, integer, symbols).parse()


def split_top_level(text, sep=","):
    """Split on ``sep`` occurrences that are not nested in parentheses."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts
