"""Reader and writer for generator lists such as ``(u)/(u'); (u + u')``.

Grammar::

    input    := gen (';' gen)* [';']
    gen      := '(' expr ')' ['/' '(' expr ')']
    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ['^' uint]
    base     := rational | uvar | '(' expr ')'
    uvar     := 'u' "'"* | 'u^(' uint ')'
    rational := uint ['/' uint]
"""

from __future__ import annotations

from fractions import Fraction

from .diffring import u_poly
from .errors import InputSyntaxError
from .poly import SparsePoly, render
from .prolongation import GeneratorInput

MAX_EXPONENT = 64


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def where(self, pos: int | None = None) -> tuple:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg: str, pos: int | None = None):
        line, col = self.where(pos)
        return InputSyntaxError(msg, line, col)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, s: str) -> bool:
        self.skip()
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str) -> None:
        if not self.accept(s):
            found = self.peek() or "end of input"
            raise self.error(f"expected '{s}', found '{found}'")

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an unsigned integer")
        return int(self.text[start:self.pos])

    # grammar

    def generators(self) -> list:
        gens = [self.gen()]
        while self.accept(";"):
            if self.peek() == "":
                break
            gens.append(self.gen())
        if self.peek():
            raise self.error(f"unexpected '{self.peek()}'")
        return gens

    def gen(self) -> tuple:
        self.expect("(")
        num = self.expr()
        self.expect(")")
        den = SparsePoly.const(1)
        if self.accept("/"):
            self.expect("(")
            den = self.expr()
            self.expect(")")
        return num, den

    def expr(self) -> SparsePoly:
        neg = self.accept("-")
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            if self.accept("+"):
                acc = acc + self.term()
            elif self.accept("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> SparsePoly:
        acc = self.factor()
        while self.accept("*"):
            acc = acc * self.factor()
        return acc

    def factor(self) -> SparsePoly:
        base = self.base()
        if self.peek() == "^":
            save = self.pos
            self.accept("^")
            if self.peek() == "(":
                raise self.error("derivative notation '^(k)' applies to u only", save)
            k = self.uint()
            if k > MAX_EXPONENT:
                raise self.error(f"exponent {k} exceeds {MAX_EXPONENT}", save)
            base = base ** k
        return base

    def base(self) -> SparsePoly:
        c = self.peek()
        if c.isdigit():
            num = self.uint()
            if self.peek() == "/" and self._digit_follows():
                self.accept("/")
                den = self.uint()
                if den == 0:
                    raise self.error("zero denominator in rational constant")
                return SparsePoly.const(Fraction(num, den))
            return SparsePoly.const(num)
        if c == "u":
            self.pos += 1
            if self.text.startswith("^(", self.pos):
                self.pos += 2
                k = self.uint()
                self.expect(")")
                return u_poly(k)
            k = 0
            while self.pos < len(self.text) and self.text[self.pos] == "'":
                k += 1
                self.pos += 1
            return u_poly(k)
        if c == "(":
            self.accept("(")
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.error(f"unexpected '{c}'" if c else "unexpected end of input")

    def _digit_follows(self) -> bool:
        i = self.pos + 1
        while i < len(self.text) and self.text[i].isspace():
            i += 1
        return i < len(self.text) and self.text[i].isdigit()


def parse_pairs(text: str) -> list:
    """Unreduced ``(P, Q)`` pairs exactly as written."""
    return _Reader(text).generators()


def parse_input(text: str) -> GeneratorInput:
    """Parse, validate and reduce a generator list."""
    return GeneratorInput.from_pairs(parse_pairs(text))


def parse_poly(text: str) -> SparsePoly:
    r = _Reader(text)
    p = r.expr()
    if r.peek():
        raise r.error(f"unexpected '{r.peek()}'")
    return p


def render_pair(p: SparsePoly, q: SparsePoly) -> str:
    if q == 1:
        return f"({render(p)})"
    return f"({render(p)})/({render(q)})"


def render_input(gens: GeneratorInput) -> str:
    return "; ".join(render_pair(p, q) for p, q in gens.pairs)
