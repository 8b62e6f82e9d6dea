"""Recursive-descent parser for multivector expressions.

Grammar::

    expr  := term (('+' | '-') term)*
    term  := unary ('*' unary)*
    unary := ('-' | '+') unary | atom ['^' ['-'] int]
    atom  := number ['/' int] | 'i' | blade | func '(' args ')' | '(' expr ')'
    blade := 'e' digits            (n <= 9 only; each digit is one index)
           | 'e{' int (',' int)* '}'
    func  := rev | gi | cj | inv | psi | chi | proj

``proj`` takes a grade set first: ``proj({0,2,n}, x)``; ``n`` stands for the
top grade.  The identity element is written ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .algebra import Multivector, Signature, SubspaceSpec
from .errors import IndexOutOfRange, ParseError
from .scalars import I

__all__ = ["parse_expression", "evaluate", "Expr", "Lit", "Blade", "Neg", "BinOp", "Pow", "Call"]

FUNCTIONS = ("rev", "gi", "cj", "inv", "psi", "chi", "proj")


class Expr:
    pass


@dataclass(frozen=True)
class Lit(Expr):
    value: object


@dataclass(frozen=True)
class Blade(Expr):
    indices: tuple[int, ...]


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Call(Expr):
    name: str
    args: tuple
    grades: frozenset | None = None


_ATOM = {"number", "blade", "function", "'('", "'i'"}
_UNARY = _ATOM | {"'-'", "'+'"}


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.text = text
        self.sig = sig
        self.pos = 0

    # -- scanning ------------------------------------------------------------
    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, msg, expected, offset=None, cls=ParseError):
        off = self.pos if offset is None else offset
        raise cls(msg, len(self.text[:off].encode()), expected)

    def expect(self, ch: str):
        if self.peek() != ch:
            self.fail(f"expected {ch!r}", {f"'{ch}'"})
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected an integer", {"integer"})
        return int(self.text[start:self.pos])

    def word(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalpha() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]

    # -- grammar -------------------------------------------------------------
    def parse(self) -> Expr:
        if not self.text.strip():
            self.fail("empty expression", _UNARY)
        node = self.expr()
        if self.peek():
            self.fail(f"unexpected {self.peek()!r}", {"operator", "end of input"})
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.peek() == "*":
            self.pos += 1
            node = BinOp("*", node, self.unary())
        return node

    def unary(self) -> Expr:
        c = self.peek()
        if c in ("-", "+"):
            self.pos += 1
            arg = self.unary()
            return Neg(arg) if c == "-" else arg
        node = self.atom()
        if self.peek() == "^":
            self.pos += 1
            neg = False
            if self.peek() == "-":
                neg = True
                self.pos += 1
            k = self.integer()
            node = Pow(node, -k if neg else k)
        return node

    def atom(self) -> Expr:
        c = self.peek()
        if c == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if c.isdigit() or c == ".":
            return self.number()
        if c.isalpha():
            start = self.pos
            if c == "e" and (self.pos + 1 == len(self.text) or not self.text[self.pos + 1].isalpha()):
                return self.blade()
            name = self.word()
            if name == "i":
                if not self.sig.is_complex:
                    self.fail("the imaginary unit needs a complex algebra", _ATOM - {"'i'"}, start)
                return Lit(I)
            if name in FUNCTIONS:
                return self.call(name)
            self.fail(f"unknown name {name!r}", _ATOM, start)
        self.fail("expected a number, blade, function or '('" if c else "unexpected end of input", _ATOM)

    def number(self) -> Lit:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] == "."):
            self.pos += 1
        raw = self.text[start:self.pos]
        if raw.count(".") > 1 or raw == ".":
            self.fail(f"malformed number {raw!r}", {"number"}, start)
        value = Fraction(Decimal(raw)) if "." in raw else int(raw)
        if self.peek() == "/":
            slash = self.pos
            self.pos += 1
            if not self.peek().isdigit():
                self.fail("expected an integer denominator", {"integer"})
            den = self.integer()
            if den == 0:
                self.fail("zero denominator", {"integer"}, slash + 1)
            value = Fraction(value) / den
        return Lit(value)

    def blade(self) -> Blade:
        start = self.pos
        self.pos += 1  # 'e'
        n = self.sig.n
        if self.pos < len(self.text) and self.text[self.pos] == "{":
            self.pos += 1
            idx = [self._index(n)]
            while self.peek() == ",":
                self.pos += 1
                idx.append(self._index(n))
            self.expect("}")
            return Blade(tuple(idx))
        digits_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[digits_start:self.pos]
        if not digits:
            self.fail("a blade needs indices; write the identity as 1", {"digits", "'{'"}, self.pos)
        if n > 9:
            self.fail("digit blades need n <= 9; use e{i,j,...}", {"'{'"}, start)
        for off, d in enumerate(digits):
            if not 1 <= int(d) <= n:
                self.fail(f"index {d} outside 1..{n}", {f"index in 1..{n}"}, digits_start + off, IndexOutOfRange)
        return Blade(tuple(int(d) for d in digits))

    def _index(self, n: int) -> int:
        self.skip()
        at = self.pos
        k = self.integer()
        if not 1 <= k <= n:
            self.fail(f"index {k} outside 1..{n}", {f"index in 1..{n}"}, at, IndexOutOfRange)
        return k

    def call(self, name: str) -> Call:
        self.expect("(")
        grades = None
        if name == "proj":
            grades = self.grade_set()
            self.expect(",")
        arg = self.expr()
        self.expect(")")
        return Call(name, (arg,), grades)

    def grade_set(self) -> frozenset:
        self.expect("{")
        out = set()
        while True:
            c = self.peek()
            if c == "n":
                self.pos += 1
                out.add(self.sig.n)
            else:
                at = self.pos
                k = self.integer()
                if k > self.sig.n:
                    self.fail(f"grade {k} exceeds n = {self.sig.n}", {f"grade in 0..{self.sig.n}"}, at, IndexOutOfRange)
                out.add(k)
            if self.peek() == ",":
                self.pos += 1
                continue
            self.expect("}")
            return frozenset(out)


def parse_expression(text: str, sig: Signature) -> Expr:
    return _Parser(text, sig).parse()


def _scalar(sig: Signature, v):
    if sig.is_exact:
        return Multivector.scalar(sig, v)
    return Multivector.scalar(sig, complex(v) if sig.is_complex else float(v))


def _eval(node: Expr, sig: Signature) -> Multivector:
    if isinstance(node, Lit):
        return _scalar(sig, node.value)
    if isinstance(node, Blade):
        return Multivector.from_indices(sig, node.indices)
    if isinstance(node, Neg):
        return -_eval(node.arg, sig)
    if isinstance(node, BinOp):
        a, b = _eval(node.left, sig), _eval(node.right, sig)
        return a + b if node.op == "+" else a - b if node.op == "-" else a * b
    if isinstance(node, Pow):
        return _eval(node.base, sig) ** node.exponent
    if isinstance(node, Call):
        x = _eval(node.args[0], sig)
        if node.name == "rev":
            return x.rev()
        if node.name == "gi":
            return x.gi()
        if node.name == "cj":
            return x.cj()
        if node.name == "inv":
            from .matrix_rep import inverse

            return inverse(x)
        if node.name == "psi":
            return x.rev() * x
        if node.name == "chi":
            return x.cj() * x
        if node.name == "proj":
            return x.project(SubspaceSpec.of(sig.n, node.grades))
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(expr: str | Expr, sig: Signature) -> Multivector:
    """Parse (if needed) and evaluate exactly; ``inv`` may raise SingularError."""
    if isinstance(expr, str):
        expr = parse_expression(expr, sig)
    return _eval(expr, sig)
