"""A small DSL for rational spectra in ``w`` with bicomplex coefficients.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' atom)?
    atom   := number | 'i1' | 'i2' | 'j' | 'e1' | 'e2' | 'w'
            | '(' expr ')' | '-' factor | '[' expr '|' expr ']'

``j`` is ``i1*i2``. ``[x | y]`` is ``x*e1 + y*e2``. Unary minus applies to
a whole factor, so ``-w^2`` is ``-(w^2)``. Exponents must lower to
non-negative integer constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .bicomplex import E1, E2, I1, I2, J, ZERO, Bicomplex, to_idempotent
from .errors import DSLSyntaxError, NotRational, UnknownIdentifier, ZeroDenominator
from .rational import ComplexPolynomial, ComplexRational, reduce_rational
from .transform import BicomplexRational

__all__ = [
    "Num",
    "Const",
    "Var",
    "Neg",
    "BinOp",
    "Pow",
    "Idem",
    "parse",
    "evaluate",
    "lower_to_rational",
    "parse_spectrum",
    "parse_bicomplex",
    "render_polynomial",
    "render_rational",
    "render_spectrum",
]

CONSTANTS = {"i1": I1, "i2": I2, "j": J, "e1": E1, "e2": E2}
#: Leading coefficients below this fraction of the largest one are float noise.
LEADING_NOISE_REL = 1e-14


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: "Node"


@dataclass(frozen=True)
class Idem:
    first: "Node"
    second: "Node"


Node = Union[Num, Const, Var, Neg, BinOp, Pow, Idem]

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()\[\]|])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(src: str) -> list[_Token]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {src[pos]!r}", _byte_offset(src, pos))
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Token(kind, m.group(), _byte_offset(src, pos)))
        pos = m.end()
    out.append(_Token("end", "", _byte_offset(src, len(src))))
    return out


def _byte_offset(src: str, pos: int) -> int:
    return len(src[:pos].encode("utf-8"))


_ATOM_START = ("number", "i1", "i2", "j", "e1", "e2", "w", "(", "-", "[")


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.pos = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, text: str) -> None:
        if self.tok.text != text or self.tok.kind == "end":
            raise DSLSyntaxError(f"unexpected {self._describe()}", self.tok.offset, (repr(text),))
        self.advance()

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else f"token {self.tok.text!r}"

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise DSLSyntaxError(f"unexpected {self._describe()}", self.tok.offset,
                                 ("'+'", "'-'", "'*'", "'/'", "'^'", "end of input"))
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            node = Pow(node, self.atom())
        return node

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "number":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "name":
            self.advance()
            if tok.text == "w":
                return Var()
            if tok.text in CONSTANTS:
                return Const(tok.text)
            raise UnknownIdentifier(tok.text, tok.offset)
        if tok.kind == "op":
            if tok.text == "(":
                self.advance()
                node = self.expr()
                self.expect(")")
                return node
            if tok.text == "-":
                self.advance()
                return Neg(self.factor())
            if tok.text == "[":
                self.advance()
                first = self.expr()
                self.expect("|")
                second = self.expr()
                self.expect("]")
                return Idem(first, second)
        raise DSLSyntaxError(f"unexpected {self._describe()}", tok.offset,
                             tuple(repr(s) for s in _ATOM_START))


def parse(src: str) -> Node:
    """Parse DSL text into an expression tree."""
    if not src or not src.strip():
        raise DSLSyntaxError("empty expression", 0, tuple(repr(s) for s in _ATOM_START))
    return _Parser(src).parse()


def _contains_var(node: Node) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, (Num, Const)):
        return False
    if isinstance(node, Neg):
        return _contains_var(node.operand)
    if isinstance(node, BinOp):
        return _contains_var(node.left) or _contains_var(node.right)
    if isinstance(node, Pow):
        return _contains_var(node.base) or _contains_var(node.exponent)
    return _contains_var(node.first) or _contains_var(node.second)


def _integer_exponent(node: Node) -> int:
    if _contains_var(node):
        raise NotRational("the variable w appears in an exponent")
    value = evaluate(node, ZERO)
    if not value.is_real() or value.a0 != int(value.a0) or value.a0 < 0:
        raise NotRational(f"exponent {value} is not a non-negative integer")
    return int(value.a0)


def evaluate(node: Node, w) -> Bicomplex:
    """Evaluate the tree directly in bicomplex arithmetic at ``w``."""
    w = Bicomplex.coerce(w)
    if isinstance(node, Num):
        return Bicomplex(node.value)
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Var):
        return w
    if isinstance(node, Neg):
        return -evaluate(node.operand, w)
    if isinstance(node, BinOp):
        a, b = evaluate(node.left, w), evaluate(node.right, w)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        return a / b
    if isinstance(node, Pow):
        return evaluate(node.base, w) ** _integer_exponent(node.exponent)
    return evaluate(node.first, w) * E1 + evaluate(node.second, w) * E2


def _lower(node: Node) -> tuple[ComplexRational, ComplexRational]:
    if isinstance(node, (Num, Const)):
        p = to_idempotent(evaluate(node, ZERO))
        return ComplexRational.constant(p.p1), ComplexRational.constant(p.p2)
    if isinstance(node, Var):
        ident = ComplexRational(ComplexPolynomial.identity())
        return ident, ident
    if isinstance(node, Neg):
        a1, a2 = _lower(node.operand)
        return -a1, -a2
    if isinstance(node, BinOp):
        a, b = _lower(node.left), _lower(node.right)
        if node.op == "+":
            return a[0] + b[0], a[1] + b[1]
        if node.op == "-":
            return a[0] - b[0], a[1] - b[1]
        if node.op == "*":
            return a[0] * b[0], a[1] * b[1]
        for axis, divisor in (("e1", b[0]), ("e2", b[1])):
            if divisor.is_zero():
                raise ZeroDenominator(f"division by an expression that vanishes on the {axis} axis")
        return a[0] / b[0], a[1] / b[1]
    if isinstance(node, Pow):
        n = _integer_exponent(node.exponent)
        a1, a2 = _lower(node.base)
        return a1 ** n, a2 ** n
    a, b = _lower(node.first), _lower(node.second)
    zero = ComplexRational.zero()
    # [x | y] keeps the e1 projection of x and the e2 projection of y
    return a[0] + zero, b[1] + zero


def _strip_noise(p: ComplexPolynomial) -> ComplexPolynomial:
    c = list(p.coeffs)
    if not c:
        return p
    top = max(abs(x) for x in c)
    while len(c) > 1 and abs(c[-1]) <= LEADING_NOISE_REL * top:
        c.pop()
    return ComplexPolynomial(c)


def _normalize(r: ComplexRational) -> ComplexRational:
    r = ComplexRational(_strip_noise(r.num), _strip_noise(r.den))
    if r.den.degree >= 1 and not r.is_zero():
        r = reduce_rational(r)[0]
    return r


def lower_to_rational(node: Node) -> BicomplexRational:
    """Project the tree onto the e1/e2 axes as two rationals in lowest terms."""
    c1, c2 = _lower(node)
    return BicomplexRational(_normalize(c1), _normalize(c2))


def parse_spectrum(src: str) -> BicomplexRational:
    return lower_to_rational(parse(src))


def parse_bicomplex(src: str) -> Bicomplex:
    """Parse a constant (``w``-free) expression such as ``"1 + 0.5*i2"`` or ``"[1 | 2*i1]"``."""
    node = parse(src)
    if _contains_var(node):
        raise NotRational("a bicomplex literal cannot contain the variable w")
    return evaluate(node, ZERO)


# rendering


def _render_complex(z: complex) -> str:
    re_, im = repr(float(z.real)), float(z.imag)
    if im == 0:
        return f"({re_})"
    sign = "-" if im < 0 else "+"
    return f"({re_} {sign} {abs(im)!r}*i1)"


def render_polynomial(p: ComplexPolynomial) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        coef = _render_complex(c)
        power = "w" if k == 1 else f"w^{k}"
        if k == 0:
            terms.append(coef)
        elif c == 1:
            terms.append(power)
        else:
            terms.append(f"{coef}*{power}")
    return " + ".join(terms)


def render_rational(r: ComplexRational) -> str:
    if r.is_zero():
        return "0"
    return f"({render_polynomial(r.num)})/({render_polynomial(r.den)})"


def render_spectrum(F: BicomplexRational) -> str:
    """Canonical text that parses back to ``F``."""
    if F.comp1 == F.comp2:
        return render_rational(F.comp1)
    parts = [f"{unit}*{render_rational(c)}" for unit, c in (("e1", F.comp1), ("e2", F.comp2))
             if not c.is_zero()]
    return " + ".join(parts) if parts else "0"
