"""Tangle notation: expression trees, a parser/printer and Conway fractions.

Fractions are exact.  Finite values are :class:`fractions.Fraction`; the
fraction of the infinity tangle is the singleton :data:`INF` (``1/0``).

Grammar (``+`` binds looser than ``*``, both left-associative)::

    expr    := product ('+' product)*
    product := term ('*' term)*
    term    := INT | '1/' INT | INT '/' INT | '[' INT (',' INT)* ']' | 'inf'
             | '(' expr ')' | 'rot(' expr ')' | 'rotcc(' expr ')'
             | 'hflip(' expr ')' | '-' term | NAME
    link    := ('n' | 'd') '(' expr ')'

A leaf may carry a tag, ``-1@c``, which the diagram compiler turns into a
named crossing set.  ``p/q`` is shorthand for the canonical continued
fraction of ``p/q``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Mapping, Optional, Union

__all__ = [
    "INF", "FractionValue", "NotationError", "NonRationalError",
    "TangleExpr", "Zero", "Infinity", "Integer", "Vertical", "Rational",
    "Sum", "Star", "RotateCW", "RotateCCW", "HFlip", "Mirror", "Name", "LinkExpr",
    "integer", "vertical", "rational", "mirror",
    "cf_to_fraction", "fraction_to_cf", "eval_fraction", "tangle_fraction",
    "parse_tangle", "parse_link", "parse_fraction", "format_tangle", "format_fraction",
    "LIBRARY", "register", "resolve",
    "finv", "fadd", "fneg", "fstar", "is_integer_fraction",
]


class _Infinity:
    """The fraction ``1/0`` of the infinity tangle."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    numerator = 1
    denominator = 0

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "1/0"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
FractionValue = Union[Fraction, _Infinity]


class NotationError(ValueError):
    """Syntax error, with the offending character position."""

    def __init__(self, message: str, position: int = -1):
        super().__init__(message if position < 0 else f"{message} at position {position}")
        self.position = position


class NonRationalError(ValueError):
    """The expression leaves the class of rational tangles."""


# -- exact fraction arithmetic with infinity ---------------------------------

def finv(a: FractionValue) -> FractionValue:
    if a is INF:
        return Fraction(0)
    if a == 0:
        return INF
    return 1 / a


def fneg(a: FractionValue) -> FractionValue:
    return INF if a is INF else -a


def fadd(a: FractionValue, b: FractionValue) -> FractionValue:
    if a is INF or b is INF:
        return INF
    return a + b


def fstar(a: FractionValue, b: FractionValue) -> FractionValue:
    return finv(fadd(finv(a), finv(b)))


def is_integer_fraction(a: FractionValue) -> bool:
    return a is not INF and a.denominator == 1


# -- expression tree ----------------------------------------------------------

class TangleExpr:
    """Base class of tangle expression nodes (immutable)."""

    def __add__(self, other: "TangleExpr") -> "Sum":
        return Sum(self, _coerce(other))

    def __radd__(self, other) -> "Sum":
        return Sum(_coerce(other), self)

    def __mul__(self, other: "TangleExpr") -> "Star":
        return Star(self, _coerce(other))

    def __rmul__(self, other) -> "Star":
        return Star(_coerce(other), self)

    def __neg__(self) -> "TangleExpr":
        return mirror(self)

    def __str__(self) -> str:
        return format_tangle(self)


def _coerce(x) -> TangleExpr:
    if isinstance(x, TangleExpr):
        return x
    if isinstance(x, int):
        return integer(x)
    raise TypeError(f"cannot use {x!r} as a tangle")


@dataclass(frozen=True, eq=True)
class Zero(TangleExpr):
    tag: Optional[str] = None


@dataclass(frozen=True, eq=True)
class Infinity(TangleExpr):
    tag: Optional[str] = None


@dataclass(frozen=True, eq=True)
class Integer(TangleExpr):
    """Horizontal twist with ``n`` crossings (``n != 0``)."""

    n: int
    tag: Optional[str] = None


@dataclass(frozen=True, eq=True)
class Vertical(TangleExpr):
    """Vertical twist ``1/n`` with ``|n|`` crossings (``n != 0``)."""

    n: int
    tag: Optional[str] = None


@dataclass(frozen=True, eq=True)
class Rational(TangleExpr):
    """Rational tangle given by a continued fraction ``[a1, ..., an]``."""

    terms: tuple
    tag: Optional[str] = None


@dataclass(frozen=True, eq=True)
class Sum(TangleExpr):
    left: TangleExpr
    right: TangleExpr


@dataclass(frozen=True, eq=True)
class Star(TangleExpr):
    left: TangleExpr
    right: TangleExpr


@dataclass(frozen=True, eq=True)
class RotateCW(TangleExpr):
    """Inverse tangle ``1/T`` drawn by clockwise rotation then mirror."""

    inner: TangleExpr


@dataclass(frozen=True, eq=True)
class RotateCCW(TangleExpr):
    """Inverse tangle ``1/T`` drawn by counterclockwise rotation then mirror."""

    inner: TangleExpr


@dataclass(frozen=True, eq=True)
class HFlip(TangleExpr):
    inner: TangleExpr


@dataclass(frozen=True, eq=True)
class Mirror(TangleExpr):
    inner: TangleExpr


@dataclass(frozen=True, eq=True)
class Name(TangleExpr):
    """Placeholder bound through :data:`LIBRARY` or an explicit mapping."""

    name: str


@dataclass(frozen=True, eq=True)
class LinkExpr:
    """Numerator (``n``) or denominator (``d``) closure of a tangle."""

    mode: str
    tangle: TangleExpr

    def __str__(self) -> str:
        return f"{self.mode}({format_tangle(self.tangle)})"


def integer(n: int, tag: Optional[str] = None) -> TangleExpr:
    return Zero(tag) if n == 0 else Integer(n, tag)


def vertical(n: int, tag: Optional[str] = None) -> TangleExpr:
    return Infinity(tag) if n == 0 else Vertical(n, tag)


def rational(value, tag: Optional[str] = None) -> TangleExpr:
    """Rational tangle with the canonical continued fraction of ``value``."""
    value = Fraction(value)
    return Rational(tuple(fraction_to_cf(value)), tag)


def mirror(t: TangleExpr) -> TangleExpr:
    """Mirror image, folded into leaves where possible."""
    if isinstance(t, Integer):
        return Integer(-t.n, t.tag)
    if isinstance(t, Vertical):
        return Vertical(-t.n, t.tag)
    if isinstance(t, Rational):
        return Rational(tuple(-a for a in t.terms), t.tag)
    if isinstance(t, (Zero, Infinity)):
        return t
    return Mirror(t)


# -- continued fractions ------------------------------------------------------

def cf_to_fraction(terms) -> FractionValue:
    """Value of ``a1 + 1/(a2 + 1/(... + 1/an))``."""
    terms = list(terms)
    if not terms:
        raise ValueError("empty continued fraction")
    v: FractionValue = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        v = fadd(Fraction(a), finv(v))
    return v


def fraction_to_cf(f) -> list:
    """Canonical same-sign continued fraction of a finite rational."""
    if f is INF:
        raise ValueError("the infinity tangle has no continued fraction")
    f = Fraction(f)
    sign = -1 if f < 0 else 1
    f = abs(f)
    terms = []
    while True:
        a = floor(f)
        terms.append(a)
        f -= a
        if f == 0:
            break
        f = 1 / f
    return [sign * a for a in terms]


def format_fraction(f: FractionValue) -> str:
    if f is INF:
        return "1/0"
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_fraction(text: str) -> FractionValue:
    text = text.strip()
    if text in ("inf", "1/0"):
        return INF
    return Fraction(text)


# -- evaluation ---------------------------------------------------------------

LIBRARY: dict = {}


def register(name: str, expr) -> None:
    """Bind ``name`` to an expression (or notation string) for later lookup."""
    LIBRARY[name] = parse_tangle(expr) if isinstance(expr, str) else expr


def resolve(t: TangleExpr, env: Optional[Mapping] = None) -> TangleExpr:
    """Substitute every :class:`Name` using ``env`` then :data:`LIBRARY`."""
    if isinstance(t, Name):
        for table in (env or {}, LIBRARY):
            if t.name in table:
                bound = table[t.name]
                bound = parse_tangle(bound) if isinstance(bound, str) else bound
                return resolve(bound, env)
        raise KeyError(f"unbound tangle name {t.name!r}")
    if isinstance(t, (Sum, Star)):
        return type(t)(resolve(t.left, env), resolve(t.right, env))
    if isinstance(t, (RotateCW, RotateCCW, HFlip, Mirror)):
        return type(t)(resolve(t.inner, env))
    return t


def _eval(t: TangleExpr, env, strict: bool):
    """Return (fraction, is_rational)."""
    if isinstance(t, Zero):
        return Fraction(0), True
    if isinstance(t, Infinity):
        return INF, True
    if isinstance(t, Integer):
        return Fraction(t.n), True
    if isinstance(t, Vertical):
        return Fraction(1, t.n), True
    if isinstance(t, Rational):
        return cf_to_fraction(t.terms), True
    if isinstance(t, Name):
        return _eval(resolve(t, env), env, strict)
    if isinstance(t, Sum):
        a, ra = _eval(t.left, env, strict)
        b, rb = _eval(t.right, env, strict)
        rat = ra and rb and (is_integer_fraction(a) or is_integer_fraction(b))
        if strict and not rat:
            raise NonRationalError(f"sum {format_tangle(t)} is not a rational tangle")
        return fadd(a, b), rat
    if isinstance(t, Star):
        a, ra = _eval(t.left, env, strict)
        b, rb = _eval(t.right, env, strict)
        rat = ra and rb and (abs(a.numerator) == 1 or abs(b.numerator) == 1)
        if strict and not rat:
            raise NonRationalError(f"product {format_tangle(t)} is not a rational tangle")
        return fstar(a, b), rat
    if isinstance(t, (RotateCW, RotateCCW)):
        a, r = _eval(t.inner, env, strict)
        return finv(a), r
    if isinstance(t, HFlip):
        return _eval(t.inner, env, strict)
    if isinstance(t, Mirror):
        a, r = _eval(t.inner, env, strict)
        return fneg(a), r
    raise TypeError(f"not a tangle expression: {t!r}")


def eval_fraction(t: TangleExpr, env: Optional[Mapping] = None) -> FractionValue:
    """Conway fraction of a rational tangle expression.

    Raises :class:`NonRationalError` when a sum or product leaves the
    rational class (a sum is rational only if one side is an integer
    tangle, a product only if one side is vertical).
    """
    return _eval(t, env, True)[0]


def tangle_fraction(t: TangleExpr, env: Optional[Mapping] = None) -> FractionValue:
    """Fraction of any algebraic tangle: additive under ``+``, reciprocal-additive under ``*``."""
    return _eval(t, env, False)[0]


# -- parser -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*/()\[\],@]))")
_KEYWORDS = {"rot": RotateCW, "rotcc": RotateCCW, "hflip": HFlip}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise NotationError(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self, k: int = 0):
        j = self.i + k
        return self.tokens[j] if j < len(self.tokens) else ("eof", "", len(self.text))

    def take(self, value: Optional[str] = None, kind: Optional[str] = None):
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value or kind
            got = tok[1] or "end of input"
            raise NotationError(f"expected {want!r}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def at(self, value: str) -> bool:
        return self.peek()[1] == value and self.peek()[0] == "op"

    def expr(self) -> TangleExpr:
        node = self.product()
        while self.at("+"):
            self.take("+")
            node = Sum(node, self.product())
        return node

    def product(self) -> TangleExpr:
        node = self.term()
        while self.at("*"):
            self.take("*")
            node = Star(node, self.term())
        return node

    def signed_int(self) -> int:
        sign = 1
        if self.at("-"):
            self.take("-")
            sign = -1
        return sign * int(self.take(kind="int")[1])

    def tag(self) -> Optional[str]:
        if self.at("@"):
            self.take("@")
            return self.take(kind="name")[1]
        return None

    def term(self) -> TangleExpr:
        kind, value, pos = self.peek()
        if kind == "op" and value == "-":
            self.take("-")
            return mirror(self.term())
        if kind == "op" and value == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        if kind == "op" and value == "[":
            self.take("[")
            terms = [self.signed_int()]
            while self.at(","):
                self.take(",")
                terms.append(self.signed_int())
            self.take("]")
            return Rational(tuple(terms), self.tag())
        if kind == "int":
            self.take()
            n = int(value)
            if self.at("/"):
                self.take("/")
                q, qpos = self.take(kind="int")[1:]
                if int(q) == 0:
                    raise NotationError("division form with zero twist count", qpos)
                if n == 1:
                    return Vertical(int(q), self.tag())
                return rational(Fraction(n, int(q)), self.tag())
            return integer(n, self.tag())
        if kind == "name":
            if value in _KEYWORDS and self.peek(1)[1] == "(":
                self.take()
                self.take("(")
                node = self.expr()
                self.take(")")
                return _KEYWORDS[value](node)
            self.take()
            if value == "inf":
                return Infinity(self.tag())
            return Name(value)
        raise NotationError(f"unexpected {value or 'end of input'!r}", pos)

    def finish(self):
        if self.peek()[0] != "eof":
            raise NotationError(f"trailing input {self.peek()[1]!r}", self.peek()[2])


def parse_tangle(text: str) -> TangleExpr:
    """Parse a tangle expression (see module docstring for the grammar)."""
    p = _Parser(text)
    node = p.expr()
    p.finish()
    return node


def parse_link(text: str) -> LinkExpr:
    """Parse ``n(expr)`` or ``d(expr)``."""
    p = _Parser(text)
    kind, value, pos = p.peek()
    if kind != "name" or value not in ("n", "d") or p.peek(1)[1] != "(":
        raise NotationError("a link is written n(...) or d(...)", pos)
    p.take()
    p.take("(")
    node = p.expr()
    p.take(")")
    p.finish()
    return LinkExpr(value, node)


# -- printer ------------------------------------------------------------------

def _tagged(s: str, tag: Optional[str]) -> str:
    return s if tag is None else f"{s}@{tag}"


def format_tangle(t: TangleExpr, level: int = 0) -> str:
    """Print an expression; ``parse_tangle(format_tangle(t)) == t``.

    ``level`` is the binding context: 0 inside a sum, 1 inside a product,
    2 for an operand of unary minus.
    """
    if isinstance(t, Zero):
        return _tagged("0", t.tag)
    if isinstance(t, Infinity):
        return _tagged("inf", t.tag)
    if isinstance(t, Integer):
        s = str(t.n)
    elif isinstance(t, Vertical):
        s = f"1/{t.n}" if t.n > 0 else f"-1/{-t.n}"
    elif isinstance(t, Rational):
        s = "[" + ",".join(str(a) for a in t.terms) + "]"
    elif isinstance(t, Name):
        return t.name
    elif isinstance(t, Sum):
        s = f"{format_tangle(t.left, 0)}+{format_tangle(t.right, 1)}"
        return s if level == 0 else f"({s})"
    elif isinstance(t, Star):
        s = f"{format_tangle(t.left, 1)}*{format_tangle(t.right, 2)}"
        return s if level <= 1 else f"({s})"
    elif isinstance(t, RotateCW):
        return f"rot({format_tangle(t.inner)})"
    elif isinstance(t, RotateCCW):
        return f"rotcc({format_tangle(t.inner)})"
    elif isinstance(t, HFlip):
        return f"hflip({format_tangle(t.inner)})"
    elif isinstance(t, Mirror):
        inner = t.inner
        # a bare "-" before a leaf would fold into the leaf when reparsed
        if isinstance(inner, (Integer, Vertical, Rational, Zero, Infinity)):
            return f"-({format_tangle(inner)})"
        return "-" + format_tangle(inner, 2)
    else:
        raise TypeError(f"not a tangle expression: {t!r}")
    s = _tagged(s, t.tag)
    # negative leaves behave like unary minus: parenthesize inside products
    if s.startswith("-") and level == 2:
        return f"({s})"
    return s
