"""Exact coefficient arithmetic.

Two modes are supported: plain rationals (``fractions.Fraction``) and
rational functions in a declared tuple of parameter symbols (`ParamScalar`).
A `ParamScalar` is a quotient of integer-coefficient multivariate
polynomials kept in a canonical form: numerator and denominator are coprime
(polynomial gcd, integer content included), and the denominator's first
term in ascending graded-lexicographic order has a positive coefficient.
Equality and zero tests are therefore structural and exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterator, Union

from .errors import (
    DivisionByZero,
    ExprSyntaxError,
    MixedModes,
    UndeclaredParameter,
)

Scalar = Union[Fraction, "ParamScalar"]

# ---------------------------------------------------------------------------
# integer multivariate polynomials as {exponent tuple: nonzero int}
# ---------------------------------------------------------------------------


def _grlex(e: tuple[int, ...]) -> tuple:
    # graded order: total degree first, then lex with earlier symbols ranked
    # higher; this is the display order and the leading-term order at once
    return (sum(e), tuple(-x for x in e))


def _padd(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def _pneg(a: dict) -> dict:
    return {e: -c for e, c in a.items()}


def _psub(a: dict, b: dict) -> dict:
    return _padd(a, _pneg(b))


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def _pconst(nvars: int, c: int) -> dict:
    return {(0,) * nvars: c} if c else {}


def _plead_min(p: dict) -> tuple[int, ...]:
    return min(p, key=_grlex)


def _psign_norm(p: dict) -> dict:
    if p and p[_plead_min(p)] < 0:
        return _pneg(p)
    return p


def _pcontent_int(p: dict) -> int:
    return reduce(gcd, (abs(c) for c in p.values()), 0)


def _pdiv_exact(a: dict, b: dict) -> dict:
    """Exact division a/b; raises ArithmeticError if b does not divide a."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q: dict = {}
    r = dict(a)
    eb = max(b, key=_grlex)
    cb = b[eb]
    while r:
        er = max(r, key=_grlex)
        cr = r[er]
        e = tuple(x - y for x, y in zip(er, eb))
        if any(x < 0 for x in e) or cr % cb:
            raise ArithmeticError("inexact polynomial division")
        c = cr // cb
        q[e] = c
        r = _psub(r, _pmul({e: c}, b))
    return q


def _deg_in(p: dict, v: int) -> int:
    return max((e[v] for e in p), default=-1)


def _coeffs_in(p: dict, v: int) -> dict[int, dict]:
    """Split p by the exponent of variable v; values have v-exponent zero."""
    out: dict[int, dict] = {}
    for e, c in p.items():
        e0 = e[:v] + (0,) + e[v + 1 :]
        out.setdefault(e[v], {})[e0] = c
    return out


def _lc_in(p: dict, v: int) -> dict:
    return _coeffs_in(p, v)[_deg_in(p, v)]


def _prem(f: dict, g: dict, v: int) -> dict:
    """Pseudo-remainder of f by g viewed as polynomials in variable v."""
    dg = _deg_in(g, v)
    lg = _lc_in(g, v)
    nvars = len(next(iter(g)))
    while f and _deg_in(f, v) >= dg:
        df = _deg_in(f, v)
        lf = _lc_in(f, v)
        shift = {(0,) * v + (df - dg,) + (0,) * (nvars - v - 1): 1}
        f = _psub(_pmul(lg, f), _pmul(_pmul(lf, shift), g))
    return f


def _content_in(p: dict, v: int) -> dict:
    return reduce(_pgcd, _coeffs_in(p, v).values())


def _pp_in(p: dict, v: int) -> dict:
    if not p:
        return p
    return _pdiv_exact(p, _content_in(p, v))


def _pgcd(a: dict, b: dict) -> dict:
    """Polynomial gcd over the integers (primitive PRS), sign-normalized."""
    if not a:
        return _psign_norm(dict(b))
    if not b:
        return _psign_norm(dict(a))
    nvars = len(next(iter(a)))
    v = next(
        (i for i in range(nvars) if _deg_in(a, i) > 0 or _deg_in(b, i) > 0),
        None,
    )
    if v is None:
        za = a[(0,) * nvars]
        zb = b[(0,) * nvars]
        return _pconst(nvars, gcd(za, zb))
    ca, cb = _content_in(a, v), _content_in(b, v)
    f, g = _pdiv_exact(a, ca), _pdiv_exact(b, cb)
    if _deg_in(f, v) < _deg_in(g, v):
        f, g = g, f
    while g:
        r = _prem(f, g, v)
        f, g = g, (_pp_in(r, v) if r else {})
    return _psign_norm(_pmul(_pgcd(ca, cb), _pp_in(f, v)))


# ---------------------------------------------------------------------------
# ParamScalar: canonical quotient of integer polynomials
# ---------------------------------------------------------------------------


class ParamScalar:
    """A rational function in the declared parameter symbols.

    Values are immutable; all arithmetic returns new canonical instances.
    Mixing with `int` or `Fraction` coerces the number into the same
    symbol tuple; mixing two different symbol tuples raises `MixedModes`.
    """

    __slots__ = ("symbols", "num", "den")

    def __init__(self, symbols: tuple[str, ...], num: dict, den: dict):
        self.symbols = symbols
        self.num = num
        self.den = den

    # construction ---------------------------------------------------------

    @staticmethod
    def _make(symbols: tuple[str, ...], num: dict, den: dict) -> "ParamScalar":
        if not den:
            raise DivisionByZero("scalar division by zero")
        nvars = len(symbols)
        if not num:
            return ParamScalar(symbols, {}, _pconst(nvars, 1))
        g = _pgcd(num, den)
        num = _pdiv_exact(num, g)
        den = _pdiv_exact(den, g)
        if den[_plead_min(den)] < 0:
            num, den = _pneg(num), _pneg(den)
        return ParamScalar(symbols, num, den)

    @staticmethod
    def from_fraction(symbols: tuple[str, ...], q: Fraction | int) -> "ParamScalar":
        q = Fraction(q)
        nvars = len(symbols)
        return ParamScalar._make(
            symbols, _pconst(nvars, q.numerator), _pconst(nvars, q.denominator)
        )

    @staticmethod
    def symbol(symbols: tuple[str, ...], name: str) -> "ParamScalar":
        i = symbols.index(name)
        nvars = len(symbols)
        e = (0,) * i + (1,) + (0,) * (nvars - i - 1)
        return ParamScalar(symbols, {e: 1}, _pconst(nvars, 1))

    # coercion ---------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ParamScalar):
            if other.symbols != self.symbols:
                raise MixedModes(
                    f"cannot mix parameter sets {self.symbols} and {other.symbols}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return ParamScalar.from_fraction(self.symbols, other)
        return None

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return ParamScalar._make(self.symbols, num, _pmul(self.den, o.den))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = _psub(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return ParamScalar._make(self.symbols, num, _pmul(self.den, o.den))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ParamScalar._make(
            self.symbols, _pmul(self.num, o.num), _pmul(self.den, o.den)
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise DivisionByZero("scalar division by zero")
        return ParamScalar._make(
            self.symbols, _pmul(self.num, o.den), _pmul(self.den, o.num)
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return ParamScalar(self.symbols, _pneg(self.num), self.den)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = ParamScalar.from_fraction(self.symbols, 1)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash(
            (self.symbols, frozenset(self.num.items()), frozenset(self.den.items()))
        )

    # inspection ---------------------------------------------------------------

    @property
    def is_constant(self) -> bool:
        zero = (0,) * len(self.symbols)
        return set(self.num) <= {zero} and set(self.den) == {zero}

    def as_fraction(self) -> Fraction | None:
        """The value as an exact rational, or None if symbols occur."""
        if not self.is_constant:
            return None
        zero = (0,) * len(self.symbols)
        return Fraction(self.num.get(zero, 0), self.den[zero])

    def __repr__(self):
        return f"ParamScalar({scalar_str(self)!r})"

    def __str__(self):
        return scalar_str(self)


# ---------------------------------------------------------------------------
# mode
# ---------------------------------------------------------------------------


class ScalarMode:
    """Coefficient mode of an algebra: rational, or rational functions."""

    __slots__ = ("symbols",)

    def __init__(self, symbols: tuple[str, ...] | None = None):
        if symbols is not None:
            symbols = tuple(symbols)
            if len(set(symbols)) != len(symbols):
                raise ValueError("parameter symbols must be distinct")
            for s in symbols:
                if not s.isidentifier():
                    raise ValueError(f"invalid parameter symbol {s!r}")
        self.symbols = symbols

    @staticmethod
    def rational() -> "ScalarMode":
        return ScalarMode(None)

    @staticmethod
    def params(*symbols: str) -> "ScalarMode":
        return ScalarMode(tuple(symbols))

    @property
    def is_param(self) -> bool:
        return self.symbols is not None

    def zero(self) -> Scalar:
        return self.from_fraction(0)

    def one(self) -> Scalar:
        return self.from_fraction(1)

    def from_fraction(self, q: Fraction | int) -> Scalar:
        if self.symbols is None:
            return Fraction(q)
        return ParamScalar.from_fraction(self.symbols, q)

    def symbol(self, name: str) -> ParamScalar:
        if self.symbols is None or name not in self.symbols:
            raise UndeclaredParameter(f"parameter {name!r} is not declared")
        return ParamScalar.symbol(self.symbols, name)

    def coerce(self, x) -> Scalar:
        if isinstance(x, ParamScalar):
            if self.symbols != x.symbols:
                raise MixedModes(
                    f"scalar over {x.symbols} used in mode {self.symbols}"
                )
            return x
        return self.from_fraction(x)

    def __eq__(self, other):
        return isinstance(other, ScalarMode) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        if self.symbols is None:
            return "ScalarMode.rational()"
        return f"ScalarMode.params{self.symbols}"


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Exact arithmetic dispatch; op is one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("scalar division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _monomial_str(symbols: tuple[str, ...], e: tuple[int, ...]) -> str:
    parts = []
    for name, p in zip(symbols, e):
        if p == 1:
            parts.append(name)
        elif p > 1:
            parts.append(f"{name}^{p}")
    return "*".join(parts)


def _poly_str(symbols: tuple[str, ...], p: dict) -> str:
    if not p:
        return "0"
    out = []
    for e in sorted(p, key=_grlex):
        c = p[e]
        mon = _monomial_str(symbols, e)
        if mon:
            body = mon if abs(c) == 1 else f"{abs(c)}*{mon}"
        else:
            body = str(abs(c))
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


def scalar_str(x: Scalar) -> str:
    """Canonical text form; `parse_scalar` reads it back verbatim."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    q = x.as_fraction()
    if q is not None:
        return scalar_str(q)
    one = _pconst(len(x.symbols), 1)
    if x.den == one:
        if len(x.num) > 1:
            c = _pcontent_int(x.num)
            if x.num[_plead_min(x.num)] < 0:
                c = -c
            if abs(c) != 1:
                prim = _pdiv_exact(x.num, _pconst(len(x.symbols), c))
                return f"{c}*({_poly_str(x.symbols, prim)})"
        return _poly_str(x.symbols, x.num)
    return f"({_poly_str(x.symbols, x.num)})/({_poly_str(x.symbols, x.den)})"


def needs_parens(s: str) -> bool:
    """True if the rendered scalar has a top-level '+' or '-' after position 0."""
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return True
    return False


# ---------------------------------------------------------------------------
# tokenizer and parser
# ---------------------------------------------------------------------------

_PUNCT = "+-*/^()="


class Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind: str, value, line: int, col: int):
        self.kind = kind  # "int" | "ident" | a punctuation char | "end"
        self.value = value
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind!r}, {self.value!r})"


def tokenize(text: str, line: int = 1) -> list[Token]:
    """Split an expression into tokens, tracking 1-based positions."""
    out: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r":
            i += 1
            continue
        col = i + 1
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("int", int(text[i:j]), line, col))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("ident", text[i:j], line, col))
            i = j
        elif ch in _PUNCT:
            out.append(Token(ch, ch, line, col))
            i += 1
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", line, col)
    out.append(Token("end", None, line, len(text) + 1))
    return out


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "end":
            self.pos += 1
        return t

    def expect(self, kind: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            raise ExprSyntaxError(
                f"expected {kind!r}, found {t.value!r}" if t.kind != "end"
                else f"expected {kind!r}, found end of input",
                t.line,
                t.col,
            )
        return self.next()


def _parse_scalar_expr(cur: _Cursor, mode: ScalarMode) -> Scalar:
    value = _parse_scalar_term(cur, mode)
    while cur.peek().kind in "+-":
        op = cur.next().kind
        rhs = _parse_scalar_term(cur, mode)
        value = value + rhs if op == "+" else value - rhs
    return value


def _parse_scalar_term(cur: _Cursor, mode: ScalarMode) -> Scalar:
    value = _parse_scalar_factor(cur, mode)
    while cur.peek().kind in "*/":
        op = cur.next().kind
        rhs = _parse_scalar_factor(cur, mode)
        if op == "*":
            value = value * rhs
        else:
            if not rhs:
                raise DivisionByZero("scalar division by zero")
            value = value / rhs
    return value


def _parse_scalar_factor(cur: _Cursor, mode: ScalarMode) -> Scalar:
    sign = 1
    while cur.peek().kind in "+-":
        if cur.next().kind == "-":
            sign = -sign
    value = _parse_scalar_atom(cur, mode)
    while cur.peek().kind == "^":
        t = cur.next()
        e = cur.peek()
        if e.kind != "int":
            raise ExprSyntaxError("exponent must be a nonnegative integer", t.line, t.col)
        cur.next()
        value = value ** e.value
    return -value if sign < 0 else value


def _parse_scalar_atom(cur: _Cursor, mode: ScalarMode) -> Scalar:
    t = cur.peek()
    if t.kind == "int":
        cur.next()
        return mode.from_fraction(t.value)
    if t.kind == "ident":
        if mode.symbols is None or t.value not in mode.symbols:
            raise UndeclaredParameter(
                f"parameter {t.value!r} is not declared (line {t.line}, column {t.col})"
            )
        cur.next()
        return mode.symbol(t.value)
    if t.kind == "(":
        cur.next()
        value = _parse_scalar_expr(cur, mode)
        cur.expect(")")
        return value
    raise ExprSyntaxError(
        "expected a number, parameter or '('"
        if t.kind == "end"
        else f"unexpected {t.value!r}",
        t.line,
        t.col,
    )


def parse_scalar(text: str, mode: ScalarMode) -> Scalar:
    """Parse an exact scalar expression.

    Grammar: sums/differences of terms; terms multiply/divide factors; a
    factor is an optionally signed atom with optional integer '^' powers;
    atoms are integers, declared parameters, or parenthesized expressions.
    """
    cur = _Cursor(tokenize(text))
    value = _parse_scalar_expr(cur, mode)
    t = cur.peek()
    if t.kind != "end":
        raise ExprSyntaxError(f"trailing input {t.value!r}", t.line, t.col)
    return value
