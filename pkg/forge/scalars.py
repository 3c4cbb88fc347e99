"""Exact scalars: GF(p), GF(p)(a) and the sampling fields GF(p^k).

Every field object exposes the same small protocol (``zero``, ``one``,
``add``, ``sub``, ``mul``, ``neg``, ``inv``, ``div``, ``is_zero``,
``from_int``, ``key``, ``to_text``, ``parse``). Elements are plain
immutable Python values: ``int`` residues for the finite fields and
``RatFun`` for the rational function field, so they hash and compare
structurally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import galois
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_degree,
    gf_eval,
    gf_gcd,
    gf_monic,
    gf_mul,
    gf_mul_ground,
    gf_neg,
    gf_quo,
    gf_strip,
    gf_sub,
)

from .errors import DivisionByZero, ParseError, PoleAtValue

PARAMETER = "a"
MAX_EXTENSION_DEGREE = 4


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _poly(coeffs) -> tuple[int, ...]:
    return tuple(int(c) for c in gf_strip(list(coeffs)))


@dataclass(frozen=True)
class RatFun:
    """num/den over GF(p); coefficient tuples, highest degree first."""

    num: tuple[int, ...]
    den: tuple[int, ...]

    @property
    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1


class _FieldBase:
    p: int
    parametric = False

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, n: int):
        result = self.one
        base = x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def parse(self, text) -> object:
        if isinstance(text, int):
            return self.from_int(text)
        return _Parser(self, str(text)).parse()

    def parameter(self):
        raise ParseError(f"parameter '{PARAMETER}' is not available over GF({self.p})")

    def integer_value(self, x) -> int | None:
        """The residue in [0, p) when x is a constant, else None."""
        return x


class PrimeField(_FieldBase):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ParseError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1

    def __eq__(self, other):
        return type(other) is PrimeField and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise DivisionByZero("inverse of 0")
        return pow(x, self.p - 2, self.p)

    def is_zero(self, x) -> bool:
        return x == 0

    def from_int(self, n: int):
        return n % self.p

    def key(self, x):
        return (x,)

    def to_text(self, x) -> str:
        return str(x)


class RationalFunctionField(_FieldBase):
    """GF(p)(a): one formal parameter, canonical reduced fractions."""

    parametric = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ParseError(f"{p} is not prime")
        self.p = p
        self.zero = RatFun((), (1,))
        self.one = RatFun((1,), (1,))

    def __eq__(self, other):
        return type(other) is RationalFunctionField and other.p == self.p

    def __hash__(self):
        return hash(("GF(a)", self.p))

    def __repr__(self):
        return f"GF({self.p})(a)"

    def make(self, num, den) -> RatFun:
        p = self.p
        num = gf_strip([c % p for c in num])
        den = gf_strip([c % p for c in den])
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return self.zero
        g = gf_gcd(num, den, p, ZZ)
        if gf_degree(g) > 0:
            num = gf_quo(num, g, p, ZZ)
            den = gf_quo(den, g, p, ZZ)
        lc, den = gf_monic(den, p, ZZ)
        num = gf_mul_ground(num, pow(int(lc), p - 2, p), p, ZZ)
        return RatFun(_poly(num), _poly(den))

    def parameter(self):
        return RatFun((1, 0), (1,))

    def add(self, x, y):
        p = self.p
        if x.den == y.den:
            return self.make(gf_add(list(x.num), list(y.num), p, ZZ), list(x.den))
        num = gf_add(gf_mul(list(x.num), list(y.den), p, ZZ), gf_mul(list(y.num), list(x.den), p, ZZ), p, ZZ)
        return self.make(num, gf_mul(list(x.den), list(y.den), p, ZZ))

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if not x.num or not y.num:
            return self.zero
        p = self.p
        return self.make(gf_mul(list(x.num), list(y.num), p, ZZ), gf_mul(list(x.den), list(y.den), p, ZZ))

    def neg(self, x):
        return RatFun(_poly(gf_neg(list(x.num), self.p, ZZ)), x.den)

    def inv(self, x):
        if not x.num:
            raise DivisionByZero("inverse of 0")
        return self.make(list(x.den), list(x.num))

    def is_zero(self, x) -> bool:
        return not x.num

    def from_int(self, n: int):
        n %= self.p
        return RatFun((n,), (1,)) if n else self.zero

    def key(self, x):
        return (len(x.den), x.den, len(x.num), x.num)

    def integer_value(self, x) -> int | None:
        if not x.is_constant:
            return None
        return x.num[0] if x.num else 0

    def to_text(self, x) -> str:
        num = _poly_text(x.num)
        if x.den == (1,):
            return num
        den = _poly_text(x.den)
        if len([c for c in x.num if c]) > 1:
            num = f"({num})"
        if len([c for c in x.den if c]) > 1 or (len(x.den) > 1 and x.den[0] != 1):
            den = f"({den})"
        return f"{num}/{den}"


class ExtensionField(_FieldBase):
    """GF(p^k) through galois; elements are integer representations."""

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise ParseError(f"{p} is not prime")
        if not 1 <= k <= MAX_EXTENSION_DEGREE:
            raise ParseError(f"extension degree {k} is outside 1..{MAX_EXTENSION_DEGREE}")
        self.p = p
        self.k = k
        self.gf = _galois_field(p ** k)
        self.zero = 0
        self.one = 1

    def __eq__(self, other):
        return type(other) is ExtensionField and (other.p, other.k) == (self.p, self.k)

    def __hash__(self):
        return hash(("GF", self.p, self.k))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def elements(self) -> list[int]:
        return list(range(self.p ** self.k))

    def integer_value(self, x) -> int | None:
        return x if x < self.p else None

    def add(self, x, y):
        return int(self.gf(x) + self.gf(y))

    def sub(self, x, y):
        return int(self.gf(x) - self.gf(y))

    def mul(self, x, y):
        return int(self.gf(x) * self.gf(y))

    def neg(self, x):
        return int(-self.gf(x))

    def inv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of 0")
        return int(self.gf(1) / self.gf(x))

    def is_zero(self, x) -> bool:
        return x == 0

    def from_int(self, n: int):
        return n % self.p

    def key(self, x):
        return (x,)

    def to_text(self, x) -> str:
        return str(x)

    def evaluate(self, coeffs: tuple[int, ...], value: int) -> int:
        if not coeffs:
            return 0
        return int(galois.Poly(list(coeffs), field=self.gf)(self.gf(value)))


@lru_cache(maxsize=None)
def _galois_field(order: int):
    return galois.GF(order)


def field_for(p: int, parametric: bool = False):
    return RationalFunctionField(p) if parametric else PrimeField(p)


def invert(field, s):
    return field.inv(s)


def specialize(field, s, value, target=None):
    """Evaluate s at a = value.

    ``target`` is the field the value lives in; GF(p) by default.
    Constants pass through unchanged.
    """
    target = target or PrimeField(field.p)
    if not isinstance(s, RatFun):
        return target.from_int(s) if isinstance(target, ExtensionField) else s
    if isinstance(target, ExtensionField):
        num = target.evaluate(s.num, value)
        den = target.evaluate(s.den, value)
    else:
        num = int(gf_eval(list(s.num), value % field.p, field.p, ZZ)) if s.num else 0
        den = int(gf_eval(list(s.den), value % field.p, field.p, ZZ))
    if den == 0:
        raise PoleAtValue(f"{field.to_text(s)} has a pole at a={value}")
    return target.div(num, den)


def _poly_text(coeffs: tuple[int, ...]) -> str:
    if not coeffs:
        return "0"
    terms = []
    deg = len(coeffs) - 1
    for i, c in enumerate(coeffs):
        e = deg - i
        if c == 0:
            continue
        if e == 0:
            terms.append(str(c))
            continue
        mono = PARAMETER if e == 1 else f"{PARAMETER}^{e}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


_TOKEN = re.compile(r"\s*(?:(\d+)|(a)|([-+*/^()]))")


class _Parser:
    """Recursive descent over integers, ``a``, + - * / ^ and parentheses."""

    def __init__(self, field, text: str):
        self.field = field
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character in scalar {text!r} at {pos}")
            number, name, op = m.groups()
            tokens.append(("int", int(number)) if number else ("a", None) if name else ("op", op))
            pos = m.end()
        if not tokens:
            raise ParseError("empty scalar")
        return tokens

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _take(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def parse(self):
        value = self._expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in scalar {self.text!r}")
        return value

    def _expr(self):
        f = self.field
        value = self._term()
        while self._peek() in (("op", "+"), ("op", "-")):
            _, op = self._take()
            rhs = self._term()
            value = f.add(value, rhs) if op == "+" else f.sub(value, rhs)
        return value

    def _term(self):
        f = self.field
        value = self._unary()
        while self._peek() in (("op", "*"), ("op", "/")):
            _, op = self._take()
            rhs = self._unary()
            value = f.mul(value, rhs) if op == "*" else f.div(value, rhs)
        return value

    def _unary(self):
        if self._peek() == ("op", "-"):
            self._take()
            return self.field.neg(self._unary())
        return self._power()

    def _power(self):
        value = self._atom()
        if self._peek() == ("op", "^"):
            self._take()
            kind, exponent = self._take()
            if kind != "int":
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            value = self.field.pow(value, exponent)
        return value

    def _atom(self):
        kind, value = self._take()
        if kind == "int":
            return self.field.from_int(value)
        if kind == "a":
            return self.field.parameter()
        if (kind, value) == ("op", "("):
            inner = self._expr()
            if self._take() != ("op", ")"):
                raise ParseError(f"unbalanced parentheses in {self.text!r}")
            return inner
        raise ParseError(f"unexpected token in scalar {self.text!r}")
