"""Univariate polynomials and rational functions over the rationals.

This is the Hilbert-series toolbox: dense Poly values in the variable t with
Fraction coefficients, and gcd-reduced RationalFunction values normalized so
the denominator has constant term 1 (every Hilbert denominator here does).
Rational functions expand into power series through any requested degree via
the standard division recurrence, and compare by cross-multiplication, so
"(1-t^2)^2/(1-t)^2" and "(1+t)^2" are equal values.

parse_ratfun accepts the closed forms the way the golden tables print them,
e.g. "(1+t)/(1-t-t^2)" or "(1-t^2)^2(1-t)/(1-t)^3".
"""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = ["Poly", "RationalFunction", "parse_ratfun"]


class Poly:
    """Dense polynomial in t; coefficients ascending, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def t(cls) -> "Poly":
        return cls([0, 1])

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)])

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly([1])
        for _ in range(n):
            result = result * self
        return result

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dv = other.coeffs
        dd = len(dv) - 1
        lead = dv[-1]
        if len(rem) - 1 < dd:
            return Poly([]), Poly(rem)
        quot = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            if rem[i]:
                q = rem[i] / lead
                quot[i - dd] = q
                for j in range(dd + 1):
                    rem[i - dd + j] -= q * dv[j]
        return Poly(quot), Poly(rem)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a * (1 / a.coeffs[-1])

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                tpow = "t" if i == 1 else f"t^{i}"
                body = tpow if mag == 1 else f"{mag}*{tpow}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({self})"


class RationalFunction:
    """num/den, gcd-reduced, denominator constant term normalized to 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = num.gcd(den)
        if not g.is_zero() and g.degree() > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        scale = den[0] if den[0] != 0 else den.coeffs[-1]
        num = num * (1 / scale)
        den = den * (1 / scale)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls(Poly.const(c), Poly.const(1))

    @classmethod
    def from_poly(cls, p: Poly) -> "RationalFunction":
        return cls(p, Poly.const(1))

    def __add__(self, other):
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def substitute_neg_t(self) -> "RationalFunction":
        """The value at -t (used by the dual Hilbert identity)."""
        flip = lambda p: Poly([c if i % 2 == 0 else -c for i, c in enumerate(p.coeffs)])
        return RationalFunction(flip(self.num), flip(self.den))

    def expansion(self, d: int):
        """Power-series coefficients c_0..c_d; denominator constant is 1."""
        if self.den[0] == 0:
            raise ValueError("not a power series: denominator vanishes at 0")
        out = []
        for n in range(d + 1):
            c = self.num[n]
            for k in range(1, n + 1):
                dk = self.den[k]
                if dk:
                    c -= dk * out[n - k]
            out.append(c)
        return out

    def __str__(self):
        num = f"({self.num})" if len(self.num.coeffs) > 1 else str(self.num)
        if self.den == Poly.const(1):
            return str(self.num)
        return f"{num}/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


_RF_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|([+\-*/^()]))")


def _rf_tokens(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _RF_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"bad character {text[pos]!r} in {text!r}")
        if m.group(1):
            tokens.append(("int", int(m.group(1))))
        elif m.group(2):
            tokens.append(("t", None))
        else:
            tokens.append((m.group(3), None))
        pos = m.end()
    return tokens


class _RFParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse_expr(self):
        v = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.parse_term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def parse_term(self):
        v = self.parse_factor()
        while True:
            nxt = self.peek()
            if nxt in ("*", "/"):
                op = self.take()[0]
                rhs = self.parse_factor()
                v = v * rhs if op == "*" else v / rhs
            elif nxt in ("int", "t", "("):
                v = v * self.parse_factor()
            else:
                return v

    def parse_factor(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        v = self.parse_atom()
        if self.peek() == "^":
            self.take()
            if self.peek() != "int":
                raise ValueError("exponent must be an integer")
            n = self.take()[1]
            base = v
            v = RationalFunction.const(1)
            for _ in range(n):
                v = v * base
        return v if sign > 0 else -v

    def parse_atom(self):
        nxt = self.peek()
        if nxt == "int":
            return RationalFunction.const(self.take()[1])
        if nxt == "t":
            self.take()
            return RationalFunction.from_poly(Poly.t())
        if nxt == "(":
            self.take()
            v = self.parse_expr()
            if self.peek() != ")":
                raise ValueError("unbalanced parenthesis")
            self.take()
            return v
        raise ValueError(f"unexpected token at {self.i}")


def parse_ratfun(text: str) -> RationalFunction:
    tokens = _rf_tokens(text)
    if not tokens:
        raise ValueError("empty rational function")
    p = _RFParser(tokens)
    v = p.parse_expr()
    if p.i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return v
