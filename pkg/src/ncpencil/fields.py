"""Exact scalar arithmetic over Q, Q(sqrt(d)) and F_p.

Everything in this package computes exactly; there is no floating point
anywhere.  A Scalar is an immutable value bound to a FieldDescriptor.  Three
kinds of field are supported:

* ``Q``            the rationals (python Fractions underneath),
* ``Q(sqrt(d))``   a single quadratic extension, d squarefree and not 0, 1
                   (d may be negative, e.g. Q(sqrt(-1))),
* ``F(p)``         a prime field with p >= 5, used as a brute-force search
                   backend only.

Nested extensions such as Q(sqrt(2), sqrt(3)) are deliberately unsupported;
asking for a root that does not exist in the active field produces a typed
NeedsFieldExtensionError carrying a witness polynomial, never an
approximation.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

__all__ = [
    "FieldDescriptor",
    "Fp",
    "NeedsFieldExtensionError",
    "Q",
    "Qsqrt",
    "Scalar",
    "convert_scalar",
    "format_scalar",
    "parse_field",
    "parse_scalar",
    "scalar_arith",
    "sqrt_in_field",
]


class NeedsFieldExtensionError(ArithmeticError):
    """A requested value exists only in a proper extension of the field.

    ``witness`` is a human-readable monic polynomial in t satisfied by the
    missing value, e.g. ``"t^2 - 2"`` when sqrt(2) is needed over Q.
    """

    def __init__(self, message: str, witness: str | None = None):
        full = message if witness is None else f"{message} [witness: {witness}]"
        super().__init__(full)
        self.witness = witness


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


class FieldDescriptor:
    """One of Q, Q(sqrt(d)), F_p.  Equality is structural."""

    __slots__ = ("kind", "param")

    def __init__(self, kind: str, param: int = 0):
        if kind == "Q":
            param = 0
        elif kind == "Qsqrt":
            if param in (0, 1) or not _is_squarefree(param):
                raise ValueError(
                    f"quadratic extension needs squarefree d not in {{0, 1}}, got {param}"
                )
        elif kind == "Fp":
            if param < 5 or not _is_prime(param):
                raise ValueError(f"prime field needs a prime p >= 5, got {param}")
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.param = param

    # -- value constructors ------------------------------------------------

    def zero(self) -> "Scalar":
        return self.from_int(0)

    def one(self) -> "Scalar":
        return self.from_int(1)

    def from_int(self, n: int) -> "Scalar":
        if self.kind == "Fp":
            return Scalar(self, n % self.param, 0)
        return Scalar(self, Fraction(n), Fraction(0))

    def from_fraction(self, q: Fraction) -> "Scalar":
        if self.kind == "Fp":
            p = self.param
            den = q.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {q} vanishes mod {p}")
            return Scalar(self, q.numerator * pow(den, -1, p) % p, 0)
        return Scalar(self, Fraction(q), Fraction(0))

    def from_pair(self, a: Fraction, b: Fraction) -> "Scalar":
        """a + b*sqrt(d); b must be 0 unless this is a quadratic extension."""
        if self.kind == "Fp":
            if b != 0:
                raise ValueError("prime fields carry no sqrt symbol")
            return self.from_fraction(Fraction(a))
        b = Fraction(b)
        if b != 0 and self.kind != "Qsqrt":
            raise ValueError(f"sqrt coordinate requires a quadratic extension, field is {self}")
        return Scalar(self, Fraction(a), b)

    def sqrt_generator(self) -> "Scalar":
        if self.kind != "Qsqrt":
            raise ValueError(f"{self} has no sqrt generator")
        return Scalar(self, Fraction(0), Fraction(1))

    # -- inspection ----------------------------------------------------------

    @property
    def characteristic(self) -> int:
        return self.param if self.kind == "Fp" else 0

    def elements(self):
        """All field elements; finite fields only (used by search oracles)."""
        if self.kind != "Fp":
            raise ValueError("only prime fields are enumerable")
        return [Scalar(self, r, 0) for r in range(self.param)]

    def __eq__(self, other):
        return (
            isinstance(other, FieldDescriptor)
            and self.kind == other.kind
            and self.param == other.param
        )

    def __hash__(self):
        return hash((self.kind, self.param))

    def __repr__(self):
        return f"FieldDescriptor({self})"

    def __str__(self):
        if self.kind == "Q":
            return "Q"
        if self.kind == "Qsqrt":
            return f"Q(sqrt({self.param}))"
        return f"F({self.param})"


Q = FieldDescriptor("Q")


def Qsqrt(d: int) -> FieldDescriptor:
    return FieldDescriptor("Qsqrt", d)


def Fp(p: int) -> FieldDescriptor:
    return FieldDescriptor("Fp", p)


_FIELD_RE = re.compile(r"^(Q|Q\(sqrt\((-?\d+)\)\)|F\((\d+)\))$")


def parse_field(text: str) -> FieldDescriptor:
    """Parse the descriptor syntax used in files and on the CLI."""
    m = _FIELD_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse field descriptor {text!r}")
    if m.group(2) is not None:
        return Qsqrt(int(m.group(2)))
    if m.group(3) is not None:
        return Fp(int(m.group(3)))
    return Q


class Scalar:
    """Immutable field element in canonical form.

    Payload: rational pair (a, b) meaning a + b*sqrt(d) in characteristic 0
    (b identically 0 over plain Q), or an integer residue in [0, p) with b=0
    over F_p.  Construct through a FieldDescriptor, not directly.
    """

    __slots__ = ("field", "a", "b")

    def __init__(self, field: FieldDescriptor, a, b):
        self.field = field
        self.a = a
        self.b = b

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(Fraction(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        if f.kind == "Fp":
            return Scalar(f, (self.a + o.a) % f.param, 0)
        return Scalar(f, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.kind == "Fp":
            return Scalar(f, (-self.a) % f.param, 0)
        return Scalar(f, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        if f.kind == "Fp":
            return Scalar(f, (self.a * o.a) % f.param, 0)
        d = f.param
        if f.kind == "Q":
            return Scalar(f, self.a * o.a, Fraction(0))
        return Scalar(f, self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError(f"inverse of zero in {self.field}")
        f = self.field
        if f.kind == "Fp":
            return Scalar(f, pow(self.a, -1, f.param), 0)
        if self.b == 0:
            return Scalar(f, 1 / self.a, Fraction(0))
        # (a + b sqrt(d))^-1 = (a - b sqrt(d)) / (a^2 - d b^2); the norm is
        # nonzero because d is squarefree and not 1.
        norm = self.a * self.a - f.param * self.b * self.b
        return Scalar(f, self.a / norm, -self.b / norm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Scalar":
        """Galois conjugate a - b*sqrt(d); identity outside extensions."""
        if self.field.kind == "Qsqrt":
            return Scalar(self.field, self.a, -self.b)
        return self

    # -- structure ------------------------------------------------------------

    def to_fraction(self) -> Fraction:
        """The rational value; rejects genuine sqrt parts and F_p residues."""
        if self.field.kind == "Fp":
            raise ValueError("F_p residues are not rationals")
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_fraction(Fraction(other))
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field == other.field and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.field, self.a, self.b))

    def __repr__(self):
        return f"Scalar({self} over {self.field})"

    def __str__(self):
        return format_scalar(self)


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None) -> Scalar:
    """Uniform entry point for the four field operations."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown operation {op!r}")


# -- formatting ----------------------------------------------------------------


def _format_sqrt_term(b: Fraction, d: int) -> str:
    num, den = abs(b.numerator), b.denominator
    s = f"sqrt({d})" if num == 1 else f"{num}*sqrt({d})"
    if den != 1:
        s += f"/{den}"
    return s


def format_scalar(s: Scalar) -> str:
    """Canonical string form; parse_scalar round-trips it."""
    f = s.field
    if f.kind == "Fp":
        return str(s.a)
    if s.b == 0:
        return str(s.a)
    sqrt_part = _format_sqrt_term(s.b, f.param)
    if s.a == 0:
        return sqrt_part if s.b > 0 else "-" + sqrt_part
    joiner = " + " if s.b > 0 else " - "
    return f"{s.a}{joiner}{sqrt_part}"


# -- parsing ---------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(sqrt)|([+\-*/()]))")


def _tokenize_scalar(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"bad character {text[pos]!r} at position {pos}")
        if m.group(1):
            tokens.append(("int", int(m.group(1))))
        elif m.group(2):
            tokens.append(("sqrt", None))
        else:
            tokens.append((m.group(3), None))
        pos = m.end()
    return tokens


class _ScalarParser:
    def __init__(self, tokens, field: FieldDescriptor):
        self.tokens = tokens
        self.i = 0
        self.field = field

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        if self.peek() != kind:
            raise ValueError(f"expected {kind!r} at token {self.i}")
        return self.take()

    def parse_expr(self) -> Scalar:
        value = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self) -> Scalar:
        value = self.parse_factor()
        while True:
            nxt = self.peek()
            if nxt in ("*", "/"):
                op = self.take()[0]
                rhs = self.parse_factor()
                value = value * rhs if op == "*" else value / rhs
            elif nxt in ("sqrt", "(") or nxt == "int":
                # implicit multiplication, e.g. "2sqrt(3)"
                value = value * self.parse_factor()
            else:
                return value

    def parse_factor(self) -> Scalar:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        atom = self.parse_atom()
        return atom if sign > 0 else -atom

    def parse_atom(self) -> Scalar:
        nxt = self.peek()
        if nxt == "int":
            return self.field.from_int(self.take()[1])
        if nxt == "sqrt":
            self.take()
            self.expect("(")
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            n = sign * self.expect("int")[1]
            self.expect(")")
            if self.field.kind != "Qsqrt" or self.field.param != n:
                raise ValueError(f"sqrt({n}) is not available over {self.field}")
            return self.field.sqrt_generator()
        if nxt == "(":
            self.take()
            value = self.parse_expr()
            self.expect(")")
            return value
        raise ValueError(f"unexpected token at position {self.i}")


def parse_scalar(text: str, field: FieldDescriptor) -> Scalar:
    """Parse a scalar expression: integers, fractions, sqrt(d), + - * / ()."""
    tokens = _tokenize_scalar(text)
    if not tokens:
        raise ValueError("empty scalar expression")
    parser = _ScalarParser(tokens, field)
    value = parser.parse_expr()
    if parser.i != len(tokens):
        raise ValueError(f"trailing input at token {parser.i} in {text!r}")
    return value


def convert_scalar(s: Scalar, field: FieldDescriptor) -> Scalar:
    """Recoerce s into another field where an exact embedding exists.

    Rationals embed everywhere (including reduction mod p); genuine sqrt
    parts only survive into the identical extension.
    """
    if s.field == field:
        return s
    if s.field.kind == "Fp":
        raise ValueError(f"no canonical map from {s.field} to {field}")
    if s.b == 0:
        return field.from_fraction(s.a)
    raise NeedsFieldExtensionError(
        f"{format_scalar(s)} does not lie in {field}",
        witness=f"t^2 - ({s.field.param})",
    )


# -- square roots -------------------------------------------------------------------


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _normalize_root(r: Scalar) -> Scalar:
    # deterministic choice between r and -r: make the leading coordinate positive
    if r.field.kind == "Fp":
        return r if r.a <= (r.field.param - r.a) % r.field.param else -r
    if r.a < 0 or (r.a == 0 and r.b < 0):
        return -r
    return r


def sqrt_in_field(s: Scalar) -> Scalar | None:
    """A square root of s inside its own field, or None when there is none."""
    f = s.field
    if s.is_zero():
        return f.zero()
    if f.kind == "Fp":
        p = f.param
        for r in range(p):
            if r * r % p == s.a:
                return _normalize_root(Scalar(f, r, 0))
        return None
    if f.kind == "Q":
        r = _fraction_sqrt(s.a)
        return None if r is None else Scalar(f, r, Fraction(0))
    d = f.param
    if s.b == 0:
        r = _fraction_sqrt(s.a)
        if r is not None:
            return Scalar(f, r, Fraction(0))
        r = _fraction_sqrt(s.a / d)
        if r is not None:
            return _normalize_root(Scalar(f, Fraction(0), r))
        return None
    # (u + v sqrt(d))^2 = a + b sqrt(d)  with  v^2 = (a +- sqrt(a^2 - d b^2))/(2d)
    disc = _fraction_sqrt(s.a * s.a - d * s.b * s.b)
    if disc is None:
        return None
    for root in (disc, -disc):
        v2 = (s.a + root) / (2 * d)
        v = _fraction_sqrt(v2)
        if v is not None and v != 0:
            u = s.b / (2 * v)
            return _normalize_root(Scalar(f, u, v))
    return None
