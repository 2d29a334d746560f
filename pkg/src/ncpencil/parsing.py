"""Presentation files and element expressions.

File format, line oriented (``#`` starts a comment, blank lines ignored)::

    field Q              # or Q(sqrt(d)) or F(p)
    gens x:1 y:1         # generator names with weights (":1" may be omitted)
    graded               # or "filtered"; optional, default filtered
    rel x*y + y*x        # any number of relation lines

Element expressions use ``+ - * / ^`` with parentheses, integer and
fractional scalars, and ``sqrt(d)`` when the field is the matching
quadratic extension.  ``/`` divides by a constant only.  All errors carry
line and column numbers.
"""

from __future__ import annotations

from .algebra import PresentedAlgebra
from .fields import FieldDescriptor, parse_field
from .freealg import Alphabet, FreePoly

__all__ = ["ParseError", "parse_element", "parse_presentation"]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


# -- expression tokenizer ------------------------------------------------------

_OPS = set("+-*/^()")


def _tokenize(text: str, line: int):
    """Tokens as (kind, value, col) with kind in {num, name, op}."""
    out = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        col = i + 1
        if c in _OPS:
            out.append(("op", c, col))
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("num", int(text[i:j]), col))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(("name", text[i:j], col))
            i = j
        else:
            raise ParseError(f"unexpected character {c!r}", line, col)
    return out


class _ExprParser:
    """Recursive descent over the token list.

    expr   := term (('+'|'-') term)*
    term   := signed (('*'|'/') signed)*
    signed := '-' signed | power
    power  := atom ('^' nat)*
    atom   := num | name | sqrt '(' int ')' | '(' expr ')'
    """

    def __init__(self, tokens, alphabet: Alphabet, field: FieldDescriptor, line: int):
        self.toks = tokens
        self.pos = 0
        self.ab = alphabet
        self.field = field
        self.line = line

    def _peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def _next(self):
        t = self._peek()
        if t is None:
            raise ParseError("unexpected end of expression", self.line, self._end_col())
        self.pos += 1
        return t

    def _end_col(self):
        return self.toks[-1][2] + 1 if self.toks else 1

    def _expect_op(self, symbol):
        t = self._next()
        if t[0] != "op" or t[1] != symbol:
            raise ParseError(f"expected {symbol!r}", self.line, t[2])
        return t

    def parse(self) -> FreePoly:
        p = self.expr()
        t = self._peek()
        if t is not None:
            raise ParseError(f"unexpected {t[1]!r}", self.line, t[2])
        return p

    def expr(self) -> FreePoly:
        p = self.term()
        while True:
            t = self._peek()
            if t is not None and t[0] == "op" and t[1] in "+-":
                self.pos += 1
                q = self.term()
                p = p + q if t[1] == "+" else p - q
            else:
                return p

    def term(self) -> FreePoly:
        p = self.signed()
        while True:
            t = self._peek()
            if t is not None and t[0] == "op" and t[1] in "*/":
                self.pos += 1
                q = self.signed()
                if t[1] == "*":
                    p = p * q
                else:
                    if q.is_zero():
                        raise ParseError("division by zero", self.line, t[2])
                    if q.degree() > 0:
                        raise ParseError("division only by a constant", self.line, t[2])
                    p = p.scale(q.constant_part().inverse())
            else:
                return p

    def signed(self) -> FreePoly:
        t = self._peek()
        if t is not None and t[0] == "op" and t[1] == "-":
            self.pos += 1
            return self.signed().scale(self.field.from_int(-1))
        return self.power()

    def power(self) -> FreePoly:
        p = self.atom()
        while True:
            t = self._peek()
            if t is not None and t[0] == "op" and t[1] == "^":
                self.pos += 1
                e = self._next()
                if e[0] != "num":
                    raise ParseError("exponent must be a nonnegative integer", self.line, e[2])
                p = p ** e[1]
            else:
                return p

    def atom(self) -> FreePoly:
        t = self._next()
        if t[0] == "num":
            return FreePoly.constant(self.ab, self.field, self.field.from_int(t[1]))
        if t[0] == "op" and t[1] == "(":
            p = self.expr()
            self._expect_op(")")
            return p
        if t[0] == "name":
            if t[1] == "sqrt":
                self._expect_op("(")
                neg = False
                d = self._peek()
                if d is not None and d[0] == "op" and d[1] == "-":
                    self.pos += 1
                    neg = True
                d = self._next()
                if d[0] != "num":
                    raise ParseError("sqrt takes an integer", self.line, d[2])
                self._expect_op(")")
                val = -d[1] if neg else d[1]
                if self.field.kind != "Qsqrt" or self.field.param != val:
                    raise ParseError(
                        f"sqrt({val}) is not available in field {self.field}",
                        self.line,
                        t[2],
                    )
                return FreePoly.constant(self.ab, self.field, self.field.sqrt_generator())
            if t[1] in self.ab.names:
                return FreePoly.letter(self.ab, self.field, t[1])
            raise ParseError(f"unknown generator {t[1]!r}", self.line, t[2])
        raise ParseError(f"unexpected {t[1]!r}", self.line, t[2])


def parse_element(
    text: str, alphabet: Alphabet, field: FieldDescriptor, line: int = 1
) -> FreePoly:
    """Parse one element expression over the given alphabet and field."""
    tokens = _tokenize(text, line)
    if not tokens:
        raise ParseError("empty expression", line, 1)
    return _ExprParser(tokens, alphabet, field, line).parse()


# -- presentation files ----------------------------------------------------------


def parse_presentation(
    text: str, bound: int = 12, default_field=None
) -> PresentedAlgebra:
    """Parse a presentation file into a PresentedAlgebra.

    ``default_field`` is used when the text has no ``field`` line (the CLI
    passes its --field flag here).  Raises ParseError on bad syntax, unknown
    generators, a relation that is inhomogeneous under ``graded``, or a
    missing gens line.
    """
    field = None
    alphabet = None
    mode = None
    relations = []  # (poly, line)
    field_line = gens_line = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        head, _, rest = stripped.partition(" ")
        rest = rest.strip()
        if head == "field":
            if field is not None:
                raise ParseError("duplicate field line", lineno, 1)
            try:
                field = parse_field(rest)
            except ValueError as e:
                raise ParseError(str(e), lineno, len("field ") + 1) from None
            field_line = lineno
        elif head == "gens":
            if alphabet is not None:
                raise ParseError("duplicate gens line", lineno, 1)
            if not rest:
                raise ParseError("gens line needs at least one generator", lineno, 1)
            letters = []
            for spec in rest.split():
                name, sep, w = spec.partition(":")
                if not name.replace("_", "").isalnum() or name[0].isdigit():
                    raise ParseError(f"bad generator name {name!r}", lineno, 1)
                if name == "sqrt":
                    raise ParseError("'sqrt' is reserved", lineno, 1)
                if sep:
                    if not w.isdigit() or int(w) < 1:
                        raise ParseError(
                            f"bad weight {w!r} for generator {name!r}", lineno, 1
                        )
                    weight = int(w)
                else:
                    weight = 1
                letters.append((name, weight))
            if len({nm for nm, _ in letters}) != len(letters):
                raise ParseError("repeated generator name", lineno, 1)
            alphabet = Alphabet(letters)
            gens_line = lineno
        elif head in ("graded", "filtered"):
            if rest:
                raise ParseError(f"{head} takes no argument", lineno, 1)
            if mode is not None:
                raise ParseError("duplicate graded/filtered line", lineno, 1)
            mode = head
        elif head == "rel":
            if field is None and default_field is not None:
                field = default_field
            if field is None:
                raise ParseError("rel before field line", lineno, 1)
            if alphabet is None:
                raise ParseError("rel before gens line", lineno, 1)
            poly = parse_element(rest, alphabet, field, line=lineno)
            if poly.is_zero():
                raise ParseError("zero relation", lineno, 1)
            relations.append((poly, lineno))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, 1)

    if field is None:
        field = default_field
    if field is None:
        raise ParseError("missing field line", 1, 1)
    if alphabet is None:
        raise ParseError("missing gens line", field_line or 1, 1)
    if mode == "graded":
        for poly, lineno in relations:
            if not poly.is_homogeneous():
                raise ParseError(
                    f"inhomogeneous relation under graded: {poly}", lineno, 1
                )
    return PresentedAlgebra(alphabet, field, [p for p, _ in relations], bound=bound)


def presentation_text(A: PresentedAlgebra, mode: str | None = None) -> str:
    """Render a presentation back to the file format (used by the
    homogenize/dehomogenize commands)."""
    lines = [f"field {A.field}"]
    gens = " ".join(
        f"{name}:{w}" for name, w in zip(A.alphabet.names, A.alphabet.weights)
    )
    lines.append(f"gens {gens}")
    if mode is None:
        mode = "graded" if A.graded else "filtered"
    lines.append(mode)
    for r in A.relations:
        lines.append(f"rel {r}")
    return "\n".join(lines) + "\n"
