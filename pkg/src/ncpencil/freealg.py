"""Free associative algebra over a weighted alphabet.

Words are tuples of letter indices.  The monomial order is weighted deglex:
compare total weight first, then letter-by-letter precedence, where the
earlier a letter is listed in the alphabet the larger it is.  The default
two-letter alphabet "x y" therefore has y < x, so x^2 beats xy beats yx
beats y^2 in weight 2.  Since all letter weights are positive, two distinct
words of equal weight are never prefix-comparable and the letterwise
comparison is total.

FreePoly values are immutable maps word -> nonzero Scalar.  GeneratorMap
applies an algebra endomorphism given by letter images; homogenize and
dehomogenize move between affine and projective presentations through an
appended central-variable letter (centrality itself is the consumer's
business, these are raw free-algebra operations).
"""

from __future__ import annotations

from .fields import FieldDescriptor, Scalar

__all__ = [
    "Alphabet",
    "FreePoly",
    "GeneratorMap",
    "dehomogenize",
    "homogenize",
    "substitute",
    "word_compare",
]

Word = tuple


class Alphabet:
    """Ordered list of (name, positive weight); listing order = precedence."""

    __slots__ = ("names", "weights", "_index")

    def __init__(self, letters):
        names = tuple(name for name, _ in letters)
        weights = tuple(int(w) for _, w in letters)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate letter names in {names}")
        if any(w <= 0 for w in weights):
            raise ValueError("letter weights must be positive")
        self.names = names
        self.weights = weights
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, Alphabet)
            and self.names == other.names
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.names, self.weights))

    def __repr__(self):
        inner = " ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))
        return f"Alphabet({inner})"

    def index(self, name: str) -> int:
        if name not in self._index:
            raise KeyError(f"unknown generator {name!r}")
        return self._index[name]

    def weight(self, word: Word) -> int:
        ws = self.weights
        return sum(ws[i] for i in word)

    def word_key(self, word: Word):
        n = len(self.names) - 1
        ws = self.weights
        total = 0
        ranks = []
        for i in word:
            total += ws[i]
            ranks.append(n - i)
        return (total, tuple(ranks))

    def word_str(self, word: Word) -> str:
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            run = j - i
            name = self.names[word[i]]
            parts.append(name if run == 1 else f"{name}^{run}")
            i = j
        return "*".join(parts)

    def extend(self, name: str, weight: int = 1) -> "Alphabet":
        if name in self._index:
            raise ValueError(f"letter {name!r} already present")
        return Alphabet(list(zip(self.names, self.weights)) + [(name, weight)])

    def without(self, name: str) -> "Alphabet":
        i = self.index(name)
        letters = [(n, w) for j, (n, w) in enumerate(zip(self.names, self.weights)) if j != i]
        return Alphabet(letters)


def word_compare(alphabet: Alphabet, u: Word, v: Word) -> int:
    """-1, 0 or 1 as u <, =, > v in the weighted deglex order."""
    ku, kv = alphabet.word_key(u), alphabet.word_key(v)
    return -1 if ku < kv else (0 if ku == kv else 1)


class FreePoly:
    """Noncommutative polynomial: immutable dict word -> nonzero Scalar."""

    __slots__ = ("alphabet", "field", "terms")

    def __init__(self, alphabet: Alphabet, field: FieldDescriptor, terms: dict):
        self.alphabet = alphabet
        self.field = field
        self.terms = terms  # owned; never mutated after construction

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, alphabet, field):
        return cls(alphabet, field, {})

    @classmethod
    def one(cls, alphabet, field):
        return cls(alphabet, field, {(): field.one()})

    @classmethod
    def constant(cls, alphabet, field, c: Scalar):
        return cls(alphabet, field, {} if c.is_zero() else {(): c})

    @classmethod
    def letter(cls, alphabet, field, name: str):
        return cls(alphabet, field, {(alphabet.index(name),): field.one()})

    @classmethod
    def from_terms(cls, alphabet, field, items):
        terms = {}
        for word, coeff in items:
            if coeff.is_zero():
                continue
            acc = terms.get(word)
            s = coeff if acc is None else acc + coeff
            if s.is_zero():
                terms.pop(word, None)
            else:
                terms[word] = s
        return cls(alphabet, field, terms)

    def letters(self):
        """Polynomials for every letter, in alphabet order."""
        return [FreePoly.letter(self.alphabet, self.field, n) for n in self.alphabet.names]

    # -- predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        wt = self.alphabet.weight
        return max(wt(w) for w in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        wt = self.alphabet.weight
        degs = {wt(w) for w in self.terms}
        return len(degs) == 1

    # -- arithmetic -----------------------------------------------------------------

    def _check(self, other):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        if self.field != other.field:
            raise ValueError("field mismatch")

    def __add__(self, other):
        if not isinstance(other, FreePoly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            acc = terms.get(w)
            s = c if acc is None else acc + c
            if s.is_zero():
                terms.pop(w, None)
            else:
                terms[w] = s
        return FreePoly(self.alphabet, self.field, terms)

    def __neg__(self):
        return FreePoly(self.alphabet, self.field, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, FreePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FreePoly):
            self._check(other)
            terms = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    acc = terms.get(w)
                    s = c if acc is None else acc + c
                    if s.is_zero():
                        terms.pop(w, None)
                    else:
                        terms[w] = s
            return FreePoly(self.alphabet, self.field, terms)
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "FreePoly":
        if isinstance(c, int):
            c = self.field.from_int(c)
        if c.is_zero():
            return FreePoly.zero(self.alphabet, self.field)
        return FreePoly(self.alphabet, self.field, {w: k * c for w, k in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = FreePoly.one(self.alphabet, self.field)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, FreePoly):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.field == other.field
            and self.terms == other.terms
        )

    __hash__ = None

    # -- structure ----------------------------------------------------------------

    def coefficient(self, word: Word) -> Scalar:
        return self.terms.get(word, self.field.zero())

    def leading(self):
        """(word, coefficient) of the largest term; rejects zero."""
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        key = self.alphabet.word_key
        w = max(self.terms, key=key)
        return w, self.terms[w]

    def monic(self) -> "FreePoly":
        _, c = self.leading()
        return self.scale(c.inverse())

    def homogeneous_component(self, j: int) -> "FreePoly":
        wt = self.alphabet.weight
        return FreePoly(
            self.alphabet, self.field, {w: c for w, c in self.terms.items() if wt(w) == j}
        )

    def components(self) -> dict:
        """Nonzero homogeneous components keyed by weight."""
        wt = self.alphabet.weight
        out = {}
        for w, c in self.terms.items():
            out.setdefault(wt(w), {})[w] = c
        return {j: FreePoly(self.alphabet, self.field, t) for j, t in sorted(out.items())}

    def top_part(self) -> "FreePoly":
        return self.homogeneous_component(self.degree())

    def constant_part(self) -> Scalar:
        return self.coefficient(())

    def sorted_terms(self):
        key = self.alphabet.word_key
        return sorted(self.terms.items(), key=lambda item: key(item[0]), reverse=True)

    def to_field(self, field: FieldDescriptor) -> "FreePoly":
        """Recoerce coefficients, e.g. Q -> F_p for finite-field oracles."""
        from .fields import convert_scalar

        return FreePoly.from_terms(
            self.alphabet, field, ((w, convert_scalar(c, field)) for w, c in self.terms.items())
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            cs = str(c)
            sign = "+"
            if cs.startswith("-"):
                sign, cs = "-", cs[1:]
            interior = cs[1:] if cs else cs
            if ("+" in interior) or ("-" in interior) or (" " in cs):
                cs = f"({cs})"
            if w == ():
                body = cs
            elif cs == "1":
                body = self.alphabet.word_str(w)
            else:
                body = f"{cs}*{self.alphabet.word_str(w)}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"FreePoly({self})"


class GeneratorMap:
    """Endomorphism data: one image polynomial per letter."""

    __slots__ = ("alphabet", "field", "images")

    def __init__(self, alphabet: Alphabet, field: FieldDescriptor, images):
        images = tuple(images)
        if len(images) != len(alphabet):
            raise ValueError("one image per letter required")
        for img in images:
            if img.alphabet != alphabet or img.field != field:
                raise ValueError("image alphabet/field mismatch")
        self.alphabet = alphabet
        self.field = field
        self.images = images

    @classmethod
    def identity(cls, alphabet, field):
        return cls(
            alphabet, field, [FreePoly.letter(alphabet, field, n) for n in alphabet.names]
        )

    @classmethod
    def from_matrix(cls, alphabet, field, rows):
        """Linear map on a weight-1 alphabet: letter i maps to sum of
        rows[i][j] * letter j."""
        if any(w != 1 for w in alphabet.weights):
            raise ValueError("matrix maps need an all-weight-1 alphabet")
        n = len(alphabet)
        images = []
        for i in range(n):
            if len(rows[i]) != n:
                raise ValueError("matrix shape mismatch")
            images.append(
                FreePoly.from_terms(
                    alphabet, field, (((j,), rows[i][j]) for j in range(n))
                )
            )
        return cls(alphabet, field, images)

    def image_of(self, name: str) -> FreePoly:
        return self.images[self.alphabet.index(name)]

    def is_graded(self) -> bool:
        for i, img in enumerate(self.images):
            if img.is_zero():
                return False
            if not img.is_homogeneous() or img.degree() != self.alphabet.weights[i]:
                return False
        return True

    def linear_matrix(self):
        """rows[i][j] = coefficient of letter j in the image of letter i.
        Requires every image to be a linear form in the letters."""
        n = len(self.alphabet)
        rows = []
        for img in self.images:
            row = [self.field.zero()] * n
            for w, c in img.terms.items():
                if len(w) != 1:
                    raise ValueError("image is not a linear form")
                row[w[0]] = c
            rows.append(row)
        return rows

    def is_invertible(self) -> bool:
        from .linalg import matrix_rank

        try:
            rows = self.linear_matrix()
        except ValueError:
            return False
        return matrix_rank(rows, self.field) == len(self.alphabet)

    def inverse(self) -> "GeneratorMap":
        from .linalg import matrix_inverse

        rows = self.linear_matrix()
        inv = matrix_inverse(rows, self.field)
        if inv is None:
            raise ValueError("map is singular")
        return GeneratorMap.from_matrix(self.alphabet, self.field, inv)

    def compose(self, inner: "GeneratorMap") -> "GeneratorMap":
        """self after inner: (self.compose(inner))(f) = self(inner(f))."""
        return GeneratorMap(
            self.alphabet, self.field, [substitute(img, self) for img in inner.images]
        )

    def __eq__(self, other):
        if not isinstance(other, GeneratorMap):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.field == other.field
            and self.images == other.images
        )

    __hash__ = None

    def __repr__(self):
        inner = ", ".join(
            f"{n} -> {img}" for n, img in zip(self.alphabet.names, self.images)
        )
        return f"GeneratorMap({inner})"


def substitute(f: FreePoly, m: GeneratorMap) -> FreePoly:
    """Apply the algebra map determined by m's letter images to f."""
    if f.alphabet != m.alphabet:
        raise ValueError("alphabet mismatch")
    out = FreePoly.zero(f.alphabet, f.field)
    for w, c in f.terms.items():
        acc = FreePoly.constant(f.alphabet, f.field, c)
        for i in w:
            acc = acc * m.images[i]
        out = out + acc
    return out


def homogenize(f: FreePoly, z: str = "z") -> FreePoly:
    """f^z = sum of f_i z^(d-i) over the alphabet extended by a weight-1
    letter z; meaningful in a commutative context."""
    if f.is_zero():
        raise ValueError("cannot homogenize the zero polynomial")
    big = f.alphabet.extend(z, 1)
    zi = big.index(z)
    d = f.degree()
    wt = f.alphabet.weight
    return FreePoly(
        big, f.field, {w + (zi,) * (d - wt(w)): c for w, c in f.terms.items()}
    )


def dehomogenize(f: FreePoly, z: str = "z") -> FreePoly:
    """Set the letter z to 1 and drop it from the alphabet."""
    zi = f.alphabet.index(z)
    small = f.alphabet.without(z)
    remap = {}
    for name in small.names:
        remap[f.alphabet.index(name)] = small.index(name)
    items = []
    for w, c in f.terms.items():
        items.append((tuple(remap[i] for i in w if i != zi), c))
    return FreePoly.from_terms(small, f.field, items)
