"""Two-sided noncommutative Groebner bases, truncated at a weight bound.

The engine keeps a monic, inter-reduced generator list (no leading word is a
factor of another generator's leading word, and no tail word contains any
leading word).  Completion repeatedly resolves overlap ambiguities in
increasing overlap-word order; a nonzero reduced S-polynomial is adjoined and
the sweep restarts.  Ambiguities whose overlap word exceeds the bound are
skipped and recorded, so the completeness flag is set exactly when a full
sweep resolves everything without skipping.  All of this works for graded and
for filtered (inhomogeneous) ideals alike, because the weighted deglex order
is multiplicative and well-founded either way.

Normal words (words avoiding every leading word as a factor) form a k-basis
of the quotient.  They are counted through an Aho-Corasick style automaton
whose states are the proper prefixes of the leading words; the same automaton
yields the exact rational Hilbert series by solving a small linear system
over Q(t) when the basis is complete.
"""

from __future__ import annotations

from fractions import Fraction

from .freealg import Alphabet, FreePoly
from .series import Poly, RationalFunction

__all__ = [
    "DegreeOverflowError",
    "GroebnerBasis",
    "HilbertData",
    "complete",
    "hilbert_rational",
    "hilbert_truncated",
    "membership",
    "normal_words",
    "reduce",
]

_MAX_ADMISSIONS = 20000


class DegreeOverflowError(RuntimeError):
    """Query needs degrees beyond the certified range of an incomplete basis."""

    def __init__(self, message: str, bound: int):
        super().__init__(message)
        self.bound = bound


class HilbertData:
    """Truncated coefficients, plus the exact rational form when available."""

    __slots__ = ("coeffs", "rational")

    def __init__(self, coeffs, rational: RationalFunction | None = None):
        self.coeffs = tuple(int(c) for c in coeffs)
        self.rational = rational

    def __eq__(self, other):
        if not isinstance(other, HilbertData):
            return NotImplemented
        return self.coeffs == other.coeffs and self.rational == other.rational

    def __repr__(self):
        tail = f", {self.rational}" if self.rational is not None else ""
        return f"HilbertData({list(self.coeffs)}{tail})"


def _find_factor(word, lws):
    """First (generator index, position) with lws[i] a factor of word."""
    for gi, lw in enumerate(lws):
        L = len(lw)
        if L > len(word):
            continue
        for pos in range(len(word) - L + 1):
            if word[pos : pos + L] == lw:
                return gi, pos
    return None


def _reduce_terms(f: FreePoly, gens, lws) -> FreePoly:
    """Full normal form of f against monic generators; no bound checks."""
    key = f.alphabet.word_key
    work = dict(f.terms)
    normal = {}
    while work:
        w = max(work, key=key)
        c = work.pop(w)
        hit = _find_factor(w, lws)
        if hit is None:
            normal[w] = c
            continue
        gi, pos = hit
        g = gens[gi]
        lw = lws[gi]
        left, right = w[:pos], w[pos + len(lw) :]
        for gw, gc in g.terms.items():
            if gw == lw:
                continue
            nw = left + gw + right
            nc = -c * gc
            acc = work.get(nw)
            s = nc if acc is None else acc + nc
            if s.is_zero():
                work.pop(nw, None)
            else:
                work[nw] = s
    return FreePoly(f.alphabet, f.field, normal)


class _Automaton:
    """Forbidden-factor automaton: states are proper prefixes of the leading
    words; a transition dies when the extended word acquires a leading word
    as a suffix."""

    __slots__ = ("alphabet", "states", "trans")

    def __init__(self, alphabet: Alphabet, lws):
        self.alphabet = alphabet
        prefixes = {()}
        for lw in lws:
            for i in range(1, len(lw)):
                prefixes.add(lw[:i])
        states = sorted(prefixes, key=lambda w: (len(w), alphabet.word_key(w)))
        index = {s: i for i, s in enumerate(states)}
        lwset = set(lws)
        nletters = len(alphabet)
        trans = []
        for s in states:
            row = []
            for a in range(nletters):
                w = s + (a,)
                dead = any(w[len(w) - len(lw) :] == lw for lw in lwset)
                if dead:
                    row.append(-1)
                    continue
                nxt = None
                for start in range(len(w)):
                    if w[start:] in index:
                        nxt = index[w[start:]]
                        break
                row.append(nxt if nxt is not None else index[()])
            trans.append(row)
        self.states = states
        self.trans = trans

    def counts(self, top: int):
        """Numbers of accepted words of weight 0..top."""
        weights = self.alphabet.weights
        nstates = len(self.states)
        layers = [[0] * nstates for _ in range(top + 1)]
        layers[0][0] = 1
        for d in range(1, top + 1):
            layer = layers[d]
            for s in range(nstates):
                row = self.trans[s]
                for a in range(len(weights)):
                    t = row[a]
                    if t < 0:
                        continue
                    src = d - weights[a]
                    if src >= 0 and layers[src][s]:
                        layer[t] += layers[src][s]
        return [sum(layer) for layer in layers]

    def has_cycle(self) -> bool:
        """True when the accepted language is infinite."""
        n = len(self.states)
        color = [0] * n  # 0 unvisited, 1 on stack, 2 done
        state_stack = [(0, iter([t for t in self.trans[0] if t >= 0]))]
        color[0] = 1
        while state_stack:
            s, it = state_stack[-1]
            advanced = False
            for t in it:
                if color[t] == 1:
                    return True
                if color[t] == 0:
                    color[t] = 1
                    state_stack.append((t, iter([u for u in self.trans[t] if u >= 0])))
                    advanced = True
                    break
            if not advanced:
                color[s] = 2
                state_stack.pop()
        return False

    def rational_series(self) -> RationalFunction:
        """Solve (I - M(t)) v = 1 over Q(t); the start-state entry is H(t)."""
        n = len(self.states)
        weights = self.alphabet.weights
        one = RationalFunction.const(1)
        zero = RationalFunction.const(0)
        rows = []
        for s in range(n):
            row = [zero] * n
            row[s] = one
            for a, t in enumerate(self.trans[s]):
                if t >= 0:
                    mono = RationalFunction.from_poly(Poly([0] * weights[a] + [1]))
                    row[t] = row[t] - mono
            rows.append(list(row) + [one])
        # gaussian elimination over Q(t)
        pivots = []
        r = 0
        for c in range(n):
            pr = None
            for i in range(r, n):
                if not rows[i][c].is_zero():
                    pr = i
                    break
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = one / rows[r][c]
            rows[r] = [v * inv for v in rows[r]]
            for i in range(n):
                if i != r and not rows[i][c].is_zero():
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        if pivots != list(range(n)):
            raise RuntimeError("singular automaton system")
        return rows[0][n]


class GroebnerBasis:
    """Immutable result of completion; see module docstring."""

    __slots__ = ("alphabet", "field", "generators", "bound", "complete", "_automaton")

    def __init__(self, alphabet, field, generators, bound, complete_flag):
        self.alphabet = alphabet
        self.field = field
        self.generators = tuple(generators)
        self.bound = bound
        self.complete = complete_flag
        self._automaton = None

    @property
    def leading_words(self):
        return tuple(g.leading()[0] for g in self.generators)

    def contains_one(self) -> bool:
        return any(g.leading()[0] == () for g in self.generators)

    def automaton(self) -> _Automaton:
        if self._automaton is None:
            self._automaton = _Automaton(self.alphabet, list(self.leading_words))
        return self._automaton

    # -- queries -------------------------------------------------------------

    def _check_range(self, d: int, what: str):
        if not self.complete and d > self.bound:
            raise DegreeOverflowError(
                f"{what} needs weight {d} but the basis is incomplete beyond "
                f"bound {self.bound}",
                self.bound,
            )

    def reduce(self, f: FreePoly) -> FreePoly:
        if f.alphabet != self.alphabet:
            raise ValueError("alphabet mismatch")
        if not f.is_zero():
            self._check_range(f.degree(), "reduction")
        return _reduce_terms(f, self.generators, list(self.leading_words))

    def membership(self, f: FreePoly) -> bool:
        return self.reduce(f).is_zero()

    def normal_words(self, d: int):
        """Normal words of weight exactly d, in descending order."""
        self._check_range(d, "normal word enumeration")
        if self.contains_one():
            return []
        auto = self.automaton()
        weights = self.alphabet.weights
        nletters = len(self.alphabet)
        out = []

        def walk(word, state, remaining):
            if remaining == 0:
                out.append(word)
                return
            for a in range(nletters):
                if weights[a] > remaining:
                    continue
                t = auto.trans[state][a]
                if t >= 0:
                    walk(word + (a,), t, remaining - weights[a])

        walk((), 0, d)
        return out

    def hilbert_truncated(self, top: int) -> HilbertData:
        self._check_range(top, "Hilbert truncation")
        if self.contains_one():
            return HilbertData([0] * (top + 1))
        return HilbertData(self.automaton().counts(top))

    def hilbert_rational(self) -> HilbertData:
        if not self.complete:
            raise DegreeOverflowError(
                f"exact Hilbert series needs a complete basis (bound {self.bound})",
                self.bound,
            )
        if self.contains_one():
            zero = RationalFunction.const(0)
            return HilbertData([0] * (self.bound + 1), zero)
        auto = self.automaton()
        rf = auto.rational_series()
        coeffs = auto.counts(self.bound)
        if rf.expansion(self.bound) != [Fraction(c) for c in coeffs]:
            raise RuntimeError("automaton series disagrees with direct counts")
        return HilbertData(coeffs, rf)

    def finite_dimensional(self) -> bool:
        """True when the normal-word language is finite (needs completeness)."""
        if not self.complete:
            raise DegreeOverflowError(
                f"finiteness is undecidable on an incomplete basis (bound {self.bound})",
                self.bound,
            )
        if self.contains_one():
            return True
        return not self.automaton().has_cycle()

    def __repr__(self):
        flag = "complete" if self.complete else f"truncated at {self.bound}"
        gens = ", ".join(str(g) for g in self.generators)
        return f"GroebnerBasis[{flag}]({gens})"


def _overlaps(lw1, lw2):
    """Proper overlaps: nonempty suffix of lw1 = prefix of lw2, neither
    containing the other.  Yields (overlap word, tail b, head a) with
    overlap = lw1 + b = a + lw2."""
    out = []
    for k in range(1, min(len(lw1), len(lw2))):
        if lw1[len(lw1) - k :] == lw2[:k]:
            out.append((lw1 + lw2[k:], lw2[k:], lw1[: len(lw1) - k]))
    return out


def complete(relations, bound: int = 12, alphabet=None, field=None) -> GroebnerBasis:
    """Run truncated completion on the given relation polynomials."""
    relations = list(relations)
    if not relations:
        if alphabet is None or field is None:
            raise ValueError("empty relation list needs explicit alphabet and field")
        return GroebnerBasis(alphabet, field, [], bound, True)
    alphabet = relations[0].alphabet
    field = relations[0].field
    for r in relations:
        if r.is_zero():
            raise ValueError("zero polynomial among the relations")
        if r.alphabet != alphabet or r.field != field:
            raise ValueError("relations live over different alphabets or fields")
        if r.degree() > bound:
            raise ValueError(
                f"degree bound {bound} is below input degree {r.degree()}"
            )

    key = alphabet.word_key
    gens: list[FreePoly] = []
    queue: list[FreePoly] = sorted(relations, key=lambda p: key(p.leading()[0]))
    admissions = 0

    def current_lws():
        return [g.leading()[0] for g in gens]

    while True:
        while queue:
            admissions += 1
            if admissions > _MAX_ADMISSIONS:
                raise RuntimeError("completion did not stabilize (runaway)")
            p = queue.pop(0)
            if p.is_zero():
                continue
            r = _reduce_terms(p, gens, current_lws())
            if r.is_zero():
                continue
            r = r.monic()
            rlw = r.leading()[0]
            if rlw == ():
                gens[:] = [FreePoly.one(alphabet, field)]
                queue.clear()
                return GroebnerBasis(alphabet, field, gens, bound, True)
            # pull out members any of whose words contain the new leading word
            keep = []
            for g in gens:
                L = len(rlw)
                touched = any(
                    w[pos : pos + L] == rlw
                    for w in g.terms
                    for pos in range(len(w) - L + 1)
                )
                if touched:
                    queue.append(g)
                else:
                    keep.append(g)
            keep.append(r)
            keep.sort(key=lambda g: key(g.leading()[0]))
            gens[:] = keep

        # a full ambiguity sweep in increasing overlap-word order
        ambiguities = []
        lws = current_lws()
        for i, w1 in enumerate(lws):
            for j, w2 in enumerate(lws):
                for overlap, b, a in _overlaps(w1, w2):
                    ambiguities.append((key(overlap), i, j, b, a))
        ambiguities.sort(key=lambda item: (item[0], item[1], item[2]))
        skipped = False
        progressed = False
        for okey, i, j, b, a in ambiguities:
            if okey[0] > bound:
                skipped = True
                continue
            g1, g2 = gens[i], gens[j]
            bpoly = FreePoly(alphabet, field, {b: field.one()})
            apoly = FreePoly(alphabet, field, {a: field.one()})
            s = g1 * bpoly - apoly * g2
            r = _reduce_terms(s, gens, lws)
            if not r.is_zero():
                queue.append(r)
                progressed = True
                break
        if not progressed and not queue:
            return GroebnerBasis(alphabet, field, gens, bound, not skipped)


# -- module-level forms matching the operation names --------------------------------


def reduce(f: FreePoly, basis: GroebnerBasis) -> FreePoly:
    return basis.reduce(f)


def membership(f: FreePoly, basis: GroebnerBasis) -> bool:
    return basis.membership(f)


def normal_words(basis: GroebnerBasis, d: int):
    return basis.normal_words(d)


def hilbert_truncated(basis: GroebnerBasis, top: int) -> HilbertData:
    return basis.hilbert_truncated(top)


def hilbert_rational(basis: GroebnerBasis) -> HilbertData:
    return basis.hilbert_rational()
