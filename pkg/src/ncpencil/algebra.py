"""Presented graded/filtered algebras and constructions on them.

A PresentedAlgebra bundles a field, an alphabet, and a relation list, and
eagerly computes a truncated Groebner basis so every instance carries its
normal-word machinery around.  On top of that live the global constructions:
classification of a single quadratic relation in two letters, quadratic
duals, the dual Hilbert-series identity, graded Clifford presentations,
graded automorphism checks, (de)homogenization, the distinguished degree-2
element of the dual, and the 4-dimensional localized algebra built from it.
"""

from __future__ import annotations

import itertools
import random

from . import grobner
from .fields import Scalar, sqrt_in_field
from .freealg import Alphabet, FreePoly, GeneratorMap, dehomogenize, homogenize, substitute
from .linalg import mat_mul, matrix_inverse, matrix_rank, null_space, rref
from .series import Poly, RationalFunction

__all__ = [
    "PresentedAlgebra",
    "RelationClass",
    "check_graded_auto",
    "classify_relation",
    "clifford_C",
    "complete_intersection_check",
    "dehomogenized_algebra",
    "dual_hilbert_check",
    "f_shriek",
    "find_regular_linear",
    "graded_clifford",
    "homogenized_algebra",
    "is_qpa2",
    "quadratic_dual",
]


class PresentedAlgebra:
    """Immutable presentation with cached Groebner data.

    The graded flag is derived, not declared: it is set exactly when every
    relation is homogeneous for the letter weights.
    """

    __slots__ = ("alphabet", "field", "relations", "graded", "bound", "gb", "_hilbert")

    def __init__(self, alphabet: Alphabet, field, relations, bound: int = 12):
        relations = tuple(relations)
        for r in relations:
            if not isinstance(r, FreePoly):
                raise TypeError("relations must be FreePoly values")
            if r.is_zero():
                raise ValueError("zero relation in presentation")
            if r.alphabet != alphabet or r.field != field:
                raise ValueError("relation over a different alphabet or field")
        self.alphabet = alphabet
        self.field = field
        self.relations = relations
        self.graded = all(r.is_homogeneous() for r in relations)
        self.bound = bound
        self.gb = grobner.complete(list(relations), bound=bound, alphabet=alphabet, field=field)
        self._hilbert = None

    # -- basic queries --------------------------------------------------------

    def letter(self, name: str) -> FreePoly:
        return FreePoly.letter(self.alphabet, self.field, name)

    def one(self) -> FreePoly:
        return FreePoly.one(self.alphabet, self.field)

    def reduce(self, f: FreePoly) -> FreePoly:
        return self.gb.reduce(f)

    def membership(self, f: FreePoly) -> bool:
        return self.gb.membership(f)

    def dim(self, d: int) -> int:
        return len(self.gb.normal_words(d))

    def hilbert(self) -> grobner.HilbertData:
        if self._hilbert is None:
            if self.gb.complete:
                self._hilbert = self.gb.hilbert_rational()
            else:
                self._hilbert = self.gb.hilbert_truncated(self.bound)
        return self._hilbert

    def quotient(self, extra_relations) -> "PresentedAlgebra":
        return PresentedAlgebra(
            self.alphabet, self.field, self.relations + tuple(extra_relations), self.bound
        )

    def is_quadratic(self) -> bool:
        return (
            all(w == 1 for w in self.alphabet.weights)
            and all(r.is_homogeneous() and r.degree() == 2 for r in self.relations)
        )

    def __eq__(self, other):
        if not isinstance(other, PresentedAlgebra):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.field == other.field
            and self.relations == other.relations
        )

    def __repr__(self):
        rels = ", ".join(str(r) for r in self.relations)
        mode = "graded" if self.graded else "filtered"
        return f"PresentedAlgebra[{mode}, {self.field}]<{self.alphabet}; {rels}>"


def _relation_matrix(relations, n):
    """Rows of quadratic-relation coefficients in the fixed word order
    (0,0), (0,1), ..., (n-1,n-1)."""
    words = [tuple(p) for p in itertools.product(range(n), repeat=2)]
    rows = []
    for r in relations:
        rows.append([r.coefficient(w) for w in words])
    return rows, words


class RelationClass:
    """Label and invariant for one quadratic relation in two letters.

    KLAMBDA stores the scale invariant up to inversion: `lam` when the value
    lives in the coefficient field, otherwise the monic quadratic
    t^2 - trace*t + 1 whose roots are the negated eigenvalue pair.  Equality
    compares the trace, which identifies lam with 1/lam.
    """

    __slots__ = ("label", "lam", "trace", "witness", "field")

    def __init__(self, label, field, lam=None, trace=None, witness=None):
        self.label = label
        self.field = field
        self.lam = lam
        self.trace = trace
        self.witness = witness

    def quadratic(self):
        """Coefficients (1, -trace, 1) of the monic quadratic for -lam."""
        if self.label != "KLAMBDA":
            return None
        one = self.field.one()
        return (one, -self.trace, one)

    def __eq__(self, other):
        if not isinstance(other, RelationClass):
            return NotImplemented
        if self.label != other.label or self.field != other.field:
            return False
        if self.label == "KLAMBDA":
            return self.trace == other.trace
        return True

    def __repr__(self):
        if self.label == "KLAMBDA":
            if self.lam is not None:
                return f"KLAMBDA({self.lam})"
            _, b, _ = self.quadratic()
            return f"KLAMBDA(root of t^2 + ({b})t + 1)"
        return self.label


_CANONICAL_RELATION = {
    "X2": lambda field: [[field.one(), field.zero()], [field.zero(), field.zero()]],
    "XY": lambda field: [[field.zero(), field.one()], [field.zero(), field.zero()]],
    "KJ": lambda field: [[field.zero(), field.one()], [-field.one(), field.one()]],
}


def _congruence_witness(M, target, field):
    """Small search for invertible P with P^T M P proportional to target."""
    vals = [field.from_int(v) for v in (0, 1, -1, 2, -2)]
    for entries in itertools.product(vals, repeat=4):
        P = [[entries[0], entries[1]], [entries[2], entries[3]]]
        det = P[0][0] * P[1][1] - P[0][1] * P[1][0]
        if det.is_zero():
            continue
        Pt = [[P[0][0], P[1][0]], [P[0][1], P[1][1]]]
        G = mat_mul(mat_mul(Pt, M, field), P, field)
        ratio = None
        ok = True
        for i in range(2):
            for j in range(2):
                a, b = G[i][j], target[i][j]
                if b.is_zero():
                    if not a.is_zero():
                        ok = False
                elif ratio is None:
                    ratio = a / b
                elif a != ratio * b:
                    ok = False
            if not ok:
                break
        if ok and ratio is not None and not ratio.is_zero():
            return P
    return None


def classify_relation(h: FreePoly, find_witness: bool = True) -> RelationClass:
    """Classify one nonzero homogeneous quadratic in two weight-1 letters."""
    ab = h.alphabet
    if len(ab) != 2 or ab.weights != (1, 1):
        raise ValueError("classification needs exactly two weight-1 letters")
    if h.is_zero() or not h.is_homogeneous() or h.degree() != 2:
        raise ValueError("input must be nonzero homogeneous of degree 2")
    field = h.field
    M = [[h.coefficient((i, j)) for j in range(2)] for i in range(2)]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if det.is_zero():
        symmetric = M[0][1] == M[1][0]
        label = "X2" if symmetric else "XY"
        witness = None
        if find_witness:
            witness = _congruence_witness(M, _CANONICAL_RELATION[label](field), field)
        return RelationClass(label, field, witness=witness)

    Mt = [[M[0][0], M[1][0]], [M[0][1], M[1][1]]]
    C = mat_mul(matrix_inverse(Mt, field), M, field)
    one = field.one()
    ident = [[one, field.zero()], [field.zero(), one]]
    neg_ident = [[-one, field.zero()], [field.zero(), -one]]
    trace = C[0][0] + C[1][1]

    if C == neg_ident:
        lam = one
    elif C == ident:
        lam = -one
    else:
        disc = trace * trace - field.from_int(4)
        if disc.is_zero():
            if trace == field.from_int(-2):
                witness = None
                if find_witness:
                    witness = _congruence_witness(M, _CANONICAL_RELATION["KJ"](field), field)
                return RelationClass("KJ", field, witness=witness)
            raise RuntimeError(
                "defective cosquare with eigenvalue +1: contradicts the "
                "completeness of the quadratic classification"
            )
        s = sqrt_in_field(disc)
        lam = None if s is None else (-trace + s) / field.from_int(2)

    if lam is not None:
        trace = -(lam + lam.inverse())
    witness = None
    if find_witness and lam is not None:
        target = [[field.zero(), one], [-lam, field.zero()]]
        witness = _congruence_witness(M, target, field)
    return RelationClass("KLAMBDA", field, lam=lam, trace=trace, witness=witness)


def is_qpa2(h: FreePoly):
    """Whether k<x,y>/(h) is a rank-2 quantum plane; returns (bool, class)."""
    cls = classify_relation(h, find_witness=False)
    return cls.label in ("KJ", "KLAMBDA"), cls


def quadratic_dual(A: PresentedAlgebra) -> PresentedAlgebra:
    """Orthogonal-complement presentation on the same letter names."""
    if not A.is_quadratic():
        raise ValueError("quadratic dual needs a homogeneous quadratic presentation")
    n = len(A.alphabet)
    rows, words = _relation_matrix(A.relations, n)
    basis = null_space(rows, A.field, ncols=n * n)
    rels = []
    for vec in basis:
        terms = {w: c for w, c in zip(words, vec) if not c.is_zero()}
        rels.append(FreePoly(A.alphabet, A.field, terms))
    return PresentedAlgebra(A.alphabet, A.field, rels, A.bound)


def dual_hilbert_check(A: PresentedAlgebra, top: int = 12) -> bool:
    """Coefficient check of H_dual(t) * H_A(-t) = 1 through degree `top`."""
    dual = quadratic_dual(A)
    a = A.gb.hilbert_truncated(top).coeffs
    b = dual.gb.hilbert_truncated(top).coeffs
    for d in range(top + 1):
        total = 0
        for j in range(d + 1):
            sign = -1 if (d - j) % 2 else 1
            total += b[j] * sign * a[d - j]
        if total != (1 if d == 0 else 0):
            return False
    return True


def graded_clifford(matrices, field, bound: int = 12) -> PresentedAlgebra:
    """Presentation on x_i (weight 1) and y_j (weight 2) from n symmetric
    n x n coefficient matrices; the y's are forced central among themselves
    and against the x's."""
    n = len(matrices)
    if n == 0:
        raise ValueError("need at least one matrix")
    flat = []
    for M in matrices:
        if len(M) != n or any(len(row) != n for row in M):
            raise ValueError("matrices must be n x n for n of them")
        for i in range(n):
            for j in range(n):
                if M[i][j] != M[j][i]:
                    raise ValueError("matrices must be symmetric")
        flat.append([M[i][j] for i in range(n) for j in range(n)])
    if matrix_rank(flat, field) != n:
        raise ValueError("matrices must be linearly independent")

    names = [(f"x{i + 1}", 1) for i in range(n)] + [(f"y{j + 1}", 2) for j in range(n)]
    ab = Alphabet(names)
    xs = [FreePoly.letter(ab, field, f"x{i + 1}") for i in range(n)]
    ys = [FreePoly.letter(ab, field, f"y{j + 1}") for j in range(n)]
    rels = []
    for i in range(n):
        for j in range(i, n):
            r = xs[i] * xs[j] + xs[j] * xs[i]
            for m in range(n):
                c = matrices[m][i][j]
                if not c.is_zero():
                    r = r - FreePoly.constant(ab, field, c) * ys[m]
            rels.append(r)
    for i in range(n):
        for j in range(n):
            rels.append(xs[i] * ys[j] - ys[j] * xs[i])
    for i in range(n):
        for j in range(i + 1, n):
            rels.append(ys[i] * ys[j] - ys[j] * ys[i])
    return PresentedAlgebra(ab, field, rels, bound)


def check_graded_auto(A: PresentedAlgebra, P: GeneratorMap) -> bool:
    """True when P is a graded endomorphism sending every relation into the
    ideal and invertible on the weight-1 letters."""
    if P.alphabet != A.alphabet or P.field != A.field:
        raise ValueError("map over a different alphabet or field")
    if not P.is_graded():
        raise ValueError("map is not graded")
    w1 = [i for i, w in enumerate(A.alphabet.weights) if w == 1]
    block = [[P.images[i].coefficient((j,)) for j in w1] for i in w1]
    if matrix_rank(block, A.field) != len(w1):
        raise ValueError("map is singular on the weight-1 letters")
    return all(A.membership(substitute(r, P)) for r in A.relations)


def _commutators(ab: Alphabet, field) -> list:
    out = []
    for i in range(len(ab)):
        for j in range(i + 1, len(ab)):
            xi = FreePoly(ab, field, {(i,): field.one()})
            xj = FreePoly(ab, field, {(j,): field.one()})
            out.append(xi * xj - xj * xi)
    return out


def is_commutator(r: FreePoly) -> bool:
    """Whether r is a scalar multiple of x_i x_j - x_j x_i."""
    terms = r.terms
    if len(terms) != 2:
        return False
    (w1, c1), (w2, c2) = sorted(terms.items())
    if len(w1) != 2 or len(w2) != 2:
        return False
    if w1 != (w2[1], w2[0]) or w1[0] == w1[1]:
        return False
    return (c1 + c2).is_zero()


def homogenized_algebra(F, z_name: str = "z", bound: int = 12) -> PresentedAlgebra:
    """Commutative presentation on the old letters plus a new weight-1 letter,
    with every F entry made homogeneous by right-multiplying the new letter."""
    F = list(F)
    if not F:
        raise ValueError("need at least one polynomial")
    ab = F[0].alphabet
    field = F[0].field
    for f in F:
        if f.is_zero():
            raise ValueError("zero entry")
        if f.alphabet != ab or f.field != field:
            raise ValueError("entries over different alphabets or fields")
    lifted = [homogenize(f, z_name) for f in F]
    big = lifted[0].alphabet
    rels = _commutators(big, field) + lifted
    return PresentedAlgebra(big, field, rels, bound)


def complete_intersection_check(ambient: PresentedAlgebra, elements):
    """Exact Hilbert-series drop test: the quotient by the elements must have
    series prod(1 - t^{d_i}) times the ambient one.  Returns (ok, quotient)."""
    elements = list(elements)
    quotient = ambient.quotient(elements)
    ha = ambient.hilbert()
    hq = quotient.hilbert()
    if ha.rational is None or hq.rational is None:
        raise grobner.DegreeOverflowError(
            "intersection check needs complete bases on both sides", ambient.bound
        )
    expected = ha.rational
    for f in elements:
        d = f.degree()
        expected = expected * RationalFunction.from_poly(
            Poly([1] + [0] * (d - 1) + [-1])
        )
    return expected == hq.rational, quotient


def find_regular_linear(B: PresentedAlgebra, seed: int = 0, random_tries: int = 64):
    """Search for a linear form whose quotient drops the Hilbert series by
    exactly (1 - t); returns (form, certificate dict)."""
    if not B.graded:
        raise ValueError("search needs a graded presentation")
    if not B.gb.complete:
        raise grobner.DegreeOverflowError("search needs a complete basis", B.bound)
    n = len(B.alphabet)
    if any(w != 1 for w in B.alphabet.weights):
        raise ValueError("search needs weight-1 generators")

    def candidates():
        for i in range(n):
            coeffs = [0] * n
            coeffs[i] = 1
            yield coeffs
        for combo in itertools.product((0, 1, -1, 2, -2), repeat=n):
            if all(c == 0 for c in combo):
                continue
            if sum(1 for c in combo if c != 0) == 1 and abs(next(c for c in combo if c)) == 1:
                continue  # pure generators already tried
            yield list(combo)
        rng = random.Random(seed)
        for _ in range(random_tries):
            yield [rng.randint(-9, 9) for _ in range(n)]

    hb = B.hilbert().rational
    drop = RationalFunction.from_poly(Poly([1, -1]))
    for coeffs in candidates():
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                terms[(i,)] = B.field.from_int(c)
        if not terms:
            continue
        z = FreePoly(B.alphabet, B.field, terms)
        try:
            quotient = B.quotient([z])
        except ValueError:
            continue
        if not quotient.gb.complete:
            continue
        hq = quotient.hilbert().rational
        if hq == drop * hb:
            cert = {
                "element": str(z),
                "ambient_hilbert": str(hb),
                "quotient_hilbert": str(hq),
                "identity": "quotient = (1 - t) * ambient",
            }
            return z, cert
    raise RuntimeError(
        "no linear form passed the Hilbert drop test within the search budget"
    )


def dehomogenized_algebra(
    B: PresentedAlgebra, z: FreePoly, certificate=None, bound: int | None = None
) -> PresentedAlgebra:
    """Set a certified degree-1 form to 1.

    When the form is not a plain letter, an invertible change of letters makes
    it one first.  The result is the filtered presentation on the remaining
    letters; zero relations (the dead commutators) are dropped.
    """
    if z.is_zero() or not z.is_homogeneous() or z.degree() != 1:
        raise ValueError("need a nonzero degree-1 form")
    if certificate is None:
        hb = B.hilbert().rational
        hq = B.quotient([z]).hilbert().rational
        if hb is None or hq is None:
            raise grobner.DegreeOverflowError(
                "certification needs complete bases", B.bound
            )
        if hq != RationalFunction.from_poly(Poly([1, -1])) * hb:
            raise ValueError("form is not certified regular: Hilbert drop test fails")

    ab = B.alphabet
    field = B.field
    coeffs = [z.coefficient((i,)) for i in range(len(ab))]
    support = [i for i, c in enumerate(coeffs) if not c.is_zero()]
    j = support[-1]
    rels = list(B.relations)
    if len(support) > 1 or not coeffs[j].is_one():
        images = []
        for i in range(len(ab)):
            if i != j:
                images.append(FreePoly(ab, field, {(i,): field.one()}))
            else:
                terms = {(j,): field.one()}
                for i2 in support:
                    if i2 != j:
                        terms[(i2,)] = -coeffs[i2]
                img = FreePoly(ab, field, terms).scale(coeffs[j].inverse())
                images.append(img)
        change = GeneratorMap(ab, field, images)
        rels = [substitute(r, change) for r in rels]
    zname = ab.names[j]
    out = []
    for r in rels:
        s = dehomogenize(r, zname)
        if not s.is_zero():
            out.append(s)
    small = dehomogenize(FreePoly.zero(ab, field), zname).alphabet
    return PresentedAlgebra(small, field, out, bound if bound is not None else B.bound)


def f_shriek(S: PresentedAlgebra, f: FreePoly) -> FreePoly:
    """Distinguished degree-2 element of the dual of S/(f): the kernel of the
    degree-2 surjection onto the dual of S, reduced to normal form."""
    if not S.is_quadratic():
        raise ValueError("ambient must be homogeneous quadratic")
    if f.is_zero() or not f.is_homogeneous() or f.degree() != 2:
        raise ValueError("element must be nonzero homogeneous of degree 2")
    n = len(S.alphabet)
    rows_S, words = _relation_matrix(S.relations, n)
    fvec = [f.coefficient(w) for w in words]
    rank_S = matrix_rank(rows_S, S.field)
    if matrix_rank(rows_S + [fvec], S.field) != rank_S + 1:
        raise ValueError("element already lies in the relation span")

    perp_S = null_space(rows_S, S.field, ncols=n * n)
    perp_A = null_space(rows_S + [fvec], S.field, ncols=n * n)
    if len(perp_S) - len(perp_A) != 1:
        raise RuntimeError("dual kernel dimension is not 1")
    base, _ = rref([list(v) for v in perp_A], S.field)
    base = [row for row in base if any(not c.is_zero() for c in row)]
    rep = None
    for v in perp_S:
        stacked, _ = rref([list(r) for r in base] + [list(v)], S.field)
        nonzero = [row for row in stacked if any(not c.is_zero() for c in row)]
        if len(nonzero) == len(base) + 1:
            rep = v
            break
    if rep is None:
        raise RuntimeError("dual kernel has no representative (inconsistent data)")
    poly = FreePoly(
        S.alphabet, S.field, {w: c for w, c in zip(words, rep) if not c.is_zero()}
    )
    A = S.quotient([f])
    dual = quadratic_dual(A)
    out = dual.reduce(poly)
    if out.is_zero():
        raise RuntimeError("dual kernel representative vanished after reduction")
    return out


def _weight2_combos(words, field):
    """Deterministic degree-2 candidates: single normal words first, then
    small integer combinations with leading coefficient 1."""
    n = len(words)
    for w in words:
        yield {w: field.one()}
    for combo in itertools.product((0, 1, -1, 2, -2), repeat=n):
        nz = [c for c in combo if c != 0]
        if len(nz) < 2 or nz[0] != 1:
            continue
        yield {w: field.from_int(c) for w, c in zip(words, combo) if c != 0}


def clifford_C(A: PresentedAlgebra, fshriek: FreePoly | None = None, check_label=None):
    """Localized degree-0 algebra of the dual of A at its distinguished
    degree-2 element; a 4-dimensional algebra on the dual's degree-2 basis.

    When `fshriek` is not supplied, the element is found by searching the
    dual's degree-2 component for a normal element whose quotient passes the
    exact Hilbert drop test (the quotient series must be (1+t)^3).
    """
    from .findim import SCAlgebra
    from .normality import normal_check

    if not A.is_quadratic() or len(A.alphabet) != 3:
        raise ValueError("construction needs a quadratic presentation on 3 letters")
    dual = quadratic_dual(A)
    if not dual.gb.complete:
        raise grobner.DegreeOverflowError("dual basis incomplete", dual.bound)
    dims = [dual.dim(d) for d in range(5)]
    if dims[:3] != [1, 3, 4] or dims[4] != 4:
        raise RuntimeError(
            f"stabilization failure: dual dimensions {dims} are not 1,3,4,*,4"
        )
    words2 = dual.gb.normal_words(2)
    words4 = dual.gb.normal_words(4)
    field = dual.field

    drop = RationalFunction.from_poly(Poly([1, 0, -1]))
    target = drop * dual.hilbert().rational

    found = None
    if fshriek is not None:
        candidates = [dict(dual.reduce(fshriek).terms)]
    else:
        candidates = _weight2_combos(words2, field)
    for terms in candidates:
        g = FreePoly(dual.alphabet, field, dict(terms))
        if g.is_zero():
            continue
        try:
            quotient = dual.quotient([g])
        except ValueError:
            continue
        if not quotient.gb.complete:
            continue
        if quotient.hilbert().rational != target:
            continue
        res = normal_check(dual, g)
        if not res.normal:
            continue
        found = (g, res.nu)
        break
    if found is None:
        raise RuntimeError(
            "no normal degree-2 element passed the Hilbert drop test"
            + ("" if fshriek is None else " (supplied element rejected)")
        )
    g, nu = found

    basis2 = [FreePoly(dual.alphabet, field, {w: field.one()}) for w in words2]
    index4 = {w: i for i, w in enumerate(words4)}

    def coords4(p: FreePoly):
        vec = [field.zero()] * len(words4)
        for w, c in p.terms.items():
            vec[index4[w]] = c
        return vec

    T = [coords4(dual.reduce(b * g)) for b in basis2]
    Tinv = matrix_inverse(T, field)
    if Tinv is None:
        raise RuntimeError(
            "stabilization failure: multiplication by the distinguished element "
            "is not bijective from degree 2 to degree 4"
        )

    consts = []
    for bi in basis2:
        row = []
        for bj in basis2:
            q = coords4(dual.reduce(bi * substitute(bj, nu)))
            c = [
                sum((q[l] * Tinv[l][k] for l in range(4)), field.zero())
                for k in range(4)
            ]
            row.append(c)
        consts.append(row)
    unit = [g.coefficient(w) for w in words2]
    labels = [dual.alphabet.word_str(w) for w in words2]
    out = SCAlgebra(field, labels, consts, unit)
    if check_label is not None:
        from .findim import classify_frob4

        got = classify_frob4(out)
        if got != check_label:
            raise RuntimeError(
                f"classification cross-check failed: built {got.label}, "
                f"expected {check_label.label}"
            )
    return out
