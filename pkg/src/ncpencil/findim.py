"""Finite-dimensional algebras given by structure constants.

An SCAlgebra stores a basis, the full multiplication table, and the unit
vector; associativity and the unit laws are verified exactly at
construction.  On top of that sit the analyses used to tell small algebras
apart: radical (trace form plus a nilpotency replay), center, Frobenius
detection by symbolic expansion of the functional-determinant polynomial,
central idempotent splitting driven by exact minimal-polynomial
factorization, the radical-pairing congruence invariant for local
4-dimensional algebras, the complete dimension-4 Frobenius classifier, and
explicit isomorphism verification from generator images.

Everything is exact over the supported fields; nothing is decided by
floating point or by sampling alone (the Frobenius witness sweep is only
run after the determinant polynomial is proved nonzero, over a grid large
enough that a hit is guaranteed).
"""

from __future__ import annotations

import itertools
import warnings
from fractions import Fraction

import sympy

from .fields import FieldDescriptor, NeedsFieldExtensionError, Scalar, parse_field, sqrt_in_field
from .linalg import matrix_inverse, matrix_rank, null_space, rref, solve

__all__ = [
    "Frob4Label",
    "FrobeniusResult",
    "SCAlgebra",
    "center",
    "classify_frob4",
    "frobenius_check",
    "from_quotient",
    "idempotent_decompose",
    "iso_verify",
    "matrix_units",
    "quiver_algebra",
    "rad_form_invariant",
    "radical",
]


# -- vector and span helpers --------------------------------------------------


def _vzero(field, n):
    return [field.zero()] * n


def _vadd(u, v):
    return [a + b for a, b in zip(u, v)]


def _vsub(u, v):
    return [a - b for a, b in zip(u, v)]


def _vscale(u, c):
    return [c * a for a in u]


def _vis_zero(u):
    return all(a.is_zero() for a in u)


def _span(vectors, field):
    """Echelonized basis (nonzero rref rows) of the given span."""
    vecs = [v for v in vectors if not _vis_zero(v)]
    if not vecs:
        return []
    m, _ = rref(vecs, field)
    return [r for r in m if not _vis_zero(r)]


def _express(vectors, target, field):
    """Coefficients writing target as a combination of vectors, or None."""
    if not vectors:
        return [] if _vis_zero(target) else None
    rows = [[v[j] for v in vectors] for j in range(len(target))]
    return solve(rows, list(target), field)


def _reduce_mod(v, span_rows):
    """Subtract the echelonized span from v (span rows have leading 1s)."""
    out = list(v)
    for row in span_rows:
        piv = next(i for i, c in enumerate(row) if not c.is_zero())
        if not out[piv].is_zero():
            f = out[piv]
            out = [a - f * b for a, b in zip(out, row)]
    return out


# -- scalar <-> sympy bridge and exact factoring ------------------------------


def _to_sympy(s: Scalar):
    f = s.field
    if f.kind == "Fp":
        return sympy.Integer(s.a)
    a = sympy.Rational(s.a.numerator, s.a.denominator)
    if f.kind == "Q":
        return a
    b = sympy.Rational(s.b.numerator, s.b.denominator)
    return a + b * sympy.sqrt(f.param)


def _from_sympy(expr, field: FieldDescriptor) -> Scalar:
    if field.kind == "Fp":
        q = sympy.Rational(expr)
        num = int(q.p) % field.param
        den = pow(int(q.q) % field.param, -1, field.param)
        return field.from_int(num * den)
    if field.kind == "Q":
        q = sympy.Rational(sympy.nsimplify(expr))
        return field.from_fraction(Fraction(int(q.p), int(q.q)))
    d = field.param
    s = sympy.sqrt(d)
    expr = sympy.expand(expr)
    conj = sympy.conjugate(expr) if d < 0 else expr.subs(s, -s)
    b = sympy.simplify((expr - conj) / (2 * s))
    a = sympy.simplify(expr - b * s)
    if not (a.is_rational and b.is_rational):
        raise RuntimeError(f"value {expr} is not in the active field")
    aq, bq = sympy.Rational(a), sympy.Rational(b)
    return field.from_pair(
        Fraction(int(aq.p), int(aq.q)), Fraction(int(bq.p), int(bq.q))
    )


def _factor_poly(coeffs, field: FieldDescriptor):
    """Factor a monic polynomial (ascending Scalar coefficients) into monic
    irreducible factors over the field.  Returns [(coeffs, multiplicity)]
    sorted deterministically."""
    t = sympy.Symbol("t")
    expr = sum(_to_sympy(c) * t**i for i, c in enumerate(coeffs))
    if field.kind == "Fp":
        with warnings.catch_warnings():
            # sympy sorts GF(p) coefficients internally, tripping its own
            # modular-comparison deprecation; harmless here
            warnings.simplefilter("ignore", DeprecationWarning)
            _, factors = sympy.factor_list(expr, t, modulus=field.param)
    elif field.kind == "Qsqrt":
        _, factors = sympy.factor_list(expr, t, extension=sympy.sqrt(field.param))
    else:
        _, factors = sympy.factor_list(expr, t)
    out = []
    for fac, mult in factors:
        p = sympy.Poly(fac, t)
        cs = [_from_sympy(c, field) for c in reversed(p.all_coeffs())]
        lead = cs[-1]
        if not lead.is_one():
            cs = [c / lead for c in cs]
        out.append((cs, int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), [str(c) for c in fm[0]]))
    return out


# -- polynomial arithmetic over Scalar coefficient lists ----------------------


def _pnorm(c):
    c = list(c)
    while c and c[-1].is_zero():
        c.pop()
    return c


def _pmul(a, b, field):
    if not a or not b:
        return []
    out = [field.zero()] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return _pnorm(out)


def _pdivmod(a, b, field):
    a, b = _pnorm(a), _pnorm(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [field.zero()] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    inv = b[-1].inverse()
    while len(r) >= len(b) and _pnorm(r):
        r = _pnorm(r)
        if len(r) < len(b):
            break
        f = r[-1] * inv
        shift = len(r) - len(b)
        q[shift] = f
        for i, bi in enumerate(b):
            r[shift + i] = r[shift + i] - f * bi
        r = _pnorm(r)
    return _pnorm(q), _pnorm(r)


def _pxgcd(a, b, field):
    """Monic gcd g with u*a + v*b = g."""
    r0, r1 = _pnorm(a), _pnorm(b)
    u0, u1 = [field.one()], []
    v0, v1 = [], [field.one()]
    while r1:
        q, r = _pdivmod(r0, r1, field)
        r0, r1 = r1, r
        u0, u1 = u1, _pnorm([x - y for x, y in itertools.zip_longest(
            u0, _pmul(q, u1, field), fillvalue=field.zero())])
        v0, v1 = v1, _pnorm([x - y for x, y in itertools.zip_longest(
            v0, _pmul(q, v1, field), fillvalue=field.zero())])
    if not r0:
        return [], u0, v0
    lead = r0[-1].inverse()
    return (
        [c * lead for c in r0],
        [c * lead for c in u0],
        [c * lead for c in v0],
    )


# -- the algebra type ----------------------------------------------------------


class SCAlgebra:
    """Associative unital algebra on an explicit basis.

    consts[i][j] is the coordinate vector of (basis i) * (basis j); unit is
    the coordinate vector of 1.  Associativity over all basis triples and
    both unit laws are checked exactly at construction.
    """

    __slots__ = ("field", "labels", "consts", "unit")

    def __init__(self, field, labels, consts, unit):
        self.field = field
        self.labels = tuple(labels)
        n = len(self.labels)
        if len(consts) != n or any(
            len(row) != n or any(len(v) != n for v in row) for row in consts
        ):
            raise ValueError("structure constant table has wrong shape")
        self.consts = tuple(tuple(tuple(v) for v in row) for row in consts)
        if len(unit) != n:
            raise ValueError("unit vector has wrong length")
        self.unit = tuple(unit)
        for i in range(n):
            e = self.basis_vector(i)
            if self.mult(self.unit, e) != e or self.mult(e, self.unit) != e:
                raise ValueError(f"unit law fails on basis element {self.labels[i]}")
        for i in range(n):
            for j in range(n):
                ij = self.consts[i][j]
                for k in range(n):
                    left = self.mult(ij, self.basis_vector(k))
                    right = self.mult(self.basis_vector(i), self.consts[j][k])
                    if left != right:
                        raise ValueError(
                            "associativity fails on "
                            f"({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"
                        )

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis_vector(self, i):
        return [
            self.field.one() if j == i else self.field.zero()
            for j in range(len(self.labels))
        ]

    def zero_vector(self):
        return _vzero(self.field, len(self.labels))

    def mult(self, u, v):
        n = len(self.labels)
        out = [self.field.zero()] * n
        for i, ui in enumerate(u):
            if ui.is_zero():
                continue
            for j, vj in enumerate(v):
                if vj.is_zero():
                    continue
                c = ui * vj
                cij = self.consts[i][j]
                for k in range(n):
                    if not cij[k].is_zero():
                        out[k] = out[k] + c * cij[k]
        return out

    def left_matrix(self, u):
        """Matrix of left multiplication by u; entry [k][j] = coord k of
        u * basis_j."""
        cols = [self.mult(u, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def element(self, mapping):
        """Vector from {label: Scalar}."""
        v = self.zero_vector()
        for name, c in mapping.items():
            v[self.labels.index(name)] = c
        return v

    def show(self, v) -> str:
        parts = []
        for c, name in zip(v, self.labels):
            if c.is_zero():
                continue
            parts.append(f"{c}*{name}")
        return " + ".join(parts) if parts else "0"

    # exact JSON round trip: scalars as [str(a), str(b)] fraction pairs
    def to_dict(self):
        def pair(s):
            return [str(s.a), str(s.b)]

        return {
            "field": str(self.field),
            "labels": list(self.labels),
            "unit": [pair(s) for s in self.unit],
            "consts": [
                [[pair(s) for s in vec] for vec in row] for row in self.consts
            ],
        }

    @classmethod
    def from_dict(cls, data):
        field = parse_field(data["field"])

        def unpair(p):
            return field.from_pair(Fraction(p[0]), Fraction(p[1]))

        return cls(
            field,
            data["labels"],
            [[[unpair(p) for p in vec] for vec in row] for row in data["consts"]],
            [unpair(p) for p in data["unit"]],
        )

    def __eq__(self, other):
        return (
            isinstance(other, SCAlgebra)
            and self.field == other.field
            and self.labels == other.labels
            and self.unit == other.unit
            and self.consts == other.consts
        )

    def __repr__(self):
        return f"SCAlgebra(dim={self.dim}, basis=[{', '.join(self.labels)}])"


# -- constructors ---------------------------------------------------------------


def from_quotient(A) -> SCAlgebra:
    """Structure constants of a finite-dimensional quotient with a complete
    rewriting basis; the basis is the normal words in ascending weight."""
    gb = A.gb
    if not gb.complete:
        raise ValueError("quotient needs a complete rewriting basis")
    if not gb.finite_dimensional():
        raise ValueError("normal-word language is infinite")
    cap = (sum(len(w) for w in gb.leading_words) + 1) * max(A.alphabet.weights) + 1
    words = []
    for d in range(cap + 1):
        words.extend(gb.normal_words(d))
    index = {w: i for i, w in enumerate(words)}
    field = A.field
    n = len(words)

    def coords(p):
        v = _vzero(field, n)
        for w, c in p.terms.items():
            v[index[w]] = c
        return v

    from .freealg import FreePoly

    basis_polys = [FreePoly(A.alphabet, field, {w: field.one()}) for w in words]
    consts = [
        [coords(A.reduce(bi * bj)) for bj in basis_polys] for bi in basis_polys
    ]
    unit = coords(A.one())
    labels = [A.alphabet.word_str(w) for w in words]
    return SCAlgebra(field, labels, consts, unit)


def matrix_units(field) -> SCAlgebra:
    """Two-by-two matrices over the field, on the basis E11, E12, E21, E22
    with Eij*Ekl nonzero exactly when j = k."""
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    pairs = list(idx)
    consts = []
    for i, j in pairs:
        row = []
        for k, l in pairs:
            v = [field.zero()] * 4
            if j == k:
                v[idx[(i, l)]] = field.one()
            row.append(v)
        consts.append(row)
    unit = [field.one(), field.zero(), field.zero(), field.one()]
    return SCAlgebra(field, ["E11", "E12", "E21", "E22"], consts, unit)


def quiver_algebra(field, n_vertices, arrows, relations=()) -> SCAlgebra:
    """Path algebra of a quiver modulo monomial (path) relations.

    arrows: (name, source, target) with 1-based vertex numbers; paths
    compose by concatenation, so "x*y" means x first, then y, and needs
    target(x) = source(y).  relations: tuples of arrow names to kill.
    Enumeration is capped (length 64 / 4096 paths); exceeding the cap is
    reported as an infinite path language.
    """
    names = [a[0] for a in arrows]
    if len(set(names)) != len(names):
        raise ValueError("arrow names must be distinct")
    rel_ix = []
    for r in relations:
        rel_ix.append(tuple(names.index(nm) for nm in r))

    def has_relation_factor(path):
        for r in rel_ix:
            L = len(r)
            if L == 0:
                continue
            for s in range(len(path) - L + 1):
                if path[s : s + L] == r:
                    return True
        return False

    paths = []
    frontier = [
        (a,) for a in range(len(arrows)) if not has_relation_factor((a,))
    ]
    length = 1
    while frontier:
        paths.extend(frontier)
        if length > 64 or len(paths) > 4096:
            raise ValueError("path language appears infinite (enumeration cap)")
        nxt = []
        for p in frontier:
            tgt = arrows[p[-1]][2]
            for a in range(len(arrows)):
                if arrows[a][1] != tgt:
                    continue
                q = p + (a,)
                if not has_relation_factor(q):
                    nxt.append(q)
        frontier = nxt
        length += 1

    # basis: trivial paths first, then arrows and longer paths as found
    basis = [("v", v) for v in range(1, n_vertices + 1)] + [("p", p) for p in paths]
    labels = [f"e{v}" for v in range(1, n_vertices + 1)] + [
        "*".join(names[a] for a in p) for p in paths
    ]
    n = len(basis)
    index = {b: i for i, b in enumerate(basis)}

    def src(b):
        return b[1] if b[0] == "v" else arrows[b[1][0]][1]

    def tgt(b):
        return b[1] if b[0] == "v" else arrows[b[1][-1]][2]

    def product(b1, b2):
        if tgt(b1) != src(b2):
            return None
        if b1[0] == "v":
            return b2
        if b2[0] == "v":
            return b1
        q = b1[1] + b2[1]
        if has_relation_factor(q):
            return None
        return ("p", q)

    consts = []
    for b1 in basis:
        row = []
        for b2 in basis:
            v = _vzero(field, n)
            pr = product(b1, b2)
            if pr is not None:
                v[index[pr]] = field.one()
            row.append(v)
        consts.append(row)
    unit = _vzero(field, n)
    for v in range(n_vertices):
        unit[v] = field.one()
    return SCAlgebra(field, labels, consts, unit)


# -- radical and center ----------------------------------------------------------


def radical(R: SCAlgebra):
    """Echelonized basis of the radical: the trace-form null space, verified
    nilpotent by explicit multiplication."""
    n = R.dim
    field = R.field
    traces = {}

    def tr_left(v):
        m = R.left_matrix(v)
        t = field.zero()
        for k in range(n):
            t = t + m[k][k]
        return t

    rows = []
    for j in range(n):
        ej = R.basis_vector(j)
        rows.append(
            [tr_left(R.mult(R.basis_vector(i), ej)) for i in range(n)]
        )
    basis = null_space(rows, field, ncols=n)
    basis = _span(basis, field)
    # nilpotency replay: powers of the span must vanish
    power = basis
    for _ in range(n + 1):
        if not power:
            return basis
        power = _span(
            [R.mult(u, v) for u in power for v in basis], field
        )
    raise RuntimeError("trace-form null space failed the nilpotency replay")


def _product_span(R, U, V):
    return _span([R.mult(u, v) for u in U for v in V], R.field)


def center(R: SCAlgebra):
    """Echelonized basis of the center."""
    n = R.dim
    field = R.field
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append(
                [R.consts[i][j][k] - R.consts[j][i][k] for i in range(n)]
            )
    return _span(null_space(rows, field, ncols=n), field)


# -- Frobenius detection ----------------------------------------------------------


class FrobeniusResult:
    """Outcome of the symbolic nondegeneracy test.

    `determinant` maps exponent tuples of the functional's coordinates to
    Scalar coefficients; empty means the determinant polynomial is
    identically zero, which proves no associative nondegenerate form
    exists.  When nonzero, `functional` is an explicit witness point.
    """

    __slots__ = ("frobenius", "functional", "determinant", "reason")

    def __init__(self, frobenius, functional, determinant, reason):
        self.frobenius = frobenius
        self.functional = functional
        self.determinant = determinant
        self.reason = reason

    def __bool__(self):
        return self.frobenius

    def __repr__(self):
        return f"FrobeniusResult({'yes' if self.frobenius else 'refused'}: {self.reason})"


def _det_polynomial(R: SCAlgebra):
    """Expand det(mu(b_i b_j)) as a polynomial in mu_0..mu_{n-1}: exponent
    tuple -> Scalar.  Subset dynamic programming over column masks."""
    n = R.dim
    field = R.field
    zero_exp = (0,) * n

    def poly_mul_linear(poly, lin):
        out = {}
        for exp, c in poly.items():
            for k in range(n):
                if lin[k].is_zero():
                    continue
                e2 = list(exp)
                e2[k] += 1
                e2 = tuple(e2)
                v = out.get(e2)
                nv = c * lin[k] if v is None else v + c * lin[k]
                if nv.is_zero():
                    out.pop(e2, None)
                else:
                    out[e2] = nv
        return out

    D = {0: {zero_exp: field.one()}}
    for mask in range(1, 1 << n):
        k = bin(mask).count("1")
        row = k - 1
        acc = {}
        pos = 0
        for j in range(n):
            if not (mask >> j) & 1:
                continue
            sub = D[mask ^ (1 << j)]
            lin = R.consts[row][j]
            term = poly_mul_linear(sub, lin)
            sign = (row + pos) % 2
            for exp, c in term.items():
                v = acc.get(exp)
                add = -c if sign else c
                nv = add if v is None else v + add
                if nv.is_zero():
                    acc.pop(exp, None)
                else:
                    acc[exp] = nv
            pos += 1
        D[mask] = acc
    return D[(1 << n) - 1]


def frobenius_check(R: SCAlgebra) -> FrobeniusResult:
    """Decide whether R admits an associative nondegenerate bilinear form.

    Every associative form is (a, b) = mu(ab) for a functional mu, so R is
    Frobenius iff det(mu(b_i b_j)) is not the zero polynomial.  The
    determinant is expanded exactly (dimension <= 6); when nonzero, a
    witness point is found on an integer grid wide enough that one must
    exist.
    """
    n = R.dim
    if n > 6:
        raise ValueError("symbolic determinant expansion restricted to dim <= 6")
    field = R.field
    det = _det_polynomial(R)
    if not det:
        return FrobeniusResult(
            False,
            None,
            det,
            "functional determinant expands to the zero polynomial",
        )
    if field.kind == "Fp":
        grid = [field.from_int(v) for v in range(min(field.param, n + 3))]
    else:
        grid = [field.from_int(v) for v in (0, 1, -1, 2, -2, 3, -3)]
    for point in itertools.product(grid, repeat=n):
        gram = [
            [
                sum(
                    (R.consts[i][j][k] * point[k] for k in range(n)),
                    field.zero(),
                )
                for j in range(n)
            ]
            for i in range(n)
        ]
        if matrix_rank(gram, field) == n:
            return FrobeniusResult(
                True, tuple(point), det, "nondegenerate functional found"
            )
    raise RuntimeError(
        "nonzero determinant polynomial but no grid witness; grid too small"
    )


# -- idempotent decomposition -----------------------------------------------------


def _min_poly(R: SCAlgebra, z):
    """Monic minimal polynomial of z, ascending Scalar coefficients."""
    field = R.field
    powers = [list(R.unit)]
    while True:
        nxt = R.mult(powers[-1], z)
        coeffs = _express(powers, nxt, field)
        if coeffs is not None:
            return [-c for c in coeffs] + [field.one()]
        powers.append(nxt)
        if len(powers) > R.dim + 1:
            raise RuntimeError("minimal polynomial search exceeded the dimension")


def _eval_poly(R: SCAlgebra, coeffs, z):
    out = R.zero_vector()
    power = list(R.unit)
    for c in coeffs:
        if not c.is_zero():
            out = _vadd(out, _vscale(power, c))
        power = R.mult(power, z)
    return out


def _crt_idempotents(R: SCAlgebra, z, factors):
    """Central orthogonal idempotents from the primary factorization of the
    minimal polynomial of a central element z."""
    field = R.field
    primary = []
    for cs, mult in factors:
        F = cs
        for _ in range(mult - 1):
            F = _pmul(F, cs, field)
        primary.append(F)
    full = [field.one()]
    for F in primary:
        full = _pmul(full, F, field)
    idems = []
    for F in primary:
        G, _ = _pdivmod(full, F, field)
        g, u, _v = _pxgcd(G, F, field)
        if len(g) != 1:
            raise RuntimeError("primary factors are not coprime")
        scale = g[0].inverse()
        uG = _pmul([c * scale for c in u], G, field)
        _, uG = _pdivmod(uG, full, field)
        idems.append(_eval_poly(R, uG, z))
    total = R.zero_vector()
    for e in idems:
        if not _vis_zero(_vsub(R.mult(e, e), e)):
            raise RuntimeError("constructed element is not idempotent")
        total = _vadd(total, e)
    if total != list(R.unit):
        raise RuntimeError("idempotents do not sum to the unit")
    for a, b in itertools.combinations(idems, 2):
        if not _vis_zero(R.mult(a, b)) or not _vis_zero(R.mult(b, a)):
            raise RuntimeError("idempotents are not orthogonal")
    return idems


def _corner(R: SCAlgebra, e, tag):
    """The unital subalgebra e*R (e central idempotent) as an SCAlgebra."""
    field = R.field
    span = _span([R.mult(e, R.basis_vector(j)) for j in range(R.dim)], field)
    m = len(span)
    consts = []
    for u in span:
        row = []
        for v in span:
            c = _express(span, R.mult(u, v), field)
            if c is None:
                raise RuntimeError("corner span is not multiplicatively closed")
            row.append(c)
        consts.append(row)
    unit = _express(span, e, field)
    labels = [f"{tag}b{k}" for k in range(m)]
    return SCAlgebra(field, labels, consts, unit)


def _split_candidates(R: SCAlgebra, vectors):
    seen = []
    for v in vectors:
        seen.append(list(v))
    for a, b in itertools.combinations(vectors, 2):
        seen.append(_vadd(a, b))
    return seen


def idempotent_decompose(R: SCAlgebra):
    """Finest block decomposition reachable by factoring minimal polynomials
    of center elements over the active field.  Blocks that resist splitting
    (e.g. because the needed roots live in an extension) are returned whole.
    """

    def split_once(S):
        zc = center(S)
        for z in _split_candidates(S, zc):
            mp = _min_poly(S, z)
            factors = _factor_poly(mp, S.field)
            if len(factors) >= 2:
                return _crt_idempotents(S, z, factors)
        return None

    def walk(S, tag):
        idems = split_once(S)
        if idems is None:
            return [S]
        out = []
        for k, e in enumerate(idems):
            out.extend(walk(_corner(S, e, f"{tag}{k}."), f"{tag}{k}."))
        return out

    return walk(R, "")


# -- the dimension-4 classifier ----------------------------------------------------


class Frob4Label:
    """Classification label; lambda-type carries the invariant lam + 1/lam."""

    __slots__ = ("kind", "key")

    def __init__(self, kind, key=None):
        self.kind = kind
        self.key = key

    @property
    def label(self) -> str:
        if self.kind == "lambda-type":
            return f"lambda-type({self.key})"
        return self.kind

    def _norm_key(self):
        if self.key is None:
            return None
        s = self.key
        f = s.field
        ext = f.param if (f.kind == "Qsqrt" and not s.b == 0) else 0
        return (f.characteristic, str(s.a), str(s.b), ext)

    def __eq__(self, other):
        return (
            isinstance(other, Frob4Label)
            and self.kind == other.kind
            and self._norm_key() == other._norm_key()
        )

    def __hash__(self):
        return hash((self.kind, self._norm_key()))

    def __repr__(self):
        return f"Frob4Label({self.label})"


def rad_form_invariant(R: SCAlgebra):
    """Congruence class of the pairing rad/rad^2 x rad/rad^2 -> rad^2 for a
    local 4-dimensional algebra with dim rad/rad^2 = 2, dim rad^2 = 1 and
    rad^3 = 0.  Returns {"class": "symmetric"|"lambda"|"defective",
    "key": Scalar|None, "matrix": 2x2}."""
    field = R.field
    rad = radical(R)
    rad2 = _product_span(R, rad, rad)
    rad3 = _product_span(R, rad2, rad)
    if len(rad) != 3 or len(rad2) != 1 or rad3:
        raise ValueError(
            "pairing invariant needs dim rad = 3, dim rad^2 = 1, rad^3 = 0"
        )
    w = rad2[0]
    piv = next(i for i, c in enumerate(w) if not c.is_zero())
    gens = []
    for v in rad:
        r = _reduce_mod(v, rad2)
        if _vis_zero(r):
            continue
        if gens and matrix_rank(gens + [r], field) == len(gens):
            continue
        gens.append(r)
    if len(gens) != 2:
        raise ValueError("radical does not have two generators modulo rad^2")
    B = []
    for u in gens:
        row = []
        for v in gens:
            prod = R.mult(u, v)
            s = prod[piv] / w[piv]
            if not _vis_zero(_vsub(prod, _vscale(w, s))):
                raise RuntimeError("product of radical generators left rad^2")
            row.append(s)
        B.append(row)
    if B[0][1] == B[1][0]:
        return {"class": "symmetric", "key": None, "matrix": B}
    if (B[0][1] + B[1][0]).is_zero() and B[0][0].is_zero() and B[1][1].is_zero():
        return {"class": "lambda", "key": field.from_int(-2), "matrix": B}
    Binv = matrix_inverse(B, field)
    if Binv is None:
        raise RuntimeError("degenerate radical pairing in a Frobenius algebra")
    BinvT = [[Binv[j][i] for j in range(2)] for i in range(2)]
    C = [
        [
            sum((BinvT[i][m] * B[m][j] for m in range(2)), field.zero())
            for j in range(2)
        ]
        for i in range(2)
    ]
    tau = C[0][0] + C[1][1]
    disc = tau * tau - field.from_int(4)
    if disc.is_zero():
        return {"class": "defective", "key": None, "matrix": B}
    return {"class": "lambda", "key": tau, "matrix": B}


def _quotient_mod_span(R: SCAlgebra, span_rows):
    """Products of R modulo a span (an ideal), over the complement
    coordinates.  Returns (complement indices, product function, unit)."""
    field = R.field
    pivots = [next(i for i, c in enumerate(r) if not c.is_zero()) for r in span_rows]
    comp = [i for i in range(R.dim) if i not in pivots]

    def project(v):
        red = _reduce_mod(v, span_rows)
        return [red[i] for i in comp]

    def lift(u):
        v = R.zero_vector()
        for c, i in zip(u, comp):
            v[i] = c
        return v

    def qmult(u, v):
        return project(R.mult(lift(u), lift(v)))

    return comp, project, lift, qmult


def _quadratic_roots(alpha, beta, field):
    """Roots of t^2 - beta t - alpha, or None when the field lacks them."""
    disc = beta * beta + field.from_int(4) * alpha
    s = sqrt_in_field(disc)
    if s is None:
        return None
    half = field.from_int(2).inverse()
    return ((beta + s) * half, (beta - s) * half)


def _lift_idempotent(R: SCAlgebra, e0):
    """Refine e0 (idempotent modulo the radical) to a true idempotent by the
    standard e <- 3e^2 - 2e^3 iteration."""
    e = list(e0)
    for _ in range(8):
        if _vis_zero(_vsub(R.mult(e, e), e)):
            return e
        e2 = R.mult(e, e)
        e3 = R.mult(e2, e)
        e = _vsub(_vscale(e2, R.field.from_int(3)), _vscale(e3, R.field.from_int(2)))
    raise RuntimeError("idempotent lift did not converge")


def _peirce_dims(R: SCAlgebra, e):
    f = _vsub(list(R.unit), e)
    dims = []
    for a, b in ((e, e), (e, f), (f, e), (f, f)):
        vs = [R.mult(a, R.mult(R.basis_vector(j), b)) for j in range(R.dim)]
        dims.append(len(_span(vs, R.field)))
    return dims


def _split_semisimple_m2(R: SCAlgebra):
    """Try to exhibit a nontrivial idempotent in a 4-dim semisimple block
    with 1-dimensional center via minimal polynomials of basis elements and
    their pairwise sums/differences."""
    field = R.field
    candidates = [R.basis_vector(i) for i in range(R.dim)]
    for i, j in itertools.combinations(range(R.dim), 2):
        candidates.append(_vadd(R.basis_vector(i), R.basis_vector(j)))
        candidates.append(_vsub(R.basis_vector(i), R.basis_vector(j)))
    for z in candidates:
        mp = _min_poly(R, z)
        if len(mp) != 3:
            continue
        # monic quadratic t^2 + c1 t + c0: roots via the quadratic formula
        roots = _quadratic_roots(-mp[0], -mp[1], field)
        if roots is None or roots[0] == roots[1]:
            continue
        r1, r2 = roots
        e = _vscale(_vsub(z, _vscale(list(R.unit), r2)), (r1 - r2).inverse())
        if _vis_zero(e) or e == list(R.unit):
            continue
        if not _vis_zero(_vsub(R.mult(e, e), e)):
            continue
        if _peirce_dims(R, e) == [1, 1, 1, 1]:
            return e
    return None


def classify_frob4(R: SCAlgebra) -> Frob4Label:
    """Assign the classification label of a 4-dimensional Frobenius algebra.

    Decision tree: block decomposition handles the split semisimple and
    product cases; a single block is separated by radical data, with the
    radical pairing invariant telling the local quadratic types apart.
    Raises NeedsFieldExtensionError when recognition requires roots the
    field does not contain.
    """
    if R.dim != 4:
        raise ValueError("classifier is for dimension 4")
    fro = frobenius_check(R)
    if not fro:
        raise ValueError(f"input is not a Frobenius algebra: {fro.reason}")
    field = R.field
    blocks = idempotent_decompose(R)
    dims = sorted(b.dim for b in blocks)
    if dims == [1, 1, 1, 1]:
        return Frob4Label("k^4")
    if dims == [1, 1, 2]:
        b2 = next(b for b in blocks if b.dim == 2)
        if len(radical(b2)) == 1:
            return Frob4Label("k^2 x k[x]/(x^2)")
        raise NeedsFieldExtensionError(
            "a 2-dimensional semisimple block is a quadratic field extension",
            witness="block of dimension 2 with zero radical",
        )
    if dims == [2, 2]:
        if all(len(radical(b)) == 1 for b in blocks):
            return Frob4Label("(k[x]/(x^2))^2")
        raise NeedsFieldExtensionError(
            "a 2-dimensional semisimple block is a quadratic field extension",
            witness="block of dimension 2 with zero radical",
        )
    if dims == [1, 3]:
        b3 = next(b for b in blocks if b.dim == 3)
        rad3 = radical(b3)
        if len(rad3) == 2 and len(_product_span(b3, rad3, rad3)) == 1:
            return Frob4Label("k x k[x]/(x^3)")
        raise NeedsFieldExtensionError(
            "a 3-dimensional block did not split and is not a chain local ring",
            witness="semisimple dimension-3 block",
        )
    # single block of dimension 4
    rad = radical(R)
    if not rad:
        zdim = len(center(R))
        if zdim == 1:
            e = _split_semisimple_m2(R)
            if e is not None:
                return Frob4Label("M_2(k)")
            raise NeedsFieldExtensionError(
                "central simple block of dimension 4 does not split over "
                "this field (a quaternion division algebra)",
                witness="no basis combination has a split quadratic "
                "minimal polynomial",
            )
        raise NeedsFieldExtensionError(
            "semisimple block with a field-extension center",
            witness=f"center dimension {zdim} without rational splitting",
        )
    if len(rad) == 2:
        rad2 = _product_span(R, rad, rad)
        if rad2:
            raise RuntimeError("radical square of the two-vertex shape is nonzero")
        comp, project, lift, qmult = _quotient_mod_span(R, rad)
        if len(comp) != 2:
            raise RuntimeError("quotient by the radical has unexpected dimension")
        unit_q = project(list(R.unit))
        zbar = None
        for i in comp:
            cand = project(R.basis_vector(i))
            if matrix_rank([unit_q, cand], field) == 2:
                zbar = cand
                break
        if zbar is None:
            raise RuntimeError("quotient by the radical is not 2-dimensional")
        sq = qmult(zbar, zbar)
        co = _express([unit_q, zbar], sq, field)
        roots = _quadratic_roots(co[0], co[1], field)
        if roots is None:
            raise NeedsFieldExtensionError(
                "the semisimple quotient is a quadratic field extension",
                witness="irreducible quadratic minimal polynomial modulo "
                "the radical",
            )
        r1, r2 = roots
        if r1 == r2:
            raise RuntimeError("double root in a semisimple quotient")
        ebar = _vscale(_vsub(zbar, _vscale(unit_q, r2)), (r1 - r2).inverse())
        e = _lift_idempotent(R, lift(ebar))
        if _peirce_dims(R, e) == [1, 1, 1, 1]:
            return Frob4Label("quiver")
        raise RuntimeError("two-vertex block has unexpected corner dimensions")
    if len(rad) == 3:
        rad2 = _product_span(R, rad, rad)
        if len(rad2) == 2:
            return Frob4Label("k[x]/(x^4)")
        if len(rad2) == 1:
            inv = rad_form_invariant(R)
            if inv["class"] == "symmetric":
                return Frob4Label("k[x,y]/(x^2,y^2)")
            if inv["class"] == "defective":
                return Frob4Label("J-type")
            return Frob4Label("lambda-type", inv["key"])
        raise RuntimeError(
            "local Frobenius algebra with an unexpected radical filtration"
        )
    raise RuntimeError("radical dimension outside the Frobenius classification")


# -- isomorphism verification -------------------------------------------------------


def iso_verify(R: SCAlgebra, Rp: SCAlgebra, images) -> bool:
    """Verify that mapping the named basis elements of R to the given
    vectors of Rp extends to an algebra isomorphism.

    images: {label of R: coordinate vector in Rp}.  The labeled elements
    (together with the unit) must generate R; otherwise ValueError.  Returns
    True iff the induced linear extension is well defined, multiplicative on
    all basis pairs, unital, and bijective.
    """
    if R.field != Rp.field:
        return False
    field = R.field
    n = R.dim
    reps = []  # echelonized (source, image) pairs, reduced in lockstep

    def absorb(v, w):
        """Returns False on a well-definedness clash, True otherwise."""
        v, w = list(v), list(w)
        for rv, rw in reps:
            piv = next(i for i, c in enumerate(rv) if not c.is_zero())
            if not v[piv].is_zero():
                f = v[piv]
                v = [a - f * b for a, b in zip(v, rv)]
                w = [a - f * b for a, b in zip(w, rw)]
        if _vis_zero(v):
            return _vis_zero(w)
        piv = next(i for i, c in enumerate(v) if not c.is_zero())
        inv = v[piv].inverse()
        reps.append(([c * inv for c in v], [c * inv for c in w]))
        return True

    pairs = [(list(R.unit), list(Rp.unit))]
    for name, w in images.items():
        if name not in R.labels:
            raise ValueError(f"unknown basis label {name!r}")
        if len(w) != Rp.dim:
            raise ValueError(f"image of {name!r} has wrong length")
        pairs.append((R.basis_vector(R.labels.index(name)), list(w)))
    for v, w in pairs:
        if not absorb(v, w):
            return False
    while True:
        before = len(reps)
        snapshot = list(reps)
        for (v1, w1), (v2, w2) in itertools.product(snapshot, repeat=2):
            if not absorb(R.mult(v1, v2), Rp.mult(w1, w2)):
                return False
            if len(reps) == n:
                break
        if len(reps) == before or len(reps) == n:
            break
    if len(reps) < n:
        raise ValueError("the given elements do not generate the source algebra")
    src = [rv for rv, _ in reps]
    phi = []
    for k in range(n):
        co = _express(src, R.basis_vector(k), field)
        img = _vzero(field, Rp.dim)
        for c, (_, rw) in zip(co, reps):
            if not c.is_zero():
                img = _vadd(img, _vscale(rw, c))
        phi.append(img)

    def apply(v):
        out = _vzero(field, Rp.dim)
        for c, row in zip(v, phi):
            if not c.is_zero():
                out = _vadd(out, _vscale(row, c))
        return out

    if apply(list(R.unit)) != list(Rp.unit):
        return False
    if Rp.dim != n or matrix_rank(phi, field) != n:
        return False
    for i in range(n):
        for j in range(n):
            lhs = apply(list(R.consts[i][j]))
            rhs = Rp.mult(phi[i], phi[j])
            if lhs != rhs:
                return False
    return True
