"""Normal elements, their automorphisms, regularity, and sequence checks.

The core solve: an element f of a quotient is normal with a degree-preserving
automorphism exactly when each generator satisfies x_i*f = f*u_i for a linear
form u_i, the matrix of the u_i is invertible, and the induced letter map
preserves the relation ideal.  Positive certificates are unconditionally
sound (the residues are replayed).  Refusals are sound in two regimes:

* homogeneous f in a graded ambient: if f is normal, the two-sided ideal it
  generates is graded and its degree-(d + 1) slice is f * A_1, so a solution
  with linear cofactors must exist; a failed solve therefore refutes.
* inhomogeneous f: a cofactor u with x_i*f = f*u has unbounded degree a
  priori.  When the top part of f is certified regular in the associated
  graded quotient, comparing top parts bounds deg u by 1 (and pins the
  degree-0 part to zero when the ambient is graded), making the bounded
  solve complete.  Without that certificate the check reports inconclusive
  rather than guessing.

Everything downstream (centrality, compatible lower terms, regularity
certificates, ordered sequence checking, sequence transforms and their
obstructions, and the finite-field discovery sweep) builds on that solve.
"""

from __future__ import annotations

import itertools

from .algebra import PresentedAlgebra, is_qpa2
from .freealg import FreePoly, GeneratorMap, substitute
from .linalg import matrix_inverse, matrix_rank, null_space, rref, solve
from .series import Poly, RationalFunction

__all__ = [
    "InconclusiveError",
    "NormalityCertificate",
    "SequenceCertificate",
    "central_check",
    "compatible_lower_terms",
    "derive_st_step",
    "exhaustive_normal_search",
    "normal_check",
    "regular_check_filtered",
    "regular_check_homog",
    "srns_check",
    "st_obstruction",
    "st_transform",
    "st_witness_verify",
]


class InconclusiveError(RuntimeError):
    """The check could not run soundly on the given data (not a verdict)."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class NormalityCertificate:
    """Outcome of normal_check, replayable either way.

    When `normal` is true, `nu` is the letter map, every residue
    x_i*f - f*nu(x_i) reduced to zero, and every relation stayed in the
    ideal under nu.  When false, `witness_generator` names a generator
    whose cofactor equation refutes, or `reason` explains which of the
    invertibility / relation-preservation legs failed.
    """

    __slots__ = (
        "algebra",
        "element",
        "normal",
        "nu",
        "residues",
        "relation_images",
        "witness_generator",
        "reason",
        "precondition",
    )

    def __init__(
        self,
        algebra,
        element,
        normal,
        nu=None,
        residues=(),
        relation_images=(),
        witness_generator=None,
        reason="",
        precondition="",
    ):
        self.algebra = algebra
        self.element = element
        self.normal = normal
        self.nu = nu
        self.residues = tuple(residues)
        self.relation_images = tuple(relation_images)
        self.witness_generator = witness_generator
        self.reason = reason
        self.precondition = precondition

    def verify(self) -> bool:
        """Replay a positive certificate from scratch."""
        if not self.normal:
            return False
        A, f, nu = self.algebra, self.element, self.nu
        n = len(A.alphabet)
        block = [
            [nu.images[i].coefficient((j,)) for j in range(n)] for i in range(n)
        ]
        if matrix_rank(block, A.field) != n:
            return False
        for i in range(n):
            xi = FreePoly(A.alphabet, A.field, {(i,): A.field.one()})
            if not A.reduce(xi * f - f * nu.images[i]).is_zero():
                return False
        return all(A.membership(substitute(r, nu)) for r in A.relations)

    def __repr__(self):
        if self.normal:
            return f"NormalityCertificate(normal, nu={self.nu})"
        return f"NormalityCertificate(refused: {self.reason})"


def _letter(A: PresentedAlgebra, i: int) -> FreePoly:
    return FreePoly(A.alphabet, A.field, {(i,): A.field.one()})


def _coeff_rows(polys, words):
    return [[p.coefficient(w) for w in words] for p in polys]


def _solve_cofactor(A, f, basis_polys, rhs_poly):
    """Solve rhs = f * (sum c_b * b) in the quotient.  Returns
    (coeffs or None, unique: bool)."""
    cols = [A.reduce(f * b) for b in basis_polys]
    words = sorted(
        {w for p in cols for w in p.terms} | set(rhs_poly.terms),
        key=A.alphabet.word_key,
    )
    if not words:
        return [A.field.zero()] * len(basis_polys), False
    rows = [[col.coefficient(w) for col in cols] for w in words]
    rhs = [rhs_poly.coefficient(w) for w in words]
    sol = solve(rows, rhs, A.field)
    if sol is None:
        return None, True
    unique = matrix_rank(rows, A.field) == len(basis_polys)
    return sol, unique


def _associated_graded(A: PresentedAlgebra) -> PresentedAlgebra:
    """Quotient by the top parts of the complete basis.

    For a weight filtration the tops of a complete basis are themselves a
    complete basis of the leading-term ideal, so this presents the
    associated graded algebra.
    """
    if A.graded:
        return A
    if not A.gb.complete:
        raise InconclusiveError(
            "associated graded needs a complete basis for the filtered ideal"
        )
    tops = [g.top_part() for g in A.gb.generators]
    return PresentedAlgebra(A.alphabet, A.field, tops, A.bound)


def normal_check(A: PresentedAlgebra, f: FreePoly) -> NormalityCertificate:
    """Decide whether f is normal in A with a degree-preserving automorphism.

    See the module docstring for the exact soundness regimes.  Raises
    ValueError for units and InconclusiveError when the inhomogeneous
    precondition (certified regular top in the associated graded) fails.
    """
    if any(w != 1 for w in A.alphabet.weights):
        raise ValueError("check implemented for weight-1 generators only")
    ftilde = A.reduce(f)
    if ftilde.is_zero():
        raise ValueError("element is zero in the quotient")
    if ftilde.degree() == 0:
        raise ValueError("element is a unit (nonzero constant)")

    n = len(A.alphabet)
    homogeneous_graded = A.graded and ftilde.is_homogeneous()
    # Refusals beyond "no cofactor exists" are sound only once the top part
    # is certified regular; for a bare homogeneous element we do not chase
    # that certificate (it would need this very check) and stay inconclusive
    # on the residual failure modes instead.
    refusals_sound = False
    if homogeneous_graded:
        precondition = (
            "graded ambient, homogeneous element: cofactors are forced linear"
        )
    else:
        gr = _associated_graded(A)
        top = ftilde.top_part()
        sub = normal_check(gr, top)
        if not sub.normal:
            raise InconclusiveError(
                "top part not certified normal in the associated graded, "
                "so its regularity cannot be certified: " + sub.reason
            )
        reg_ok, reg_cert = regular_check_homog(gr, top)
        if not reg_ok:
            raise InconclusiveError(
                "top part fails the regularity certificate in the associated "
                f"graded: {reg_cert}"
            )
        precondition = (
            f"top part {top} certified regular normal in the associated graded"
        )
        refusals_sound = True

    # ansatz: linear cofactor, plus a constant only in a filtered ambient
    with_constant = not A.graded
    basis_polys = [_letter(A, j) for j in range(n)]
    if with_constant:
        basis_polys.append(FreePoly.one(A.alphabet, A.field))

    images = []
    for i in range(n):
        rhs = A.reduce(_letter(A, i) * ftilde)
        sol, _unique = _solve_cofactor(A, ftilde, basis_polys, rhs)
        if sol is None:
            return NormalityCertificate(
                A,
                ftilde,
                False,
                witness_generator=A.alphabet.names[i],
                reason=(
                    f"no admissible cofactor for generator {A.alphabet.names[i]}"
                ),
                precondition=precondition,
            )
        terms = {}
        for j in range(n):
            if not sol[j].is_zero():
                terms[(j,)] = sol[j]
        if with_constant and not sol[n].is_zero():
            terms[()] = sol[n]
        images.append(FreePoly(A.alphabet, A.field, terms))

    block = [[images[i].coefficient((j,)) for j in range(n)] for i in range(n)]
    if matrix_rank(block, A.field) != n:
        if not refusals_sound:
            raise InconclusiveError(
                "cofactors exist but the solved matrix is singular; without a "
                "certified regular top this does not refute normality"
            )
        return NormalityCertificate(
            A,
            ftilde,
            False,
            reason="cofactor matrix is singular",
            precondition=precondition,
        )
    nu = GeneratorMap(A.alphabet, A.field, images)
    bad = [r for r in A.relations if not A.membership(substitute(r, nu))]
    if bad:
        if not refusals_sound:
            raise InconclusiveError(
                "cofactors exist but their letter map does not preserve the "
                "relations; without a certified regular top this does not "
                "refute normality"
            )
        return NormalityCertificate(
            A,
            ftilde,
            False,
            reason=f"cofactor map does not preserve the relation {bad[0]}",
            precondition=precondition,
        )
    residues = []
    for i in range(n):
        res = A.reduce(_letter(A, i) * ftilde - ftilde * images[i])
        if not res.is_zero():
            raise RuntimeError("solved residues failed to replay")
        residues.append(f"{A.alphabet.names[i]}*f - f*nu({A.alphabet.names[i]}) = 0")
    rel_images = [f"{r} -> reduces to 0 under nu" for r in A.relations]
    return NormalityCertificate(
        A,
        ftilde,
        True,
        nu=nu,
        residues=residues,
        relation_images=rel_images,
        precondition=precondition,
    )


def central_check(A: PresentedAlgebra, f: FreePoly) -> bool:
    """True when the normalizing map of f is the identity."""
    cert = normal_check(A, f)
    if not cert.normal:
        raise ValueError(f"element is not certified normal: {cert.reason}")
    return cert.nu == GeneratorMap.identity(A.alphabet, A.field)


def compatible_lower_terms(A: PresentedAlgebra, f_top: FreePoly, nu: GeneratorMap, j: int):
    """Basis of {w of weight j : g*w = w*nu(g) for every generator g}."""
    words = A.gb.normal_words(j)
    if not words:
        return []
    cand = [FreePoly(A.alphabet, A.field, {w: A.field.one()}) for w in words]
    n = len(A.alphabet)
    rows = []
    targets = set()
    residuals = []
    for i in range(n):
        xi = _letter(A, i)
        per_basis = [A.reduce(xi * c - c * nu.images[i]) for c in cand]
        residuals.append(per_basis)
        for p in per_basis:
            targets.update(p.terms)
    target_words = sorted(targets, key=A.alphabet.word_key)
    for i in range(n):
        for w in target_words:
            rows.append([p.coefficient(w) for p in residuals[i]])
    if not rows:
        return cand
    basis = null_space(rows, A.field, ncols=len(cand))
    out = []
    for vec in basis:
        terms = {w: c for w, c in zip(words, vec) if not c.is_zero()}
        out.append(FreePoly(A.alphabet, A.field, terms))
    return out


def regular_check_homog(A: PresentedAlgebra, f: FreePoly):
    """Hilbert-drop certificate for a homogeneous normal element: the
    quotient series must be (1 - t^d) times the ambient one.  Exact when
    both bases are complete, else a truncated comparison flagged bounded.
    Returns (ok, certificate dict)."""
    if not A.graded:
        raise ValueError("ambient must be graded")
    ftilde = A.reduce(f)
    if ftilde.is_zero() or not ftilde.is_homogeneous():
        raise ValueError("element must be nonzero homogeneous in the quotient")
    d = ftilde.degree()
    quotient = A.quotient([ftilde])
    if A.gb.complete and quotient.gb.complete:
        ha = A.hilbert().rational
        hq = quotient.hilbert().rational
        drop = RationalFunction.from_poly(Poly([1] + [0] * (d - 1) + [-1]))
        ok = hq == drop * ha
        cert = {
            "exact": True,
            "element": str(ftilde),
            "ambient_hilbert": str(ha),
            "quotient_hilbert": str(hq),
            "identity": f"quotient = (1 - t^{d}) * ambient",
            "ok": ok,
        }
        return ok, cert
    top = min(A.bound, quotient.bound)
    a = A.gb.hilbert_truncated(top).coeffs
    q = quotient.gb.hilbert_truncated(top).coeffs
    ok = all(q[m] == a[m] - (a[m - d] if m >= d else 0) for m in range(top + 1))
    cert = {
        "exact": False,
        "bound": top,
        "element": str(ftilde),
        "ambient_counts": list(a),
        "quotient_counts": list(q),
        "identity": f"quotient = (1 - t^{d}) * ambient through degree {top}",
        "ok": ok,
    }
    return ok, cert


def _filtered_counts_match(A: PresentedAlgebra, gr: PresentedAlgebra):
    """Normal-word counts per weight agree through the bound; returns the
    first failing degree or None."""
    top = min(A.bound, gr.bound)
    a = A.gb.hilbert_truncated(top).coeffs
    b = gr.gb.hilbert_truncated(top).coeffs
    for d in range(top + 1):
        if a[d] != b[d]:
            return d
    return None


def regular_check_filtered(S: PresentedAlgebra, f: FreePoly, g: FreePoly):
    """Regularity of the class of g in S/(f) via the associated graded.

    Requires the leading-term data of (relations, f) to match that of
    (relations, top f); then the class of g is regular as soon as its top
    part is certified regular normal in the graded quotient.  Returns
    (True, certificate); anything unverifiable raises InconclusiveError.
    """
    A = S.quotient([f])
    ftop = S.reduce(f).top_part()
    gr = S.quotient([ftop])
    mismatch = _filtered_counts_match(A, gr)
    if mismatch is not None:
        raise InconclusiveError(
            f"leading-term data of the quotient differs from the graded model "
            f"at degree {mismatch}"
        )
    gbar = A.reduce(g)
    if gbar.is_zero():
        raise InconclusiveError("element reduces to zero in the quotient")
    gtop = gbar.top_part()
    sub = normal_check(gr, gtop)
    if not sub.normal:
        raise InconclusiveError(
            f"top part of the reduced element is not certified normal in the "
            f"graded quotient: {sub.reason}"
        )
    ok, cert = regular_check_homog(gr, gtop)
    if not ok:
        raise InconclusiveError(
            f"top part fails the graded regularity certificate: {cert}"
        )
    return True, {
        "graded_model_counts_match": True,
        "top_of_element": str(gtop),
        "top_normality": "certified",
        "top_regularity": cert,
    }


class SequenceCertificate:
    """Evidence bundle for the ordered two-element sequence check."""

    __slots__ = ("ok", "stage", "evidence", "ambient", "first", "second")

    def __init__(self, ok, stage, evidence, ambient, first, second):
        self.ok = ok
        self.stage = stage  # None on success, else the failing stage name
        self.evidence = evidence
        self.ambient = ambient
        self.first = first
        self.second = second

    def __repr__(self):
        if self.ok:
            return "SequenceCertificate(pass)"
        return f"SequenceCertificate(fail at {self.stage})"


def srns_check(S: PresentedAlgebra, f: FreePoly, g: FreePoly) -> SequenceCertificate:
    """Ordered check that (f, g) is a strongly regular normal sequence of
    degree 2: top sequence certificates first, then f, then the class of g,
    then the dimension count of the final quotient.  No permutation is
    tried; order sensitivity is part of the contract."""
    evidence = {}

    def fail(stage, detail):
        evidence[stage] = detail
        return SequenceCertificate(False, stage, evidence, S, f, g)

    qpa, cls = is_qpa2(S.relations[0]) if len(S.relations) == 1 else (False, None)
    if not qpa:
        return fail("ambient", "ambient is not a two-letter quantum plane")
    evidence["ambient"] = f"quantum plane, relation class {cls}"
    if f.is_zero() or g.is_zero() or f.degree() != 2 or g.degree() != 2:
        return fail("degrees", "both elements must have degree exactly 2")

    ftop = S.reduce(f).top_part()
    try:
        cert_f_top = normal_check(S, ftop)
    except InconclusiveError as e:
        return fail("top-f", f"inconclusive: {e.reason}")
    if not cert_f_top.normal:
        return fail("top-f", cert_f_top.reason)
    ok, hcert = regular_check_homog(S, ftop)
    evidence["top-f"] = {"normality": "certified", "regularity": hcert}
    if not ok:
        return fail("top-f", {"regularity": hcert})

    grq = S.quotient([ftop])
    gtop = grq.reduce(S.reduce(g).top_part())
    if gtop.is_zero():
        return fail(
            "top-g", "top part of the second element vanishes in the graded quotient"
        )
    try:
        cert_g_top = normal_check(grq, gtop)
    except InconclusiveError as e:
        return fail("top-g", f"inconclusive: {e.reason}")
    if not cert_g_top.normal:
        return fail("top-g", cert_g_top.reason)
    ok, hcert2 = regular_check_homog(grq, gtop)
    evidence["top-g"] = {"normality": "certified", "regularity": hcert2}
    if not ok:
        return fail("top-g", {"regularity": hcert2})

    try:
        cert_f = normal_check(S, f)
    except InconclusiveError as e:
        return fail("f-normality", f"inconclusive: {e.reason}")
    if not cert_f.normal:
        return fail("f-normality", cert_f.reason)
    evidence["f-normality"] = {
        "nu": str(cert_f.nu),
        "regularity": "free: the ambient quantum plane is a domain",
    }

    A = S.quotient([f])
    try:
        cert_g = normal_check(A, g)
    except InconclusiveError as e:
        return fail("g-normality", f"inconclusive: {e.reason}")
    if not cert_g.normal:
        return fail("g-normality", cert_g.reason)
    evidence["g-normality"] = {"nu": str(cert_g.nu)}

    try:
        _, reg_cert = regular_check_filtered(S, f, g)
    except InconclusiveError as e:
        return fail("g-regularity", f"inconclusive: {e.reason}")
    evidence["g-regularity"] = reg_cert

    E = A.quotient([g])
    top = E.bound
    counts = list(E.gb.hilbert_truncated(top).coeffs)
    expected = [1, 2, 1] + [0] * (top - 2)
    evidence["dimension"] = {
        "counts": counts,
        "expected": expected,
        "complete": E.gb.complete,
    }
    if counts != expected:
        return fail("dimension", evidence["dimension"])
    return SequenceCertificate(True, None, evidence, S, f, g)


# -- sequence transforms ------------------------------------------------------


def st_transform(F, H, P: GeneratorMap, alpha, gamma=None):
    """One transform step: apply the letter map to every entry, mix the F
    block by alpha, and absorb multiples of the transformed H entries by
    gamma.  Returns (F', H') with H' the letter-mapped H."""
    F = list(F)
    H = list(H)
    m, l = len(F), len(H)
    if len(alpha) != m or any(len(row) != m for row in alpha):
        raise ValueError("mixing matrix must be square of the sequence length")
    field = P.field
    if matrix_inverse([list(r) for r in alpha], field) is None:
        raise ValueError("mixing matrix is singular")
    if gamma is None:
        gamma = [[field.zero()] * l for _ in range(m)]
    if len(gamma) != m or any(len(row) != l for row in gamma):
        raise ValueError("absorption matrix has wrong shape")
    w1 = [i for i, w in enumerate(P.alphabet.weights) if w == 1]
    block = [[P.images[i].coefficient((j,)) for j in w1] for i in w1]
    if matrix_rank(block, field) != len(w1):
        raise ValueError("letter map is singular")

    phiF = [substitute(p, P) for p in F]
    phiH = [substitute(h, P) for h in H]
    out = []
    for i in range(m):
        acc = FreePoly.zero(P.alphabet, field)
        for j in range(m):
            if not alpha[i][j].is_zero():
                acc = acc + phiF[j].scale(alpha[i][j])
        for k in range(l):
            if not gamma[i][k].is_zero():
                acc = acc + phiH[k].scale(gamma[i][k])
        out.append(acc)
    return out, phiH


def _span_words(polys):
    ab = polys[0].alphabet
    words = sorted({w for p in polys for w in p.terms}, key=ab.word_key)
    return words


def _in_span(p: FreePoly, spanning, field) -> bool:
    if p.is_zero():
        return True
    if not spanning:
        return False
    words = sorted(
        {w for q in spanning for w in q.terms} | set(p.terms),
        key=p.alphabet.word_key,
    )
    rows = [[q.coefficient(w) for w in words] for q in spanning]
    target = [p.coefficient(w) for w in words]
    r0 = matrix_rank(rows, field)
    return matrix_rank(rows + [target], field) == r0


def st_witness_verify(F, Fprime, H, chain) -> tuple[bool, str]:
    """Fold the chain of (P, alpha, gamma) steps over (F, H) and compare the
    result with the target entrywise, allowing differences in the span of
    the folded H.  Returns (ok, message naming the broken step if any)."""
    cur = list(F)
    curH = list(H)
    for idx, step in enumerate(chain):
        P, alpha, gamma = step
        try:
            cur, curH = st_transform(cur, curH, P, alpha, gamma)
        except ValueError as e:
            return False, f"step {idx + 1} invalid: {e}"
    if len(cur) != len(Fprime):
        return False, "length mismatch"
    field = cur[0].field if cur else None
    for i, (got, want) in enumerate(zip(cur, Fprime)):
        if not _in_span(got - want, curH, field):
            return False, f"entry {i + 1} differs by more than the relation span"
    return True, "chain verified"


def derive_st_step(F, H, P: GeneratorMap, targetF):
    """Solve for (alpha, gamma) sending (F, H) to targetF under the letter
    map P, exactly.  Returns (alpha, gamma) or None."""
    field = P.field
    phiF = [substitute(p, P) for p in F]
    phiH = [substitute(h, P) for h in H]
    m, l = len(F), len(H)
    cols = phiF + phiH
    words = sorted(
        {w for p in cols + list(targetF) for w in p.terms},
        key=P.alphabet.word_key,
    )
    rows = [[c.coefficient(w) for c in cols] for w in words]
    alpha, gamma = [], []
    for tgt in targetF:
        rhs = [tgt.coefficient(w) for w in words]
        sol = solve(rows, rhs, field)
        if sol is None:
            return None
        alpha.append(sol[:m])
        gamma.append(sol[m:])
    if matrix_inverse(alpha, field) is None:
        return None
    return alpha, gamma


def st_obstruction(F, Fprime, H):
    """Try to refute equivalence of two sequences over the same ambient.

    Mechanism (a): for each subset s of the degree set {0, 1, 2}, the
    dimension of the subspace of span(F + H) vanishing in all degrees of s
    is invariant under letter maps, mixing, and absorption; a differing
    profile refutes.  Mechanism (b): the quotient algebras by the two
    sequences must be isomorphic, so differing finite-dimensional
    classification labels refute.  Returns a proof dict or None.
    """
    field = F[0].field
    ab = F[0].alphabet
    all_degs = sorted(
        {
            ab.word_key(w)[0]
            for p in list(F) + list(Fprime) + list(H)
            for w in p.terms
        }
    )

    def profile(seq):
        polys = list(seq) + list(H)
        words = _span_words(polys)
        rows = [[p.coefficient(w) for w in words] for p in polys]
        base, _ = rref(rows, field)
        base = [r for r in base if any(not c.is_zero() for c in r)]
        dim = len(base)
        out = {}
        for r in range(len(all_degs) + 1):
            for s in itertools.combinations(all_degs, r):
                sset = set(s)
                proj_cols = [i for i, w in enumerate(words) if ab.word_key(w)[0] in sset]
                proj = [[row[i] for i in proj_cols] for row in base]
                rk = matrix_rank(proj, field) if proj_cols else 0
                out[s] = dim - rk
        return out

    pa, pb = profile(F), profile(Fprime)
    for s in sorted(set(pa) | set(pb), key=lambda s: (len(s), s)):
        if pa.get(s) != pb.get(s):
            return {
                "mechanism": "degree-support profile",
                "subset": list(s),
                "dims": [pa.get(s), pb.get(s)],
                "detail": (
                    f"subspace vanishing in degrees {list(s)} has dimension "
                    f"{pa.get(s)} on one side and {pb.get(s)} on the other"
                ),
            }

    labels = []
    for seq in (F, Fprime):
        try:
            from .findim import classify_frob4, from_quotient

            A = PresentedAlgebra(ab, field, list(seq) + list(H))
            R = from_quotient(A)
            labels.append(classify_frob4(R).label)
        except Exception as e:  # classification is best-effort here
            labels.append(f"unclassified ({e})")
    if (
        labels[0] != labels[1]
        and not labels[0].startswith("unclassified")
        and not labels[1].startswith("unclassified")
    ):
        return {
            "mechanism": "quotient classification",
            "labels": labels,
            "detail": (
                "the quotients by the two sequences classify differently, "
                "but equivalent sequences have isomorphic quotients"
            ),
        }
    return None


def exhaustive_normal_search(
    A: PresentedAlgebra, d: int, include_inhomogeneous: bool = False
):
    """All normal elements of top degree d, up to scalar, over a prime field.

    Enumerates the projective coefficient space of the degree-d component
    (first nonzero coefficient 1), keeps the elements normal_check certifies,
    and, when asked, extends each by every compatible combination of lower
    terms.  Complete for elements whose top part is regular.
    """
    field = A.field
    if field.kind != "Fp":
        raise ValueError("exhaustive search needs a prime field")
    p = field.param
    words = A.gb.normal_words(d)
    if not words:
        return []
    found = []
    nwords = len(words)
    for lead in range(nwords):
        for rest in itertools.product(range(p), repeat=nwords - lead - 1):
            coeffs = [field.zero()] * lead + [field.one()] + [
                field.from_int(c) for c in rest
            ]
            f_top = FreePoly(
                A.alphabet, field,
                {w: c for w, c in zip(words, coeffs) if not c.is_zero()},
            )
            try:
                cert = normal_check(A, f_top)
            except (InconclusiveError, ValueError):
                continue
            if not cert.normal:
                continue
            if not include_inhomogeneous:
                found.append(f_top)
                continue
            lowers = []
            for j in range(d - 1, -1, -1):
                lowers.extend(compatible_lower_terms(A, f_top, cert.nu, j))
            if not lowers:
                found.append(f_top)
                continue
            if p ** len(lowers) > 100000:
                raise ValueError(
                    f"lower-term space too large to sweep ({len(lowers)} "
                    f"dimensions over F_{p})"
                )
            for combo in itertools.product(range(p), repeat=len(lowers)):
                g = f_top
                for c, w in zip(combo, lowers):
                    if c:
                        g = g + w.scale(field.from_int(c))
                found.append(g)
    return found
