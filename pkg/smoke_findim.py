"""Scratch oracle checks for findim (delete before finalizing)."""

import random
from fractions import Fraction

from ncpencil.fields import Q, Qsqrt, Fp, NeedsFieldExtensionError
from ncpencil.freealg import Alphabet, FreePoly
from ncpencil.algebra import PresentedAlgebra
from ncpencil.linalg import matrix_inverse
from ncpencil.findim import (
    Frob4Label,
    SCAlgebra,
    center,
    classify_frob4,
    frobenius_check,
    from_quotient,
    idempotent_decompose,
    iso_verify,
    quiver_algebra,
    rad_form_invariant,
    radical,
)

ab2 = Alphabet([("x", 1), ("y", 1)])
ab1 = Alphabet([("x", 1)])


def P2(field, terms):
    out = {}
    for w, c in terms.items():
        s = field.from_fraction(Fraction(c))
        if not s.is_zero():
            out[w] = s
    return FreePoly(ab2, field, out)


def P1(field, terms):
    out = {}
    for w, c in terms.items():
        s = field.from_fraction(Fraction(c))
        if not s.is_zero():
            out[w] = s
    return FreePoly(ab1, field, out)


X, Y = (0,), (1,)
XX, XY, YX, YY = (0, 0), (0, 1), (1, 0), (1, 1)


def alg2(field, rels):
    return PresentedAlgebra(ab2, field, [P2(field, r) for r in rels])


def alg1(field, rels):
    return PresentedAlgebra(ab1, field, [P1(field, r) for r in rels])


# canonical commutative/anticommutative relation dicts
def comm():
    return {XY: 1, YX: -1}


def anti():
    return {XY: 1, YX: 1}


checks = 0


def ok(cond, msg):
    global checks
    checks += 1
    if not cond:
        raise SystemExit(f"FAILED: {msg}")
    print(f"  ok: {msg}")


# 1. from_quotient basics ------------------------------------------------------
print("[1] from_quotient")
A = alg2(Q, [anti(), {XX: 1}, {YY: 1}])  # xy+yx, x^2, y^2
R = from_quotient(A)
ok(R.dim == 4 and list(R.labels) == ["1", "x", "y", "y*x"], "anticomm basis 1,x,y,y*x")
ix, iy, iyx = 1, 2, 3
prod = R.mult(R.basis_vector(ix), R.basis_vector(iy))
ok(prod[iyx] == Q.from_int(-1) and all(prod[k].is_zero() for k in (0, 1, 2)),
   "x*y = -y*x in coordinates")

R2 = from_quotient(alg2(Q, [{XX: 1}, {YX: 1}, {YY: 1}]))  # x^2, yx, y^2
ok(R2.dim == 4 and list(R2.labels) == ["1", "x", "y", "x*y"], "R2 basis 1,x,y,x*y")

try:
    from_quotient(alg2(Q, [anti(), {XX: 1}]))
    raise SystemExit("FAILED: infinite quotient accepted")
except ValueError as e:
    ok("infinite" in str(e), f"infinite quotient refused ({e})")

# 2. quiver algebras ------------------------------------------------------------
print("[2] quiver_algebra")
Q2 = quiver_algebra(Q, 2, [("x", 1, 2), ("y", 2, 1)], [("x", "y"), ("y", "x")])
ok(Q2.dim == 4 and list(Q2.labels) == ["e1", "e2", "x", "y"], "2-cycle dim 4")
e1, e2, qx, qy = (Q2.basis_vector(i) for i in range(4))
ok(Q2.mult(e1, qx) == qx and Q2.mult(qx, e1) == Q2.zero_vector(), "e1*x=x, x*e1=0")
ok(Q2.mult(qx, e2) == qx and Q2.mult(qx, qy) == Q2.zero_vector(), "x*e2=x, x*y=0")

A2path = quiver_algebra(Q, 2, [("a", 1, 2)])
ok(A2path.dim == 3, "A2 path algebra dim 3")
loop = quiver_algebra(Q, 1, [("x", 1, 1)], [("x", "x")])
ok(loop.dim == 2, "loop mod x^2 dim 2")
try:
    quiver_algebra(Q, 1, [("x", 1, 1)])
    raise SystemExit("FAILED: free loop accepted")
except ValueError as e:
    ok("infinite" in str(e), "free loop refused as infinite")

# matrix units M_2
def m2(field):
    # basis E11, E12, E21, E22; Eij Ekl = delta_jk Eil
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    pairs = list(idx)
    consts = []
    for (i, j) in pairs:
        row = []
        for (k, l) in pairs:
            v = [field.zero()] * 4
            if j == k:
                v[idx[(i, l)]] = field.one()
            row.append(v)
        consts.append(row)
    unit = [field.one(), field.zero(), field.zero(), field.one()]
    return SCAlgebra(field, ["E11", "E12", "E21", "E22"], consts, unit)


M2 = m2(Q)
ok(M2.dim == 4, "M2 constructed (associativity verified)")

# 3. radical and center ----------------------------------------------------------
print("[3] radical / center")
ok(radical(M2) == [], "rad M2 = 0")
ok(len(center(M2)) == 1, "center M2 dim 1")

K4 = from_quotient(alg1(Q, [{(0, 0, 0, 0): 1}]))  # k[x]/(x^4)
ok(K4.dim == 4 and len(radical(K4)) == 3, "k[x]/(x^4): rad dim 3")
ok(len(radical(Q2)) == 2, "quiver: rad dim 2")

k2 = alg2(Q, [{XY: 1, YX: -2}, {XX: 1}, {YY: 1}])  # xy-2yx, x^2, y^2
Rk2 = from_quotient(k2)
zc = center(Rk2)
ok(len(zc) == 2, "center of k_2 quotient has dim 2")

# 4. frobenius_check -------------------------------------------------------------
print("[4] frobenius_check")
fr = frobenius_check(R2)
ok(not fr and fr.determinant == {}, f"R2 refused ({fr.reason})")
ok(bool(frobenius_check(Q2)), "quiver passes")
fr3 = frobenius_check(A2path)
ok(not fr3, f"dim-3 path algebra refused ({fr3.reason})")
ok(bool(frobenius_check(M2)), "M2 passes")
ok(bool(frobenius_check(K4)), "k[x]/(x^4) passes")
ok(bool(frobenius_check(Rk2)), "k_2 quotient passes")

# 5. idempotent_decompose ---------------------------------------------------------
print("[5] idempotent_decompose")
Ksplit = from_quotient(alg2(Q, [comm(), {XX: 1, (): -1}, {YY: 1, (): -1}]))
blocks = idempotent_decompose(Ksplit)
ok(sorted(b.dim for b in blocks) == [1, 1, 1, 1], "k[x,y]/(x^2-1,y^2-1): 4 blocks")

quatQ = from_quotient(alg2(Q, [anti(), {XX: 1, (): 1}, {YY: 1, (): 1}]))
ok(len(idempotent_decompose(quatQ)) == 1, "quaternions over Q stay whole")

Qi = Qsqrt(-1)
quatQi = from_quotient(alg2(Qi, [anti(), {XX: 1, (): 1}, {YY: 1, (): 1}]))
ok(classify_frob4(quatQi) == Frob4Label("M_2(k)"), "quaternions over Q(i) -> M_2(k)")
try:
    classify_frob4(quatQ)
    raise SystemExit("FAILED: quaternions over Q classified without extension")
except NeedsFieldExtensionError as e:
    ok(True, f"quaternions over Q need an extension ({e})")

ok(len(idempotent_decompose(K4)) == 1, "k[x]/(x^4) is one block")

# 6. rad_form_invariant -----------------------------------------------------------
print("[6] rad_form_invariant")
inv = rad_form_invariant(Rk2)
ok(inv["class"] == "lambda" and inv["key"] == Q.from_fraction(Fraction(5, 2)),
   "k_2: lambda class, key 5/2")
Rk12 = from_quotient(alg2(Q, [{XY: 1, YX: Fraction(-1, 2)}, {XX: 1}, {YY: 1}]))
inv12 = rad_form_invariant(Rk12)
ok(inv12["class"] == "lambda" and inv12["key"] == Q.from_fraction(Fraction(5, 2)),
   "k_{1/2}: same key 5/2")
Rdef = from_quotient(alg2(Q, [anti(), {XX: 1}, {YY: 1, YX: 1}]))
ok(rad_form_invariant(Rdef)["class"] == "defective", "x^2, y^2+yx: defective")
Rsym = from_quotient(alg2(Q, [comm(), {XX: 1}, {YY: 1}]))
ok(rad_form_invariant(Rsym)["class"] == "symmetric", "k[x,y]/(x^2,y^2): symmetric")

# 7. classify_frob4 ---------------------------------------------------------------
print("[7] classify_frob4")
ok(classify_frob4(Ksplit).label == "k^4", "split torus -> k^4")
ok(classify_frob4(M2).label == "M_2(k)", "matrix units -> M_2(k)")
ok(classify_frob4(Q2).label == "quiver", "2-cycle -> quiver")
ok(classify_frob4(K4).label == "k[x]/(x^4)", "chain -> k[x]/(x^4)")
ok(classify_frob4(Rsym).label == "k[x,y]/(x^2,y^2)", "symmetric -> k[x,y]/(x^2,y^2)")
ok(classify_frob4(Rdef).label == "J-type", "defective -> J-type")
lab2 = classify_frob4(Rk2)
lab12 = classify_frob4(Rk12)
ok(lab2.label == "lambda-type(5/2)" and lab2 == lab12, "k_2 and k_{1/2} share a label")

Rx2x2 = from_quotient(alg1(Q, [{(0,) * 4: 1, (0, 0): -1}]))  # x^4 - x^2
ok(classify_frob4(Rx2x2).label == "k^2 x k[x]/(x^2)", "x^4-x^2 -> k^2 x k[x]/(x^2)")
Rx3 = from_quotient(alg1(Q, [{(0,) * 4: 1, (0, 0, 0): -1}]))  # x^4 - x^3
ok(classify_frob4(Rx3).label == "k x k[x]/(x^3)", "x^4-x^3 -> k x k[x]/(x^3)")
Rxx = from_quotient(alg2(Q, [comm(), {XX: 1, X: -1}, {YY: 1}]))  # x^2-x, y^2
ok(classify_frob4(Rxx).label == "(k[x]/(x^2))^2", "x^2-x, y^2 -> (k[x]/(x^2))^2")

brD = from_quotient(alg2(Q, [comm(), {XX: 1}, {YY: 1, X: -1}]))  # x^2, y^2-x
ok(classify_frob4(brD).label == "k[x]/(x^4)", "k[x,y]/(x^2,y^2-x) -> k[x]/(x^4)")

# ten distinct labels overall
labels = {
    classify_frob4(r)
    for r in (Ksplit, M2, Q2, K4, Rsym, Rdef, Rk2, Rx2x2, Rx3, Rxx)
}
ok(len(labels) == 10, "ten pairwise distinct labels")

# classification invariant under basis change
random.seed(7)


def random_basis_change(R):
    n = R.dim
    while True:
        P = [[R.field.from_int(random.randint(-2, 2)) for _ in range(n)]
             for _ in range(n)]
        Pi = matrix_inverse(P, R.field)
        if Pi is not None:
            break

    def newvec(i):
        return P[i]

    def express(v):
        # coords of v over new basis: Pi^T applied? new_j = sum_k P[j][k] e_k
        # v = sum_j c_j new_j  ->  c = v @ Pi (row vector times inverse)
        return [
            sum((v[k] * Pi[k][j] for k in range(n)), R.field.zero())
            for j in range(n)
        ]

    consts = [
        [express(R.mult(newvec(i), newvec(j))) for j in range(n)]
        for i in range(n)
    ]
    unit = express(list(R.unit))
    return SCAlgebra(R.field, [f"c{i}" for i in range(n)], consts, unit)


for rr, expect in ((Rk2, lab2), (Q2, Frob4Label("quiver")), (K4, Frob4Label("k[x]/(x^4)"))):
    for _ in range(3):
        ok(classify_frob4(random_basis_change(rr)) == expect,
           f"label stable under basis change ({expect.label})")

# 8. dict round trip ---------------------------------------------------------------
print("[8] serialization")
dd = Rk2.to_dict()
back = SCAlgebra.from_dict(dd)
ok(back == Rk2, "to_dict/from_dict round trip")
ddq = quatQi.to_dict()
ok(SCAlgebra.from_dict(ddq) == quatQi, "round trip over Q(sqrt(-1))")

# 9. iso_verify ---------------------------------------------------------------------
print("[9] iso_verify")
T = from_quotient(alg2(Q, [anti(), {XX: 1}, {YY: 1, (): -1}]))  # x^2, y^2-1
half = Q.from_fraction(Fraction(1, 2))
# target coords over basis [1, x, y, y*x]
img_e1 = [half, Q.zero(), half, Q.zero()]          # (1+y)/2
img_x = [Q.zero(), Q.one(), Q.zero(), Q.one()]     # x + yx
img_y = [Q.zero(), Q.one(), Q.zero(), Q.from_int(-1)]  # x - yx
ok(iso_verify(Q2, T, {"e1": img_e1, "x": img_x, "y": img_y}),
   "quiver ~ anticomm x^2, y^2-1 via the explicit map")
ok(not iso_verify(Q2, T, {"e1": img_e1, "x": [Q.zero(), Q.one(), Q.zero(), Q.zero()],
                          "y": img_y}),
   "broken image rejected")
try:
    iso_verify(Q2, T, {"e1": img_e1})
    raise SystemExit("FAILED: non-generating set accepted")
except ValueError as e:
    ok("generate" in str(e), "non-generating set raises")

# wrong-dimension target
ok(not iso_verify(A2path, M2, {"e1": [Q.one(), Q.zero(), Q.zero(), Q.zero()],
                               "a": [Q.zero(), Q.one(), Q.zero(), Q.zero()]})
   if A2path.dim != M2.dim else True, "dim mismatch rejected")

# 10. classify over F_p (best effort used by obstructions) --------------------------
print("[10] prime field")
F7 = Fp(7)
Rk2_7 = from_quotient(alg2(F7, [{XY: 1, YX: -2}, {XX: 1}, {YY: 1}]))
l7 = classify_frob4(Rk2_7)
ok(l7.kind == "lambda-type" and l7.key == F7.from_fraction(Fraction(5, 2)),
   "k_2 over F_7: lambda key 5/2 mod 7")
ok(classify_frob4(from_quotient(alg2(F7, [comm(), {XX: 1, (): -1}, {YY: 1, (): -1}]))).label == "k^4",
   "split torus over F_7 -> k^4")

print(f"\nALL FINDIM SMOKE CHECKS PASSED ({checks} checks)")
