import sys

sys.path.insert(0, "src")

from fractions import Fraction

from ncpencil.fields import Q, Fp, Qsqrt
from ncpencil.freealg import Alphabet, FreePoly, GeneratorMap, substitute
from ncpencil.algebra import PresentedAlgebra
from ncpencil.normality import (
    InconclusiveError,
    central_check,
    compatible_lower_terms,
    derive_st_step,
    exhaustive_normal_search,
    normal_check,
    regular_check_filtered,
    regular_check_homog,
    srns_check,
    st_obstruction,
    st_transform,
    st_witness_verify,
)

QF = Q
ab = Alphabet([("x", 1), ("y", 1)])


def P(terms):
    return FreePoly(ab, QF, {w: QF.from_int(c) for w, c in terms.items() if c})


X, Y = (0,), (1,)
XX, XY, YX, YY = (0, 0), (0, 1), (1, 0), (1, 1)

# k_{-1} = k<x,y>/(xy+yx); k_lambda = k<x,y>/(xy - lam*yx)
kminus1_rel = P({XY: 1, YX: 1})
Sm1 = PresentedAlgebra(ab, QF, [kminus1_rel])
A1 = Sm1.quotient([P({XX: 1})])  # k_{-1}/(x^2)

# 1. gamma*yx + y^2 normal in k_{-1}/(x^2), nu = (1 0; 2gamma 1)
for gamma in (0, 1, 3, -2):
    f = P({YX: gamma, YY: 1})
    cert = normal_check(A1, f)
    assert cert.normal, (gamma, cert.reason)
    nux = cert.nu.image_of("x")
    nuy = cert.nu.image_of("y")
    assert nux == P({X: 1}), (gamma, nux)
    assert nuy == P({X: 2 * gamma, Y: 1}), (gamma, nuy)
    assert cert.verify()
    assert central_check(A1, f) == (gamma == 0), gamma
print("1. gamma*yx + y^2 in k_-1/(x^2): nu=(1 0; 2g 1), central iff g=0  OK")

# 2. x^2 in k_2: nu x->x, y->y/4
k2 = PresentedAlgebra(ab, QF, [P({XY: 1, YX: -2})])
cert = normal_check(k2, P({XX: 1}))
assert cert.normal
assert cert.nu.image_of("x") == P({X: 1})
assert cert.nu.image_of("y") == FreePoly(ab, QF, {Y: QF.from_fraction(Fraction(1, 4))})
print("2. x^2 in k_2: nu = (x, y/4)  OK")

# frozen table of normalizing maps in k_2: x,y,x^2,y^2,xy pairwise distinct, non-id
maps = {}
for name, f in [
    ("x", P({X: 1})),
    ("y", P({Y: 1})),
    ("x2", P({XX: 1})),
    ("y2", P({YY: 1})),
    ("xy", P({XY: 1})),
]:
    c = normal_check(k2, f)
    assert c.normal, name
    maps[name] = c.nu
ident = GeneratorMap.identity(ab, QF)
vals = list(maps.items())
for i in range(len(vals)):
    assert vals[i][1] != ident, vals[i][0]
    for j in range(i + 1, len(vals)):
        assert vals[i][1] != vals[j][1], (vals[i][0], vals[j][0])
# frozen diagonal entries
def diag(nu):
    out = []
    for nm in ("x", "y"):
        img = nu.image_of(nm)
        out.append(img.coefficient((ab.index(nm),)))
    return out

assert diag(maps["x"]) == [QF.from_int(1), QF.from_fraction(Fraction(1, 2))]
assert diag(maps["y"]) == [QF.from_int(2), QF.from_int(1)]
assert diag(maps["x2"]) == [QF.from_int(1), QF.from_fraction(Fraction(1, 4))]
assert diag(maps["y2"]) == [QF.from_int(4), QF.from_int(1)]
assert diag(maps["xy"]) == [QF.from_int(2), QF.from_fraction(Fraction(1, 2))]
print("3. k_2 normalizing maps of x,y,x^2,y^2,xy: frozen diagonals, pairwise distinct  OK")

# 4. y^2+y in k_{-1}/(x^2): sound refusal with witness x
f = P({YY: 1, Y: 1})
cert = normal_check(A1, f)
assert not cert.normal
assert cert.witness_generator == "x", cert.witness_generator
assert "regular normal" in cert.precondition
print("4. y^2+y in k_-1/(x^2): refusal, witness x  OK")

# counterexample triple: y^2+yx, y^2-yx normal distinct nu; 2y^2 central
ca = normal_check(A1, P({YY: 1, YX: 1}))
cb = normal_check(A1, P({YY: 1, YX: -1}))
assert ca.normal and cb.normal and ca.nu != cb.nu
assert central_check(A1, P({YY: 2}))
print("5. y^2+yx vs y^2-yx distinct nu; 2y^2 central  OK")

# 6. compatible_lower_terms oracles
f0 = P({YY: 1})
c0 = normal_check(A1, f0)
lt1 = compatible_lower_terms(A1, f0, c0.nu, 1)
lt0 = compatible_lower_terms(A1, f0, c0.nu, 0)
assert lt1 == [] and len(lt0) == 1 and lt0[0] == P({(): 1}), (lt1, lt0)
fg = P({YY: 1, YX: 2})
cg = normal_check(A1, fg)
assert compatible_lower_terms(A1, fg, cg.nu, 1) == []
assert compatible_lower_terms(A1, fg, cg.nu, 0) == []
print("6. compat lower terms: (y^2: j1 {}, j0 const), (y^2+2yx: both {})  OK")

# 7. regular_check_homog: y^2 in k_-1/(x^2) -> H=(1+t)^2 identity holds
ok, hc = regular_check_homog(A1, P({YY: 1}))
assert ok and hc["exact"], hc
ok2, _ = regular_check_homog(k2, P({XX: 1}))
assert ok2
ok3, _ = regular_check_homog(k2, P({YX: 1}))
assert ok3
print("7. regular_check_homog: y^2 (k_-1/(x^2)), x^2, yx (k_2)  OK")

# 8. regular_check_filtered: Table 3 inhomogeneous rows
ok, cert = regular_check_filtered(Sm1, P({XX: 1}), P({YY: 1, (): 1}))  # F6
assert ok
ok, cert = regular_check_filtered(Sm1, P({XX: 1, (): 1}), P({YY: 1}))  # F7
assert ok
print("8. regular_check_filtered F6/F7 shapes  OK")

# 9. srns_check: passes and ordered failures
r = srns_check(k2, P({XX: 1}), P({YY: 1}))  # F2(2)
assert r.ok, (r.stage, r.evidence.get(r.stage))
r = srns_check(Sm1, P({XX: 1}), P({YY: 1, Y: 1}))
assert not r.ok and r.stage == "g-normality", r.stage
assert "top-g" in r.evidence  # top sequence passed before the failure
r = srns_check(Sm1, P({YY: 1, YX: 1}), P({XX: 1}))
assert not r.ok, "order-reversed pair must fail"
r2 = srns_check(Sm1, P({XX: 1}), P({YY: 1, YX: 1}))
assert r2.ok, (r2.stage, r2.evidence.get(r2.stage))
print("9. srns: F2(2) pass; (x2,y2+y) fails g-normality; order sensitivity  OK")

# 10. st_transform / witness verify: F6 -> F7 via swap
def gm(mat_rows, consts=None):
    imgs = []
    for i, row in enumerate(mat_rows):
        terms = {}
        for j, c in enumerate(row):
            if c:
                terms[(j,)] = QF.from_int(c)
        if consts and consts[i]:
            terms[()] = QF.from_int(consts[i])
        imgs.append(FreePoly(ab, QF, terms))
    return GeneratorMap(ab, QF, imgs)

swap = gm([[0, 1], [1, 0]])
F6 = [P({XX: 1}), P({YY: 1, (): 1}), P({XY: 1, YX: 1})]
F7 = [P({XX: 1, (): 1}), P({YY: 1}), P({XY: 1, YX: 1})]
alpha = [
    [QF.from_int(c) for c in row]
    for row in [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
]
got, _ = st_transform(F6, [], swap, alpha)
assert got == F7, [str(g) for g in got]
ok, msg = st_witness_verify(F6, F7, [], [(swap, alpha, None)])
assert ok, msg
# deliberately wrong P
ok, msg = st_witness_verify(F6, F7, [], [(gm([[1, 0], [0, 1]]), alpha, None)])
assert not ok
# derive_st_step recovers a mixing matrix
step = derive_st_step(F6, [], swap, F7)
assert step is not None
a2, g2 = step
got2, _ = st_transform(F6, [], swap, a2, g2)
assert got2 == F7
print("10. st_transform F6->F7, witness verify, derive  OK")

# 11. st_obstruction on the degree-support pair
Fa = [P({XX: 1, (): -1}), P({YY: 1, (): -1}), P({XY: 1, YX: -1})]
Fb = [P({XX: 1, Y: -1}), P({YY: 1, (): -1}), P({XY: 1, YX: -1})]
proof = st_obstruction(Fa, Fb, [])
assert proof is not None and proof["mechanism"] == "degree-support profile"
assert proof["subset"] == [1] and sorted(d for d in proof["dims"]) == [2, 3], proof
assert st_obstruction(Fa, Fa, []) is None
print("11. st_obstruction: degree-support proof (dims 3 vs 2 at {1}); self -> none  OK")

# 12. exhaustive search over F_7
F7f = Fp(7)
ab7 = ab


def P7(terms):
    return FreePoly(ab7, F7f, {w: F7f.from_int(c) for w, c in terms.items() if c % 7})


kj = PresentedAlgebra(ab7, F7f, [P7({XY: 1, YX: -1, YY: -1})])  # Jordan: xy-yx-y^2
res = exhaustive_normal_search(kj, 1)
assert [str(p) for p in res] == ["y"], [str(p) for p in res]
res2 = exhaustive_normal_search(kj, 2)
assert len(res2) == 1 and res2[0] == P7({YY: 1}), [str(p) for p in res2]

k3 = PresentedAlgebra(ab7, F7f, [P7({XY: 1, YX: -3})])  # k_lambda, lam=3
res3 = exhaustive_normal_search(k3, 2)
assert sorted(str(p) for p in res3) == sorted(["x^2", "y^2", "y*x"]), [
    str(p) for p in res3
]

km1 = PresentedAlgebra(ab7, F7f, [P7({XY: 1, YX: 1})])
res4 = exhaustive_normal_search(km1, 2)
# families: alpha*x^2 + beta*y^2 (projective: 8 reps) plus yx
fam = set()
for alpha_ in range(7):
    for beta in range(7):
        if (alpha_, beta) == (0, 0):
            continue
        if (alpha_ != 0 and alpha_ != 1) or (alpha_ == 0 and beta != 1):
            continue
        fam.add(str(P7({XX: alpha_, YY: beta})))
fam.add(str(P7({YX: 1})))
assert {str(p) for p in res4} == fam, ({str(p) for p in res4}, fam)
res5 = exhaustive_normal_search(km1, 2, include_inhomogeneous=True)
# each alpha*x^2+beta*y^2 extends by a constant; yx does not
exp5 = set()
for s in fam - {str(P7({YX: 1}))}:
    pass
for alpha_ in range(7):
    for beta in range(7):
        if (alpha_, beta) == (0, 0):
            continue
        if (alpha_ != 0 and alpha_ != 1) or (alpha_ == 0 and beta != 1):
            continue
        for gm_ in range(7):
            exp5.add(str(P7({XX: alpha_, YY: beta, (): gm_})))
exp5.add(str(P7({YX: 1})))
assert {str(p) for p in res5} == exp5, (len(res5), len(exp5))
print("12. exhaustive search over F_7: k_J d1 {y}, d2 {y^2}; k_3 {x2,y2,yx}; k_-1 families  OK")

# 13. inconclusive (not refusal) for solvable-but-singular homogeneous case
deadA = PresentedAlgebra(ab, QF, [P({XX: 1}), P({XY: 1}), P({YX: 1})])
try:
    normal_check(deadA, P({X: 1}))
    raise AssertionError("expected InconclusiveError")
except InconclusiveError:
    pass
print("13. x in k<x,y>/(x2,xy,yx): inconclusive, not refused  OK")

# 14. the 200-random-residue property on one nu
import random

rng = random.Random(0)
f = P({YX: 3, YY: 1})
cert = normal_check(A1, f)
words_le3 = [()] + [(i,) for i in range(2)] + [
    (i, j) for i in range(2) for j in range(2)
] + [(i, j, k) for i in range(2) for j in range(2) for k in range(2)]
for _ in range(200):
    g = FreePoly(
        ab, QF,
        {w: QF.from_int(rng.randint(-4, 4)) for w in rng.sample(words_le3, 4)},
    )
    lhs = A1.reduce(g * f - f * substitute(g, cert.nu))
    assert lhs.is_zero()
print("14. 200 random residues g*f - f*nu(g) = 0  OK")

print("ALL NORMALITY SMOKE CHECKS PASSED")
