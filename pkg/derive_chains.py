"""Scratch oracle: derive the transform chains between the filtered-sequence
families, verify each fold lands exactly on the target, and dump the frozen
JSON for the golden directory.  Delete after freezing."""

import json

from ncpencil.fields import Q, Qsqrt
from ncpencil.freealg import Alphabet, FreePoly, GeneratorMap
from ncpencil.normality import derive_st_step, st_transform, st_witness_verify
from ncpencil.parsing import parse_element

ab = Alphabet([("x", 1), ("y", 1)])


def elems(field, texts):
    return [parse_element(t, ab, field) for t in texts]


def phi_map(field, images):
    return GeneratorMap(field=field, alphabet=ab, images=elems(field, images))


def derive_chain(name, field, source, target, steps):
    """steps: list of (phi images dict, intermediate target texts)."""
    F = elems(field, source)
    chain = []
    chain_json = []
    cur = F
    for images, inter in steps:
        P = phi_map(field, [images["x"], images["y"]])
        tgt = elems(field, inter)
        out = derive_st_step(cur, [], P, tgt)
        assert out is not None, f"{name}: no solution for step with phi {images}"
        alpha, gamma = out
        cur, _ = st_transform(cur, [], P, alpha, gamma)
        assert [str(p) for p in cur] == [str(t) for t in tgt], (
            name, [str(p) for p in cur], inter)
        chain.append((P, alpha, gamma))
        chain_json.append({
            "phi": {"x": images["x"], "y": images["y"]},
            "alpha": [[str(c) for c in row] for row in alpha],
            "gamma": None,
        })
    ok, msg = st_witness_verify(F, elems(field, target), [], chain)
    assert ok, (name, msg)
    print(f"{name}: {len(chain)} step(s) verified")
    return {
        "name": name,
        "field": str(field),
        "source": list(source),
        "target": list(target),
        "steps": chain_json,
    }


H = "x*y + y*x"
QI = Qsqrt(-1)
Q2 = Qsqrt(2)

chains = []

chains.append(derive_chain(
    "F4-F9", Q,
    ["x^2", "y^2", H], ["x^2 + y^2", "x^2", H],
    [({"x": "x", "y": "y"}, ["x^2 + y^2", "x^2", H])],
))

chains.append(derive_chain(
    "F6-F7", Q,
    ["x^2", "y^2 + 1", H], ["x^2 + 1", "y^2", H],
    [({"x": "y", "y": "x"}, ["x^2 + 1", "y^2", H])],
))

chains.append(derive_chain(
    "F7-F13(1)", Q,
    ["x^2 + 1", "y^2", H], ["x^2 + y^2 + 1", "x^2 + 1", H],
    [({"x": "x", "y": "y"}, ["x^2 + y^2 + 1", "x^2 + 1", H])],
))

chains.append(derive_chain(
    "F6-F13(0)", Q,
    ["x^2", "y^2 + 1", H], ["x^2 + y^2 + 1", "x^2", H],
    [({"x": "x", "y": "y"}, ["x^2 + y^2 + 1", "x^2", H])],
))

chains.append(derive_chain(
    "F8-F10", QI,
    ["x^2 + 1", "y^2 + 1", H], ["x^2 + y^2", "x^2 + 1", H],
    [({"x": "x", "y": "sqrt(-1)*y"}, ["x^2 + y^2", "x^2 + 1", H])],
))

chains.append(derive_chain(
    "F14(1/2)-F8", Q2,
    ["x^2 + y^2 + 1", "x^2 + 1/2", H], ["x^2 + 1", "y^2 + 1", H],
    [
        ({"x": "x", "y": "y"}, ["x^2 + 1/2", "y^2 + 1/2", H]),
        ({"x": "(sqrt(2)/2)*x", "y": "(sqrt(2)/2)*y"}, ["x^2 + 1", "y^2 + 1", H]),
    ],
))

chains.append(derive_chain(
    "F11(3)-F2(2)", Q,
    ["x^2 + y^2", "x^2 + 3*y*x", H], ["x^2", "y^2", "x*y - 2*y*x"],
    [
        ({"x": "x + y", "y": "x - y"}, ["x^2", "y^2", "x*y - 1/2*y*x"]),
        ({"x": "y", "y": "x"}, ["x^2", "y^2", "x*y - 2*y*x"]),
    ],
))

blob = json.dumps({"alphabet": "x y", "chains": chains}, indent=2) + "\n"
print(blob)
with open("/root/pkg/chains_frozen.json", "w") as fh:
    fh.write(blob)
print("written to /root/pkg/chains_frozen.json")
