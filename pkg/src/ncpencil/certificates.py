"""Replayable result certificates.

Every analysis command can emit a certificate: a plain dict with a fixed
field order (kind, inputs, verdict, evidence, tool, version, seed,
degree_bound) whose inputs are canonical expression strings and whose
scalars are exact strings.  ``verify_certificate`` replays one: positive
evidence (a cofactor map, a transform chain, a linear functional,
isomorphism images) is checked directly without rerunning any search;
verdicts without standalone evidence are recomputed and compared.
"""

from __future__ import annotations

import json

from . import __version__
from .algebra import PresentedAlgebra
from .fields import parse_scalar
from .findim import SCAlgebra, classify_frob4, frobenius_check, iso_verify
from .freealg import GeneratorMap, substitute
from .grobner import DegreeOverflowError
from .linalg import matrix_rank
from .normality import (
    InconclusiveError,
    exhaustive_normal_search,
    normal_check,
    srns_check,
    st_obstruction,
    st_transform,
)
from .parsing import parse_element, parse_presentation
from .series import parse_ratfun

__all__ = [
    "emit_certificate",
    "import_certificate",
    "make_certificate",
    "verify_certificate",
]

_FIELD_ORDER = ("kind", "inputs", "verdict", "evidence", "tool", "version", "seed", "degree_bound")

_KINDS = (
    "gb",
    "hilbert",
    "normality",
    "normal-search",
    "srns",
    "st-equivalence",
    "st-obstruction",
    "frobenius",
    "classification",
    "iso",
)


def _jsonsafe(value):
    """Coerce nested evidence to JSON-stable types; scalars and polynomials
    become their exact string forms."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonsafe(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonsafe(v) for k, v in value.items()}
    return str(value)


def make_certificate(kind, inputs, verdict, evidence, seed=0, degree_bound=12):
    if kind not in _KINDS:
        raise ValueError(f"unknown certificate kind {kind!r}")
    return {
        "kind": kind,
        "inputs": _jsonsafe(inputs),
        "verdict": _jsonsafe(verdict),
        "evidence": _jsonsafe(evidence),
        "tool": "ncpencil",
        "version": __version__,
        "seed": int(seed),
        "degree_bound": int(degree_bound),
    }


def _render_text(value, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{value}")
    return lines


def emit_certificate(cert, fmt: str = "json") -> bytes:
    """Serialize with stable field order; json output round-trips through
    import_certificate byte for byte."""
    ordered = {k: cert[k] for k in _FIELD_ORDER if k in cert}
    for k in cert:
        if k not in ordered:
            ordered[k] = cert[k]
    if fmt == "json":
        return (json.dumps(ordered, indent=2) + "\n").encode()
    if fmt == "text":
        return ("\n".join(_render_text(ordered)) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def import_certificate(data) -> dict:
    if isinstance(data, bytes):
        data = data.decode()
    cert = json.loads(data)
    if not isinstance(cert, dict):
        raise ValueError("certificate must be a JSON object")
    for key in ("kind", "inputs", "verdict", "evidence"):
        if key not in cert:
            raise ValueError(f"certificate missing field {key!r}")
    if cert["kind"] not in _KINDS:
        raise ValueError(f"unknown certificate kind {cert['kind']!r}")
    return cert


# -- replay helpers ------------------------------------------------------------


def _load_algebra(cert) -> PresentedAlgebra:
    return parse_presentation(cert["inputs"]["presentation"], bound=cert.get("degree_bound", 12))


def _load_elements(A, texts):
    return [parse_element(t, A.alphabet, A.field) for t in texts]


def _load_genmap(A, images: dict) -> GeneratorMap:
    polys = [parse_element(images[name], A.alphabet, A.field) for name in A.alphabet.names]
    return GeneratorMap(A.alphabet, A.field, polys)


def _load_matrix(rows, field):
    return [[parse_scalar(entry, field) for entry in row] for row in rows]


def _verify_gb(cert):
    A = _load_algebra(cert)
    got = [str(g) for g in A.gb.generators]
    want = cert["evidence"]["generators"]
    if got != list(want):
        return False, "recomputed basis differs from the stored generators"
    if bool(A.gb.complete) != bool(cert["evidence"].get("complete", True)):
        return False, "completeness flag differs"
    return True, "basis reproduced"


def _verify_hilbert(cert):
    A = _load_algebra(cert)
    h = A.hilbert()
    want = [int(c) for c in cert["evidence"]["coefficients"]]
    got = list(h.coeffs[: len(want)])
    if got != want:
        return False, f"coefficients differ: {got} vs {want}"
    stored = cert["evidence"].get("rational")
    if stored is not None:
        if h.rational is None:
            return False, "stored rational form but the basis is not complete"
        if parse_ratfun(stored) != h.rational:
            return False, f"rational form differs: {h.rational} vs {stored}"
    return True, "series reproduced"


def _verify_normality(cert):
    A = _load_algebra(cert)
    f = _load_elements(A, [cert["inputs"]["element"]])[0]
    if cert["verdict"] == "normal":
        nu = _load_genmap(A, cert["evidence"]["nu"])
        if not nu.is_invertible():
            return False, "stored cofactor map is singular"
        for i, name in enumerate(A.alphabet.names):
            xi = A.letter(name)
            if not A.reduce(xi * f - f * nu.images[i]).is_zero():
                return False, f"residue for {name} does not vanish"
        for r in A.relations:
            if not A.membership(substitute(r, nu)):
                return False, "cofactor map does not preserve the relations"
        return True, "cofactor map replayed"
    try:
        cert2 = normal_check(A, f)
    except InconclusiveError as e:
        return False, f"replay inconclusive: {e.reason}"
    if cert2.normal:
        return False, "replay found the element normal"
    return True, "refusal reproduced"


def _verify_normal_search(cert):
    A = _load_algebra(cert)
    found = exhaustive_normal_search(
        A,
        int(cert["inputs"]["degree"]),
        include_inhomogeneous=bool(cert["inputs"].get("include_inhomogeneous", False)),
    )
    got = [str(f) for f in found]
    want = list(cert["evidence"]["elements"])
    if got != want:
        return False, f"search returned {len(got)} elements, stored {len(want)}, or order differs"
    return True, "search reproduced"


def _verify_srns(cert):
    A = _load_algebra(cert)
    f, g = _load_elements(A, [cert["inputs"]["first"], cert["inputs"]["second"]])
    out = srns_check(A, f, g)
    if out.ok != (cert["verdict"] == "pass"):
        return False, f"replay verdict {'pass' if out.ok else 'fail'} differs"
    if not out.ok and out.stage != cert["evidence"].get("stage"):
        return False, f"failing stage {out.stage} differs from stored {cert['evidence'].get('stage')}"
    return True, "sequence check reproduced"


def _verify_st_equivalence(cert):
    A = _load_algebra(cert)
    F = _load_elements(A, cert["inputs"]["source"])
    Fp = _load_elements(A, cert["inputs"]["target"])
    H = _load_elements(A, cert["inputs"].get("relations", []))
    cur, curH = list(F), list(H)
    for idx, step in enumerate(cert["evidence"]["chain"]):
        P = _load_genmap(A, step["phi"])
        alpha = _load_matrix(step["alpha"], A.field)
        gamma = _load_matrix(step["gamma"], A.field) if step.get("gamma") else None
        try:
            cur, curH = st_transform(cur, curH, P, alpha, gamma)
        except ValueError as e:
            return False, f"step {idx + 1} invalid: {e}"
    from .normality import _in_span

    for i, (got, want) in enumerate(zip(cur, Fp)):
        if not _in_span(got - want, curH, A.field):
            return False, f"entry {i + 1} of the folded chain differs from the target"
    return True, "chain replayed"


def _verify_st_obstruction(cert):
    A = _load_algebra(cert)
    F = _load_elements(A, cert["inputs"]["source"])
    Fp = _load_elements(A, cert["inputs"]["target"])
    H = _load_elements(A, cert["inputs"].get("relations", []))
    proof = st_obstruction(F, Fp, H)
    if proof is None:
        return False, "replay found no obstruction"
    if proof["mechanism"] != cert["evidence"].get("mechanism"):
        return False, f"mechanism {proof['mechanism']} differs from stored"
    return True, "obstruction reproduced"


def _load_sc(data) -> SCAlgebra:
    return SCAlgebra.from_dict(data)


def _verify_frobenius(cert):
    R = _load_sc(cert["inputs"]["algebra"])
    if cert["verdict"] == "frobenius":
        lam = [parse_scalar(s, R.field) for s in cert["evidence"]["functional"]]
        n = R.dim
        gram = [
            [
                sum(
                    (lam[k] * R.consts[i][j][k] for k in range(n)),
                    R.field.zero(),
                )
                for j in range(n)
            ]
            for i in range(n)
        ]
        if matrix_rank(gram, R.field) != n:
            return False, "stored functional is degenerate"
        return True, "functional replayed"
    out = frobenius_check(R)
    if out.frobenius:
        return False, "replay found a nondegenerate functional"
    return True, "refusal reproduced"


def _verify_classification(cert):
    R = _load_sc(cert["inputs"]["algebra"])
    label = classify_frob4(R).label
    if label != cert["verdict"]:
        return False, f"replay labels the algebra {label}, stored {cert['verdict']}"
    return True, "label reproduced"


def _verify_iso(cert):
    R = _load_sc(cert["inputs"]["source"])
    Rp = _load_sc(cert["inputs"]["target"])
    images = {
        label: [parse_scalar(s, Rp.field) for s in coords]
        for label, coords in cert["evidence"]["images"].items()
    }
    if not iso_verify(R, Rp, images):
        return False, "stored images do not define an isomorphism"
    return True, "isomorphism replayed"


_VERIFIERS = {
    "gb": _verify_gb,
    "hilbert": _verify_hilbert,
    "normality": _verify_normality,
    "normal-search": _verify_normal_search,
    "srns": _verify_srns,
    "st-equivalence": _verify_st_equivalence,
    "st-obstruction": _verify_st_obstruction,
    "frobenius": _verify_frobenius,
    "classification": _verify_classification,
    "iso": _verify_iso,
}


def verify_certificate(cert) -> tuple[bool, str]:
    """Replay a certificate.  Returns (ok, message)."""
    kind = cert.get("kind")
    if kind not in _VERIFIERS:
        return False, f"unknown certificate kind {kind!r}"
    try:
        return _VERIFIERS[kind](cert)
    except (ValueError, KeyError, DegreeOverflowError) as e:
        return False, f"replay failed: {e}"
