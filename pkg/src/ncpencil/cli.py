"""Command-line surface.

Every command reads presentation files (or structure-constant JSON where
noted), honors --degree-bound/--field/--format/--seed, and exits with:
0 success or match, 1 mismatch or refusal, 2 usage error, 3 inconclusive
(bound-limited or needs a field extension).  With --format json the
analysis commands print a replayable certificate; verify-cert replays one.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import (
    classify_relation,
    clifford_C,
    dehomogenized_algebra,
    find_regular_linear,
    homogenized_algebra,
    quadratic_dual,
)
from .certificates import (
    emit_certificate,
    import_certificate,
    make_certificate,
    verify_certificate,
)
from .fields import NeedsFieldExtensionError, parse_field, parse_scalar
from .findim import (
    SCAlgebra,
    classify_frob4,
    frobenius_check,
    from_quotient,
    iso_verify,
)
from .grobner import DegreeOverflowError
from .normality import (
    InconclusiveError,
    exhaustive_normal_search,
    normal_check,
    srns_check,
)
from .parsing import ParseError, parse_element, parse_presentation, presentation_text
from .tables import render_report, reproduce_table

__all__ = ["main"]

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


class CommandError(Exception):
    """Error with a chosen exit code; message goes to stderr."""

    def __init__(self, message, code=EXIT_USAGE):
        super().__init__(message)
        self.code = code


# -- input helpers --------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise CommandError(f"cannot read {path}: {e.strerror or e}") from None


def _default_field(args):
    try:
        return parse_field(args.field)
    except ValueError as e:
        raise CommandError(str(e)) from None


def _parse_pres(text: str, args, where: str = "input"):
    try:
        return parse_presentation(
            text, bound=args.degree_bound, default_field=_default_field(args)
        )
    except ParseError as e:
        raise CommandError(f"{where}: {e}") from None


def _parse_el(A, expr: str):
    try:
        return parse_element(expr, A.alphabet, A.field)
    except ParseError as e:
        raise CommandError(f"bad element {expr!r}: {e}") from None


def _load_structure(path: str, args) -> SCAlgebra:
    """Structure constants from a presentation file or a JSON export."""
    text = _read_text(path)
    if text.lstrip()[:1] == "{":
        try:
            return SCAlgebra.from_dict(json.loads(text))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise CommandError(f"{path}: bad structure constants: {e}") from None
    A = _parse_pres(text, args, where=path)
    try:
        return from_quotient(A)
    except ValueError as e:
        code = EXIT_INCONCLUSIVE if "complete" in str(e) else EXIT_MISMATCH
        raise CommandError(str(e), code) from None


# -- output helpers -------------------------------------------------------------


def _print_json(obj):
    print(json.dumps(obj, indent=2))


def _emit_cert(cert):
    sys.stdout.buffer.write(emit_certificate(cert, "json"))
    sys.stdout.buffer.flush()


def _word_str(alphabet, word) -> str:
    if not word:
        return "1"
    return "*".join(alphabet.names[i] for i in word)


def _sc_lines(R: SCAlgebra):
    lines = [
        f"dimension: {R.dim}",
        f"field: {R.field}",
        f"basis: {' '.join(R.labels)}",
    ]
    unit = " + ".join(
        f"{s}*{lab}" for s, lab in zip(R.unit, R.labels) if not s.is_zero()
    )
    lines.append(f"unit: {unit or '0'}")
    for i in range(R.dim):
        for j in range(R.dim):
            terms = [
                f"{s}*{lab}"
                for s, lab in zip(R.consts[i][j], R.labels)
                if not s.is_zero()
            ]
            if terms:
                lines.append(f"{R.labels[i]} * {R.labels[j]} = {' + '.join(terms)}")
    return lines


def _nu_images(A, nu):
    return {name: str(img) for name, img in zip(A.alphabet.names, nu.images)}


# -- commands -------------------------------------------------------------------


def cmd_parse(args):
    A = _parse_pres(_read_text(args.file), args, where=args.file)
    if args.format == "json":
        _print_json(
            {
                "field": str(A.field),
                "generators": [
                    {"name": n, "weight": w}
                    for n, w in zip(A.alphabet.names, A.alphabet.weights)
                ],
                "graded": A.graded,
                "relations": [str(r) for r in A.relations],
            }
        )
    else:
        print(presentation_text(A), end="")
    return EXIT_OK


def cmd_gb(args):
    text = _read_text(args.file)
    A = _parse_pres(text, args, where=args.file)
    gb = A.gb
    cert = make_certificate(
        "gb",
        {"presentation": text},
        "complete" if gb.complete else "truncated",
        {
            "generators": [str(g) for g in gb.generators],
            "leading_words": [_word_str(A.alphabet, w) for w in gb.leading_words],
            "complete": gb.complete,
        },
        seed=args.seed,
        degree_bound=args.degree_bound,
    )
    if args.format == "json":
        _emit_cert(cert)
    else:
        print(f"complete: {'yes' if gb.complete else f'no (bound {gb.bound})'}")
        for g in gb.generators:
            print(f"  {g}")
    return EXIT_OK if gb.complete else EXIT_INCONCLUSIVE


def cmd_hilbert(args):
    text = _read_text(args.file)
    A = _parse_pres(text, args, where=args.file)
    h = A.hilbert()
    rational = None if h.rational is None else str(h.rational)
    coeffs = list(h.coeffs[: args.degree_bound + 1])
    cert = make_certificate(
        "hilbert",
        {"presentation": text},
        "exact" if rational else "truncated",
        {"coefficients": coeffs, "rational": rational},
        seed=args.seed,
        degree_bound=args.degree_bound,
    )
    if args.format == "json":
        _emit_cert(cert)
    else:
        print("coefficients: " + " ".join(str(c) for c in coeffs))
        if rational:
            print(f"series: {rational}")
        else:
            print(f"series: unknown (basis truncated at degree {A.bound})")
    return EXIT_OK if rational else EXIT_INCONCLUSIVE


def cmd_classify_rel(args):
    A = _parse_pres(_read_text(args.file), args, where=args.file)
    if len(A.relations) != 1:
        raise CommandError("classification needs exactly one relation")
    try:
        out = classify_relation(A.relations[0])
    except ValueError as e:
        raise CommandError(str(e)) from None
    witness = (
        None
        if out.witness is None
        else [[str(s) for s in row] for row in out.witness]
    )
    info = {
        "label": out.label,
        "lambda": None if out.lam is None else str(out.lam),
        "trace": None if out.trace is None else str(out.trace),
        "witness": witness,
    }
    if args.format == "json":
        _print_json(info)
    else:
        print(f"class: {out.label}")
        if out.lam is not None:
            print(f"scale: {out.lam}")
        if out.trace is not None:
            print(f"scale trace: {out.trace}")
        if witness is not None:
            print(f"basis change: {witness}")
    return EXIT_OK


def cmd_dual(args):
    A = _parse_pres(_read_text(args.file), args, where=args.file)
    if not A.is_quadratic():
        raise CommandError("dual needs a quadratic presentation on weight-1 letters")
    D = quadratic_dual(A)
    if args.format == "json":
        _print_json({"presentation": presentation_text(D)})
    else:
        print(presentation_text(D), end="")
    return EXIT_OK


def cmd_clifford(args):
    A = _parse_pres(_read_text(args.file), args, where=args.file)
    try:
        R = clifford_C(A)
    except ValueError as e:
        raise CommandError(str(e)) from None
    if args.format == "json":
        _print_json(R.to_dict())
    else:
        print("\n".join(_sc_lines(R)))
    return EXIT_OK


def cmd_normal_check(args, map_only=False):
    text = _read_text(args.file)
    A = _parse_pres(text, args, where=args.file)
    f = _parse_el(A, args.element)
    try:
        cert = normal_check(A, f)
    except ValueError as e:
        raise CommandError(str(e)) from None
    if cert.normal:
        out = make_certificate(
            "normality",
            {"presentation": text, "element": args.element},
            "normal",
            {"nu": _nu_images(A, cert.nu)},
            seed=args.seed,
            degree_bound=args.degree_bound,
        )
    else:
        out = make_certificate(
            "normality",
            {"presentation": text, "element": args.element},
            "not normal",
            {"reason": cert.reason},
            seed=args.seed,
            degree_bound=args.degree_bound,
        )
    if args.format == "json":
        _emit_cert(out)
    elif cert.normal:
        if not map_only:
            print("normal: yes")
        for name, img in _nu_images(A, cert.nu).items():
            print(f"  {name} -> {img}")
    else:
        print(f"normal: no ({cert.reason})")
    return EXIT_OK if cert.normal else EXIT_MISMATCH


def cmd_nu(args):
    return cmd_normal_check(args, map_only=True)


def cmd_normal_search(args):
    text = _read_text(args.file)
    A = _parse_pres(text, args, where=args.file)
    try:
        found = exhaustive_normal_search(
            A, args.degree, include_inhomogeneous=args.inhomogeneous
        )
    except ValueError as e:
        code = EXIT_INCONCLUSIVE if "too large" in str(e) else EXIT_USAGE
        raise CommandError(str(e), code) from None
    elements = [str(f) for f in found]
    cert = make_certificate(
        "normal-search",
        {
            "presentation": text,
            "degree": args.degree,
            "include_inhomogeneous": args.inhomogeneous,
        },
        f"{len(elements)} found",
        {"elements": elements},
        seed=args.seed,
        degree_bound=args.degree_bound,
    )
    if args.format == "json":
        _emit_cert(cert)
    else:
        print(f"found {len(elements)} normal element(s) of top degree {args.degree}")
        for el in elements:
            print(f"  {el}")
    return EXIT_OK


def cmd_srns_check(args):
    text = _read_text(args.file)
    A = _parse_pres(text, args, where=args.file)
    f = _parse_el(A, args.first)
    g = _parse_el(A, args.second)
    out = srns_check(A, f, g)
    evidence = {"stage": out.stage}
    evidence.update(out.evidence)
    cert = make_certificate(
        "srns",
        {"presentation": text, "first": args.first, "second": args.second},
        "pass" if out.ok else "fail",
        evidence,
        seed=args.seed,
        degree_bound=args.degree_bound,
    )
    if args.format == "json":
        _emit_cert(cert)
    elif out.ok:
        print("sequence: pass")
    else:
        print(f"sequence: fail at {out.stage}")
    return EXIT_OK if out.ok else EXIT_MISMATCH


def _chain_cert(chain, alphabet, args):
    try:
        pres = f"field {chain['field']}\ngens {alphabet}\n"
        return make_certificate(
            "st-equivalence",
            {
                "presentation": pres,
                "source": chain["source"],
                "target": chain["target"],
                "relations": chain.get("relations", []),
            },
            "equivalent",
            {"chain": chain["steps"]},
            seed=args.seed,
            degree_bound=args.degree_bound,
        )
    except KeyError as e:
        raise CommandError(f"chain file missing key {e}") from None


def cmd_st_verify(args):
    try:
        data = json.loads(_read_text(args.file))
    except json.JSONDecodeError as e:
        raise CommandError(f"{args.file}: {e}") from None
    if not isinstance(data, dict):
        raise CommandError("chain file must be a JSON object")
    if "kind" in data:
        certs = [("certificate", import_certificate(json.dumps(data)))]
    elif "chains" in data:
        alphabet = data.get("alphabet", "x y")
        certs = [
            (c.get("name", f"chain {i + 1}"), _chain_cert(c, c.get("alphabet", alphabet), args))
            for i, c in enumerate(data["chains"])
        ]
    else:
        certs = [(data.get("name", "chain"), _chain_cert(data, data.get("alphabet", "x y"), args))]
    results = []
    for name, cert in certs:
        ok, msg = verify_certificate(cert)
        results.append({"name": name, "ok": ok, "message": msg})
    if args.format == "json":
        _print_json({"results": results})
    else:
        for r in results:
            print(f"[{'ok ' if r['ok'] else 'FAIL'}] {r['name']}: {r['message']}")
    return EXIT_OK if all(r["ok"] for r in results) else EXIT_MISMATCH


def cmd_homogenize(args):
    A = _parse_pres(_read_text(args.file), args, where=args.file)
    try:
        B = homogenized_algebra(A.relations, z_name=args.var, bound=args.degree_bound)
    except ValueError as e:
        raise CommandError(str(e)) from None
    if args.format == "json":
        _print_json({"presentation": presentation_text(B)})
    else:
        print(presentation_text(B), end="")
    return EXIT_OK


def cmd_dehomogenize(args):
    B = _parse_pres(_read_text(args.file), args, where=args.file)
    if args.var is not None:
        if args.var not in B.alphabet.names:
            raise CommandError(f"unknown generator {args.var!r}")
        z = B.letter(args.var)
    else:
        try:
            z, _ = find_regular_linear(B, seed=args.seed)
        except RuntimeError as e:
            raise CommandError(str(e), EXIT_INCONCLUSIVE) from None
    try:
        D = dehomogenized_algebra(B, z, bound=args.degree_bound)
    except ValueError as e:
        raise CommandError(str(e)) from None
    print(f"setting {z} = 1", file=sys.stderr)
    if args.format == "json":
        _print_json({"form": str(z), "presentation": presentation_text(D)})
    else:
        print(presentation_text(D), end="")
    return EXIT_OK


def cmd_findim(args):
    R = _load_structure(args.file, args)
    if args.format == "json":
        _print_json(R.to_dict())
    else:
        print("\n".join(_sc_lines(R)))
    return EXIT_OK


def cmd_frobenius(args):
    R = _load_structure(args.file, args)
    out = frobenius_check(R)
    if out:
        cert = make_certificate(
            "frobenius",
            {"algebra": R.to_dict()},
            "frobenius",
            {"functional": [str(s) for s in out.functional]},
            seed=args.seed,
            degree_bound=args.degree_bound,
        )
    else:
        cert = make_certificate(
            "frobenius",
            {"algebra": R.to_dict()},
            "refused",
            {"reason": out.reason},
            seed=args.seed,
            degree_bound=args.degree_bound,
        )
    if args.format == "json":
        _emit_cert(cert)
    elif out:
        functional = ", ".join(
            f"{lab} -> {s}" for lab, s in zip(R.labels, out.functional)
        )
        print(f"frobenius: yes ({functional})")
    else:
        print(f"frobenius: no ({out.reason})")
    return EXIT_OK if out else EXIT_MISMATCH


def cmd_classify4(args):
    R = _load_structure(args.file, args)
    try:
        lab = classify_frob4(R)
    except NeedsFieldExtensionError as e:
        raise CommandError(str(e), EXIT_INCONCLUSIVE) from None
    except ValueError as e:
        raise CommandError(str(e), EXIT_MISMATCH) from None
    cert = make_certificate(
        "classification",
        {"algebra": R.to_dict()},
        lab.label,
        {"kind": lab.kind, "key": None if lab.key is None else str(lab.key)},
        seed=args.seed,
        degree_bound=args.degree_bound,
    )
    if args.format == "json":
        _emit_cert(cert)
    else:
        print(lab.label)
    return EXIT_OK


def cmd_iso_verify(args):
    R = _load_structure(args.source, args)
    Rp = _load_structure(args.target, args)
    try:
        raw = json.loads(_read_text(args.images))
        images = {
            label: [parse_scalar(s, Rp.field) for s in coords]
            for label, coords in raw.items()
        }
    except (json.JSONDecodeError, AttributeError, TypeError, ValueError) as e:
        raise CommandError(f"bad images file: {e}") from None
    try:
        ok = iso_verify(R, Rp, images)
        reason = "" if ok else "images do not define an isomorphism"
    except ValueError as e:
        ok, reason = False, str(e)
    cert = make_certificate(
        "iso",
        {"source": R.to_dict(), "target": Rp.to_dict()},
        "isomorphic" if ok else "rejected",
        {"images": raw, "reason": reason} if reason else {"images": raw},
        seed=args.seed,
        degree_bound=args.degree_bound,
    )
    if args.format == "json":
        _emit_cert(cert)
    else:
        print(f"isomorphism: {'confirmed' if ok else f'rejected ({reason})'}")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_reproduce(args):
    try:
        report = reproduce_table(args.table, bound=args.degree_bound)
    except ValueError as e:
        raise CommandError(str(e)) from None
    except FileNotFoundError as e:
        raise CommandError(str(e)) from None
    if args.format == "json":
        _print_json(report)
    else:
        print(render_report(report), end="")
    return EXIT_OK if report["ok"] else EXIT_MISMATCH


def cmd_verify_cert(args):
    try:
        cert = import_certificate(_read_text(args.file))
    except ValueError as e:
        raise CommandError(f"{args.file}: {e}") from None
    ok, msg = verify_certificate(cert)
    if args.format == "json":
        _print_json({"ok": ok, "message": msg})
    else:
        print(f"{'verified' if ok else 'REJECTED'}: {msg}")
    return EXIT_OK if ok else EXIT_MISMATCH


# -- parser ----------------------------------------------------------------------


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--degree-bound", type=int, default=12, metavar="N",
        help="rewriting/series bound (default 12)",
    )
    common.add_argument(
        "--field", default="Q", metavar="F",
        help="field for presentations without a field line (default Q)",
    )
    common.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="output format (default text)",
    )
    common.add_argument("--seed", type=int, default=0, help="search seed (default 0)")

    p = argparse.ArgumentParser(
        prog="ncpencil",
        description="Quadratic algebra pencils: rewriting bases, Hilbert "
        "series, normal elements, sequence checks, and dimension-4 "
        "classification.",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, helptext):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.set_defaults(func=fn)
        return sp

    sp = add("parse", cmd_parse, "parse a presentation and echo it back")
    sp.add_argument("file", help="presentation file (- for stdin)")

    sp = add("gb", cmd_gb, "complete the rewriting basis")
    sp.add_argument("file")

    sp = add("hilbert", cmd_hilbert, "Hilbert series of a presentation")
    sp.add_argument("file")

    sp = add("classify-rel", cmd_classify_rel, "classify a single quadratic relation")
    sp.add_argument("file")

    sp = add("dual", cmd_dual, "quadratic dual presentation")
    sp.add_argument("file")

    sp = add("clifford", cmd_clifford, "degree-0 localized algebra of the dual")
    sp.add_argument("file")

    sp = add("normal-check", cmd_normal_check, "certify one element normal")
    sp.add_argument("file")
    sp.add_argument("-e", "--element", required=True, help="element expression")

    sp = add("nu", cmd_nu, "print the cofactor map of a normal element")
    sp.add_argument("file")
    sp.add_argument("-e", "--element", required=True)

    sp = add("normal-search", cmd_normal_search, "exhaust normal elements over F(p)")
    sp.add_argument("file")
    sp.add_argument("-d", "--degree", type=int, required=True, help="top degree")
    sp.add_argument(
        "--inhomogeneous", action="store_true", help="include lower-order terms"
    )

    sp = add("srns-check", cmd_srns_check, "certify a regular normal sequence of two")
    sp.add_argument("file")
    sp.add_argument("-f", "--first", required=True)
    sp.add_argument("-g", "--second", required=True)

    sp = add("st-verify", cmd_st_verify, "replay a transform chain file")
    sp.add_argument("file", help="chain JSON or st-equivalence certificate")

    sp = add("homogenize", cmd_homogenize, "homogenize a filtered presentation")
    sp.add_argument("file")
    sp.add_argument("--var", default="z", help="name of the new central letter")

    sp = add("dehomogenize", cmd_dehomogenize, "set a regular linear form to 1")
    sp.add_argument("file")
    sp.add_argument("--var", default=None, help="letter to use (default: search)")

    sp = add("findim", cmd_findim, "structure constants of a finite quotient")
    sp.add_argument("file", help="presentation file or structure-constant JSON")

    sp = add("frobenius", cmd_frobenius, "test for a nondegenerate functional")
    sp.add_argument("file", help="presentation file or structure-constant JSON")

    sp = add("classify4", cmd_classify4, "label a 4-dimensional Frobenius algebra")
    sp.add_argument("file", help="presentation file or structure-constant JSON")

    sp = add("iso-verify", cmd_iso_verify, "replay isomorphism images")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--images", required=True, help="JSON file of generator images")

    sp = add("reproduce", cmd_reproduce, "recompute a golden table")
    sp.add_argument("--table", type=int, required=True, choices=(1, 2, 3, 4, 5))

    sp = add("verify-cert", cmd_verify_cert, "replay a certificate")
    sp.add_argument("file")

    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NeedsFieldExtensionError, InconclusiveError, DegreeOverflowError) as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (ValueError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
