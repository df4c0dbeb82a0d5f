"""Command-line front end.

    catalg validate DOC
    catalg mul DOC LEFT RIGHT
    catalg mobius DOC
    catalg state-check DOC
    catalg gns DOC [--verify N]
    catalg demo

Exit status is 0 on success, 1 when a validation or verification fails and
2 on malformed input or a library error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

import numpy as np

from . import __version__
from . import algebra as alg
from .demo import run_demo
from .document import CatSpecDocument, load_document
from .errors import CatAlgebraError
from .fincat import validate_category, validate_dagger
from .gns import build_pre_hilbert, build_semi_hilbert, verify_gns, verify_star_representation
from .matrixkit import hermitian_eigen
from .moebius import invert, zeta
from .states import check_state, probability_space

OK, FAILED, ERROR = 0, 1, 2


class CommandFailed(Exception):
    pass


def _fmt(rig, v):
    return rig.format(v)


def _text(v):
    if isinstance(v, list):
        return "[" + ", ".join(_text(x) for x in v) + "]"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _labeled(elem):
    return {elem.category.arrow_labels[c]: _fmt(elem.rig, v) for c, v in enumerate(elem.coeffs)}


def _matrix_json(rig, M):
    return [[_fmt(rig, M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


def _complex_json(arr):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.atleast_2d(arr)]


def _require_valid(doc: CatSpecDocument):
    rep = validate_category(doc.category)
    if not rep.ok:
        raise CommandFailed(f"category is not valid:\n{rep}")


def _require_dagger(doc: CatSpecDocument):
    if doc.dagger is None:
        raise CommandFailed("document has no 'dagger'")
    rep = validate_dagger(doc.category, doc.dagger)
    if not rep.ok:
        raise CommandFailed(f"dagger is not valid:\n{rep}")
    return doc.dagger


def cmd_validate(doc, args):
    cat_rep = validate_category(doc.category)
    out = {"command": "validate", "rig": doc.rig.name,
           "objects": doc.category.object_count, "arrows": doc.category.arrow_count,
           "category": {"valid": cat_rep.ok, "notes": cat_rep.notes,
                        "issues": [{"kind": i.kind, "message": i.message,
                                    "witness": [doc.category.arrow_labels[x] if i.kind != "identity" else x
                                                for x in i.witness]} for i in cat_rep.issues]}}
    lines = [f"category: {doc.category.object_count} objects, {doc.category.arrow_count} arrows",
             f"category: {cat_rep}"]
    ok = cat_rep.ok
    if doc.dagger is not None and cat_rep.ok:
        d_rep = validate_dagger(doc.category, doc.dagger)
        out["dagger"] = {"valid": d_rep.ok, "issues": [i.message for i in d_rep.issues]}
        lines.append(f"dagger: {d_rep}")
        ok &= d_rep.ok
    return ok, out, lines


def cmd_mul(doc, args):
    _require_valid(doc)
    for name in (args.left, args.right):
        if name not in doc.elements:
            raise CommandFailed(f"no element named {name!r} (have: {', '.join(doc.elements) or 'none'})")
    prod = alg.convolve(doc.elements[args.left], doc.elements[args.right])
    table = _labeled(prod)
    lines = [f"{args.left} * {args.right} ="] + [f"  {k:>12s}  {_text(v)}" for k, v in table.items()]
    return True, {"command": "mul", "rig": doc.rig.name, "left": args.left, "right": args.right,
                  "product": table}, lines


def cmd_mobius(doc, args):
    _require_valid(doc)
    cert = invert(zeta(doc.category, doc.rig))
    table = _labeled(cert.inverse)
    status = "residuals zero" if cert.valid else f"residuals NONZERO (max {cert.max_residual:.3e})"
    lines = ["Moebius function mu:"] + [f"  {k:>12s}  {_text(v)}" for k, v in table.items()]
    lines.append(f"certificate: mu*zeta = zeta*mu = unit, {status}")
    return cert.valid, {"command": "mobius", "rig": doc.rig.name, "mu": table,
                        "residuals_zero": cert.valid, "max_residual": cert.max_residual}, lines


def cmd_state_check(doc, args):
    _require_valid(doc)
    dag = _require_dagger(doc)
    if doc.functional is None:
        raise CommandFailed("document has no 'functional'")
    cert = check_state(doc.functional, dag, args.tol)
    rig = doc.rig
    out = {"command": "state-check", "rig": rig.name, "verdict": "state" if cert.is_state else "not_state",
           "reason": cert.reason}
    lines = [f"verdict: {cert.verdict}"]
    if cert.min_eigenvalue is not None:
        out["min_eigenvalue"] = cert.min_eigenvalue
        out["gram_spectrum"] = [float(x) for x in cert.eigenvalues]
        lines.append(f"minimal gram eigenvalue: {cert.min_eigenvalue!r}")
    if cert.witness is not None:
        w = cert.witness
        if isinstance(w, tuple):
            w = [rig.format(x) if rig.exact else [complex(x).real, complex(x).imag] for x in w]
        elif not isinstance(w, str):
            w = rig.format(w)
        out["witness"] = w
        lines.append(f"witness: {_text(w)}")
    return cert.is_state, out, lines


def cmd_gns(doc, args):
    _require_valid(doc)
    dag = _require_dagger(doc)
    if doc.functional is None:
        raise CommandFailed("document has no 'functional'")
    rig, cat = doc.rig, doc.category
    space = probability_space(doc.functional, dag, args.tol)
    g = build_semi_hilbert(space)
    rng = random.Random(args.seed)
    ok = True
    out = {"command": "gns", "rig": rig.name, "dimension": g.dim,
           "gram": _matrix_json(rig, g.gram)}
    lines = [f"semi-Hilbert module: dimension {g.dim} (arrow basis)"]
    if rig.name in ("complex", "rational", "integer"):
        spectrum = hermitian_eigen(g.gram.to_numpy()).values if g.dim else np.zeros(0)
        out["gram_spectrum"] = [float(x) for x in spectrum]
        lines.append("gram spectrum: " + _text([float(x) for x in spectrum]))
    if rig.name == "complex":
        p = build_pre_hilbert(g, args.tol)
        out["quotient_dim"] = p.quotient_dim
        out["kernel_invariance"] = p.kernel_invariance
        out["representation"] = {cat.arrow_labels[c]: _complex_json(np.round(r, 12) + 0.0)
                                 for c, r in enumerate(p.rep_q)}
        lines.append(f"quotient dimension: {p.quotient_dim}")
        for c, r in enumerate(p.rep_q):
            lines.append(f"  pi({cat.arrow_labels[c]}) = {_text(_complex_json(np.round(r, 12) + 0.0))}")
    else:
        out["representation"] = {cat.arrow_labels[c]: _matrix_json(rig, r) for c, r in enumerate(g.rep)}
        for c, r in enumerate(g.rep):
            lines.append(f"  pi({cat.arrow_labels[c]}) = {_text(_matrix_json(rig, r))}")
    if args.verify:
        rep = verify_gns(g, args.verify, args.tol, rng)
        checks = list(rep.checks)
        if rig.name == "complex":
            checks += verify_star_representation(p, args.verify, max(args.tol, 1e-8), rng).checks
        ok = all(c.passed for c in checks)
        out["verification"] = [{"check": c.name, "trials": c.trials, "max_residual": c.max_residual,
                                "passed": c.passed} for c in checks]
        lines.append(f"verification ({args.verify} random trials, seed {args.seed}):")
        lines += [f"  {c.name:<28s} max residual {c.max_residual:.3e}  {'pass' if c.passed else 'FAIL'}"
                  for c in checks]
    return ok, out, lines


def cmd_demo(args):
    results = run_demo(args.seed, args.verify, args.tol)
    ok = all(r.passed for r in results)
    lines = []
    for r in results:
        lines.append(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}")
        lines += [f"    {x}" for x in r.lines]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} catalog entries passed")
    out = {"command": "demo", "seed": args.seed,
           "results": [{"name": r.name, "passed": r.passed, "details": r.lines, "data": r.data}
                       for r in results], "passed": ok}
    return ok, out, lines


COMMANDS = {
    "validate": cmd_validate,
    "mul": cmd_mul,
    "mobius": cmd_mobius,
    "state-check": cmd_state_check,
    "gns": cmd_gns,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tol", type=float, default=1e-9, help="numerical tolerance (default 1e-9)")
    common.add_argument("--verify", type=int, default=100, metavar="N",
                        help="randomized identity checks (default 100)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    parser = argparse.ArgumentParser(prog="catalg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [("validate", "check category and dagger axioms"),
                        ("mobius", "invert the zeta element"),
                        ("state-check", "decide whether the functional is a state"),
                        ("gns", "build the GNS representation of the functional")]:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("document")
    p = sub.add_parser("mul", parents=[common], help="convolve two named elements")
    p.add_argument("document")
    p.add_argument("left")
    p.add_argument("right")
    sub.add_parser("demo", parents=[common], help="run the built-in catalog")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed < 0:
        print("error: --seed must be non-negative", file=sys.stderr)
        return ERROR
    try:
        if args.command == "demo":
            ok, out, lines = cmd_demo(args)
        else:
            doc = load_document(args.document)
            ok, out, lines = COMMANDS[args.command](doc, args)
    except CommandFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    except (CatAlgebraError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return ERROR
    if args.json:
        out["ok"] = bool(ok)
        print(json.dumps(out, indent=2))
    else:
        print("\n".join(lines))
    return OK if ok else FAILED


if __name__ == "__main__":
    sys.exit(main())
