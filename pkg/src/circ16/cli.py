"""Command-line front end: one JSON document per invocation on stdout.

Exit codes: 0 success/member, 1 non-member or failed check,
2 bad input/indeterminate/budget, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import search, selftest, witness
from .circulant import det_bareiss, norms
from .classifier import MembershipVerdict, classify, verify_verdict
from .errors import (
    BudgetExceeded,
    IndeterminateFactorization,
    InternalInvariantViolation,
    NotFoundInBox,
)

SCHEMA_VERSION = "1"

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_INTERNAL = 0, 1, 2, 3


class _ParseError(Exception):
    pass


def _int(text: str) -> int:
    try:
        return int(text.strip(), 10)
    except ValueError:
        raise _ParseError(f"not a decimal integer: {text!r}") from None


def _gauss(z) -> dict[str, str]:
    return {"re": str(z.re), "im": str(z.im)}


def _strs(xs) -> list[str]:
    return [str(x) for x in xs]


def document(command: str, inputs: dict[str, Any], result: Any, verified: bool | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "result": result,
    }
    if verified is not None:
        doc["verified"] = verified
    return doc


def error_document(command: str, inputs: dict[str, Any], kind: str, message: str) -> dict[str, Any]:
    return document(command, inputs, {"error": {"kind": kind, "message": message}})


def certificate(value: int, vec: Sequence[int], plan: witness.WitnessPlan) -> dict[str, Any]:
    return {
        "value": str(value),
        "vector": _strs(vec),
        "plan": plan.to_dict(),
        "verified": det_bareiss(vec) == value,
    }


def verify_certificate(cert: dict[str, Any]) -> tuple[bool, str]:
    """Independently re-check a witness certificate document."""
    value = int(cert["value"])
    vec = [int(x) for x in cert["vector"]]
    if len(vec) != 16:
        return False, f"vector has {len(vec)} entries"
    det = det_bareiss(vec)
    if det != value:
        return False, f"determinant is {det}, certificate claims {value}"
    if "plan" in cert:
        plan = witness.WitnessPlan.from_dict(cert["plan"])
        if plan.claimed_value != value:
            return False, "plan claims a different value"
        try:
            realized = list(witness.realize(plan))
        except (InternalInvariantViolation, ValueError) as exc:
            return False, f"plan does not realize: {exc}"
        if realized != vec:
            return False, "plan does not realize the stated vector"
    return True, "determinant matches"


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------


def cmd_classify(args) -> tuple[dict[str, Any], int]:
    inputs = {"v": args.v}
    v = _int(args.v)
    verdict = classify(v, seed=args.seed)
    return (
        document("classify", inputs, verdict.to_dict(), verified=verify_verdict(verdict)),
        EXIT_OK if verdict.member else EXIT_NO,
    )


def cmd_witness(args) -> tuple[dict[str, Any], int]:
    inputs = {"v": args.v}
    v = _int(args.v)
    verdict = classify(v, seed=args.seed)
    if not verdict.member:
        result = {"refused": True, "verdict": verdict.to_dict()}
        return document("witness", inputs, result, verified=verify_verdict(verdict)), EXIT_NO
    plan = witness.plan_for(verdict)
    vec = witness.realize(plan)
    cert = certificate(v, vec, plan)
    if not cert["verified"]:
        raise InternalInvariantViolation(f"witness for {v} does not verify")
    result = {"verdict": verdict.to_dict(), "certificate": cert}
    return document("witness", inputs, result, verified=True), EXIT_OK


def cmd_det(args) -> tuple[dict[str, Any], int]:
    inputs = {"a": list(args.a)}
    vec = [_int(x) for x in args.a]
    if len(vec) != 16:
        raise _ParseError(f"det needs exactly 16 integers, got {len(vec)}")
    by_elimination = det_bareiss(vec)
    nf = norms(vec)
    t = nf.transforms
    result = {
        "det_bareiss": str(by_elimination),
        "det_via_norms": str(nf.product),
        "norms": {
            "N1": str(nf.n1), "N2": str(nf.n2), "N4": str(nf.n4),
            "N8": str(nf.n8), "N16": str(nf.n16),
        },
        "alpha1": _gauss(nf.alpha1),
        "alpha2": _gauss(nf.alpha2),
        "transforms": {
            "b": _strs(t.b), "c": _strs(t.c), "e": _strs(t.e),
            "d": [_gauss(z) for z in t.d],
        },
    }
    if by_elimination != nf.product:
        result["error"] = {
            "kind": "InternalInvariantViolation",
            "message": "determinant routes disagree",
        }
        return document("det", inputs, result, verified=False), EXIT_INTERNAL
    return document("det", inputs, result, verified=True), EXIT_OK


def _subset_check(box: search.SearchBox, values: set[int]) -> dict[str, Any]:
    if box.n == 16:
        reference = "S(16) membership"
        outside = sorted(v for v in values if not classify(v).member)
    else:
        reference = f"Z_odd u {selftest.PUBLISHED_MODULUS[box.n]}Z"
        outside = sorted(v for v in values if not selftest.in_published_set(box.n, v))
    return {"reference": reference, "passed": not outside, "outside": _strs(outside)}


def cmd_enumerate(args) -> tuple[dict[str, Any], int]:
    inputs = {"n": str(args.n), "lo": str(args.lo), "hi": str(args.hi), "jobs": str(args.jobs)}
    box = search.SearchBox(args.n, args.lo, args.hi)
    if args.find is not None:
        inputs["find"] = args.find
        target = _int(args.find)
        try:
            vec = search.find_value(target, box, jobs=args.jobs, allow_large=args.allow_large)
        except NotFoundInBox as exc:
            return document("enumerate", inputs, {"found": False, "message": str(exc)}), EXIT_NO
        result = {"found": True, "vector": _strs(vec), "det": str(det_bareiss(vec))}
        return document("enumerate", inputs, result, verified=det_bareiss(vec) == target), EXIT_OK
    report = search.spectrum(box, jobs=args.jobs, allow_large=args.allow_large)
    result = report.to_dict()
    check = _subset_check(box, report.values)
    result["subset_check"] = check
    return document("enumerate", inputs, result, verified=check["passed"]), EXIT_OK if check["passed"] else EXIT_NO


def cmd_selftest(args) -> tuple[dict[str, Any], int]:
    level = "full" if args.full else "quick"
    results = selftest.run_selftest(level, seed=args.seed, jobs=args.jobs)
    passed = all(r.passed for r in results)
    result = {
        "level": level,
        "passed": passed,
        "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        "failed": [r.name for r in results if not r.passed],
    }
    return document("selftest", {"level": level, "seed": str(args.seed)}, result, verified=passed), (
        EXIT_OK if passed else EXIT_NO
    )


def cmd_verify(args) -> tuple[dict[str, Any], int]:
    inputs = {"path": args.path}
    stream = sys.stdin if args.path == "-" else open(args.path, encoding="utf-8")
    with stream:
        doc = json.load(stream)
    # accept either a bare certificate or a full witness document
    outer = doc.get("result", {}) if "result" in doc else {}
    cert = outer.get("certificate", doc)
    if "verdict" in outer:
        verdict = MembershipVerdict.from_dict(outer["verdict"])
        if not verify_verdict(verdict):
            return document("verify", inputs, {"ok": False, "message": "verdict does not verify"}, False), EXIT_NO
    ok, message = verify_certificate(cert)
    return document("verify", inputs, {"ok": ok, "message": message}, verified=ok), EXIT_OK if ok else EXIT_NO


# --------------------------------------------------------------------------
# Entry point
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circ16", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="indent the output document")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    # same flags after the subcommand; SUPPRESS keeps the top-level value unless given again
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="decide membership in S(16)")
    p.add_argument("v")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", parents=[common], help="build and verify a 16-entry witness vector")
    p.add_argument("v")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("det", parents=[common], help="determinant by elimination and by norm factorization")
    p.add_argument("a", nargs="+")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("enumerate", parents=[common], help="exhaustive determinant spectrum over a box")
    p.add_argument("--n", type=int, required=True, choices=search.SUPPORTED_ORDERS)
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--find", default=None, help="stop at the first vector with this determinant")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--allow-large", action="store_true", help="permit entries outside [-2, 2] for n = 16")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("selftest", parents=[common], help="run the property suites and round-trips")
    p.add_argument("--full", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("verify", parents=[common], help="re-check a witness certificate document (file or -)")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {
        k: (v if isinstance(v, list) else str(v))
        for k, v in vars(args).items()
        if k not in ("func", "pretty", "command") and v is not None
    }
    try:
        doc, status = args.func(args)
    except _ParseError as exc:
        doc, status = error_document(args.command, inputs, "ParseError", str(exc)), EXIT_ERROR
    except IndeterminateFactorization as exc:
        doc, status = error_document(args.command, inputs, "IndeterminateFactorization", str(exc)), EXIT_ERROR
    except BudgetExceeded as exc:
        doc, status = error_document(args.command, inputs, "BudgetExceeded", str(exc)), EXIT_ERROR
    except InternalInvariantViolation as exc:
        doc, status = error_document(args.command, inputs, "InternalInvariantViolation", str(exc)), EXIT_INTERNAL
    except (ValueError, OSError) as exc:
        doc, status = error_document(args.command, inputs, type(exc).__name__, str(exc)), EXIT_ERROR
    json.dump(doc, sys.stdout, indent=2 if args.pretty else None)
    sys.stdout.write("\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
