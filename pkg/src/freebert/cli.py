"""Command-line front end: ``freebert <command> ... -d NVARS``.

Every command prints one JSON document with keys ``command``, ``inputs``,
``seed``, ``verdict`` and, where relevant, ``certificate`` and ``evidence``.
Exit status: 0 decided, 1 negative / not found, 2 error, inconclusive or budget.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any

from .decide import bertini_report, stable_association
from .eigenlevel import MatrixTuple, det_profile_equal, eig_cert, eig_equiv, eig_member, evaluate
from .errors import BudgetExceeded, FreebertError, NotEquivalent, NotIncluded, ParseError
from .factor import factor
from .ncpoly import NCPoly
from .parser import parse
from .quasiconvex import INCONCLUSIVE, NOT_WQC, lmi_for, wqc_classify
from .unipoly import UniPoly


def jsonable(obj: Any) -> Any:
    if isinstance(obj, (NCPoly, UniPoly)):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return "-inf" if obj == float("-inf") else str(obj)
    if isinstance(obj, MatrixTuple):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def _load_matrices(path: str, d: int) -> MatrixTuple:
    with open(path) as fh:
        X = MatrixTuple.from_json(json.load(fh))
    if X.d != d:
        raise ValueError(f"matrix file has {X.d} matrices but -d is {d}")
    return X


def cmd_parse(a, P):
    f = P(a.poly)
    return 0, "ok", {"poly": f}, None


def cmd_arith(a, P):
    f = P(a.f)
    if a.op == "transpose":
        return 0, "ok", {"result": f.transpose()}, None
    if a.g is None:
        raise ValueError(f"arith {a.op} needs two operands")
    g = P(a.g)
    out = {"add": lambda: f + g, "sub": lambda: f - g, "mul": lambda: f * g}[a.op]()
    return 0, "ok", {"result": out}, None


def cmd_factor(a, P):
    fac = factor(P(a.poly), a.budget)
    verdict = "irreducible" if len(fac) == 1 else "factors"
    return 0, verdict, {"scalar": fac.scalar, "factors": list(fac.factors)}, None


def cmd_bertini(a, P):
    rep = bertini_report(P(a.poly), samples=a.samples, seed=a.seed, budget=a.budget)
    dec = rep.decomposition
    cert = {"composite": dec.composite, "p": dec.p, "h": dec.h}
    evidence = {
        "samples": [
            {"lambda": s.lam, "status": s.status, **({"p_minus_lambda_has_rational_root": s.rational_root} if dec.composite else {})}
            for s in rep.samples
        ],
        "exceptional_lambdas": rep.exceptional,
        "consistent": rep.consistent,
    }
    return 0, "composite" if dec.composite else "not_composite", cert, evidence


def cmd_stable_assoc(a, P):
    w = stable_association(P(a.f1), P(a.f2), budget=a.budget)
    if w is None:
        return 1, "not_stably_associated", None, None
    return 0, "stably_associated", {"g1": w.g1, "g2": w.g2}, None


def cmd_eig_cert(a, P):
    try:
        c = eig_cert(P(a.f), P(a.g), seed=a.seed)
    except NotIncluded as exc:
        return 1, "not_included", None, {"stage": exc.stage, "detail": exc.detail}
    return 0, "included", {"a": c.a, "h": c.h, "p": c.p}, None


def cmd_eig_equiv(a, P):
    try:
        w = eig_equiv(P(a.f), P(a.g), seed=a.seed)
    except NotEquivalent as exc:
        return 1, "not_equivalent", None, {"stage": exc.stage, "detail": exc.detail}
    return 0, "equivalent", {"a": w}, None


def cmd_eig_member(a, P):
    X = _load_matrices(a.matrices, a.nvars)
    lam = Fraction(a.lam)
    ok = eig_member(P(a.poly), X, lam)
    return (0, "member", None, None) if ok else (1, "not_member", None, None)


def cmd_det_profile(a, P):
    res = det_profile_equal(P(a.f), P(a.g), a.size, trials=a.samples, seed=a.seed)
    if res.equal:
        return 0, "equal", None, {"size": a.size, "trials": res.trials, "note": "randomized evidence"}
    return 1, "different", {"witness": res.witness}, {"size": a.size}


def cmd_wqc(a, P):
    v = wqc_classify(P(a.poly), samples=max(a.samples, 50), seed=a.seed)
    code = 2 if v.verdict == INCONCLUSIVE else 1 if v.verdict == NOT_WQC else 0
    return code, v.verdict, v.certificate or None, v.evidence or None


def cmd_lmi(a, P):
    mats = lmi_for(P(a.poly))
    if mats is None:
        return 1, "no_concave_quadratic_form", None, None
    return 0, "ok", {"pencil": mats}, None


def cmd_eval(a, P):
    X = _load_matrices(a.matrices, a.nvars)
    return 0, "ok", {"value": evaluate(P(a.poly), X)}, None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-d", "--nvars", type=int, required=True, help="number of variables x1..xd")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=20)
    common.add_argument("--budget", type=int, default=24, help="unknown limit for the Groebner fall-back")

    ap = argparse.ArgumentParser(prog="freebert", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, *positionals):
        p = sub.add_parser(name, parents=[common])
        for pos in positionals:
            p.add_argument(pos)
        p.set_defaults(handler=fn)
        return p

    add("parse", cmd_parse, "poly")
    p = sub.add_parser("arith", parents=[common])
    p.add_argument("f")
    p.add_argument("op", choices=["add", "sub", "mul", "transpose"])
    p.add_argument("g", nargs="?")
    p.set_defaults(handler=cmd_arith)
    add("factor", cmd_factor, "poly")
    add("bertini", cmd_bertini, "poly")
    add("stable-assoc", cmd_stable_assoc, "f1", "f2")
    add("eig-cert", cmd_eig_cert, "f", "g")
    add("eig-equiv", cmd_eig_equiv, "f", "g")
    p = add("eig-member", cmd_eig_member, "poly")
    p.add_argument("--matrices", required=True, help='JSON file {"n": n, "matrices": [...]}')
    p.add_argument("--lambda", dest="lam", required=True)
    p = add("det-profile", cmd_det_profile, "f", "g")
    p.add_argument("--size", type=int, default=2, help="matrix size n")
    add("wqc-classify", cmd_wqc, "poly")
    add("lmi", cmd_lmi, "poly")
    p = add("eval", cmd_eval, "poly")
    p.add_argument("--matrices", required=True)
    return ap


_NEGATIVE_TERM = re.compile(r"-[0-9x(]")
_INPUT_KEYS = ("poly", "f", "op", "g", "f1", "f2", "matrices", "lam", "size", "nvars", "samples", "budget")


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    # "-x1^2" would otherwise be taken for an option; a leading space keeps it positional
    argv = [" " + s if _NEGATIVE_TERM.match(s) else s for s in argv]
    args = build_parser().parse_args(argv)
    inputs = {k: getattr(args, k) for k in _INPUT_KEYS if getattr(args, k, None) is not None}
    inputs = {k: v.strip() if isinstance(v, str) else v for k, v in inputs.items()}
    if "lam" in inputs:
        inputs["lambda"] = inputs.pop("lam")
    doc: dict[str, Any] = {"command": args.command, "inputs": inputs, "seed": args.seed}

    def P(text: str) -> NCPoly:
        return parse(text, args.nvars)

    try:
        code, verdict, cert, evidence = args.handler(args, P)
    except BudgetExceeded as exc:
        code, verdict, cert, evidence = 2, "budget_exceeded", None, {"detail": str(exc)}
    except ParseError as exc:
        code, verdict, cert = 2, "error", None
        evidence = {"error": str(exc), "offset": exc.offset, "expected": sorted(exc.expected)}
    except (ValueError, FreebertError, OSError, KeyError) as exc:
        code, verdict, cert, evidence = 2, "error", None, {"error": str(exc)}
    doc["verdict"] = verdict
    if cert is not None:
        doc["certificate"] = cert
    if evidence is not None:
        doc["evidence"] = evidence
    out.write(json.dumps(jsonable(doc), indent=2) + "\n")
    if code == 2 and verdict == "error":
        print(f"freebert: {evidence['error']}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
