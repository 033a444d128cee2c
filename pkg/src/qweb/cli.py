"""Command-line interface: evaluate webs, run checks, poke the algebra.

Results go to standard output as JSON lines; a human summary goes to standard
error.  Exit codes: 2 on usage or parse errors, 1 when a check fails, else 0.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import webs as W
from .catalog import FAIL, Ranges, run_catalog, summarize
from .evaluate import eval_web, hom_dim, psi_action
from .linalg import matrix_to_json
from .scalars import ScalarParseError, format_scalar
from .sergeev import clasp, e_lambda, format_elt, parse_elt
from .tableaux import (
    lr_coefficient,
    schur_p,
    staircase_tableau,
)
from .webs import WebParseError, WebTypeError, ast_to_json, parse_dsl


def _label_text(label) -> str:
    if label == ():
        return "1"
    parts = []
    for orient, mono in label:
        word = ".".join(str(x) if x > 0 else f"{-x}b" for x in mono) or "()"
        parts.append(word + ("'" if orient == "d" else ""))
    return "|".join(parts)


def _emit(obj):
    print(json.dumps(obj, sort_keys=True))


def _parse_partition(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(p) for p in text.split(","))


def _cmd_eval(args) -> int:
    try:
        expr = parse_dsl(args.expr)
        dom, cod = W.typecheck(expr)
    except (WebParseError, WebTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.emit == "json":
        _emit(ast_to_json(expr))
        return 0
    mat = eval_web(args.n, expr)
    out = matrix_to_json(mat, _label_text)
    if args.basis:
        _emit({"domain_basis": [ _label_text(l) for l in mat.domain.labels ],
               "codomain_basis": [ _label_text(l) for l in mat.codomain.labels ]})
    _emit(out)
    print(f"{args.expr}  :  {dom} -> {cod}  ({len(mat.entries)} entries at n={args.n})",
          file=sys.stderr)
    return 0


def _cmd_check(args) -> int:
    ranges = Ranges.from_env(
        kmax=args.kmax, lmax=args.kmax, hmax=args.kmax, nmax=args.nmax,
    )
    if args.equivariance:
        ranges.equivariance = True
    results = run_catalog(only=args.only, ranges=ranges)
    for cr in results:
        _emit(cr.to_json())
    tally = summarize(results)
    print(
        f"checks: {tally['pass']} pass, {tally['fail']} fail, "
        f"{tally['unverified-by-label']} unverified-by-label",
        file=sys.stderr,
    )
    return 1 if tally[FAIL] else 0


def _cmd_sergeev(args) -> int:
    k = args.k
    try:
        if args.op == "mul":
            if args.x is None or args.y is None:
                print("mul needs --x and --y", file=sys.stderr)
                return 2
            _emit({"result": format_elt(parse_elt(args.x, k) * parse_elt(args.y, k))})
        elif args.op == "elambda":
            if args.partition is None:
                print("elambda needs --partition", file=sys.stderr)
                return 2
            lam = _parse_partition(args.partition)
            e = e_lambda(lam)
            kappa = (e * e).proportionality(e)
            _emit({
                "result": format_elt(e),
                "kappa": format_scalar(kappa) if kappa is not None else None,
                "terms": len(e.terms),
            })
        elif args.op == "clasp":
            _emit({"result": format_elt(clasp(k))})
        elif args.op == "psi":
            if args.x is None:
                print("psi needs --x", file=sys.stderr)
                return 2
            mat = psi_action(parse_elt(args.x, k), args.n)
            _emit(matrix_to_json(mat, _label_text))
    except (ValueError, ScalarParseError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_lr(args) -> int:
    lam = _parse_partition(args.lam)
    nu = _parse_partition(args.nu)
    mu = _parse_partition(args.mu)
    try:
        f = lr_coefficient(lam, nu, mu)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit({"lambda": lam, "nu": nu, "mu": mu, "coefficient": f})
    return 0


def _cmd_schurp(args) -> int:
    lam = _parse_partition(args.lam)
    try:
        poly = schur_p(lam, args.vars)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    terms = [
        {"exponent": list(e), "coefficient": c}
        for e, c in sorted(poly.items(), reverse=True)
    ]
    _emit({"lambda": lam, "vars": args.vars, "terms": terms})
    return 0


def _cmd_staircase(args) -> int:
    mu = _parse_partition(args.mu)
    try:
        tab = staircase_tableau(mu, args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit({
        "mu": mu,
        "n": args.n,
        "tableau": tab.text(),
        "content": tab.content(),
        "word": "".join(str(-a) + "'" if a < 0 else str(a) for a in tab.word()),
    })
    return 0


def _cmd_homdim(args) -> int:
    try:
        dom = _parse_word(args.src)
        cod = _parse_word(args.dst)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    even, odd = hom_dim(args.n, dom, cod)
    _emit({"n": args.n, "from": str(dom), "to": str(cod), "even": even, "odd": odd})
    return 0


def _parse_word(text: str) -> W.ObjectWord:
    """Words like '^1 ^2 v3' (up/down thicknesses)."""
    strands = []
    for piece in text.split():
        if piece.startswith("^"):
            strands.append((W.UP, int(piece[1:])))
        elif piece.startswith("v"):
            strands.append((W.DOWN, int(piece[1:])))
        else:
            raise ValueError(f"bad strand {piece!r}; use ^k or vk")
    return W.ObjectWord(tuple(strands))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qweb", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("eval", help="evaluate a web DSL expression to a matrix")
    p.add_argument("-n", type=int, default=1)
    p.add_argument("expr", help="web DSL text, e.g. 'merge(1,1) ; split(1,1)'")
    p.add_argument("--emit", choices=["matrix", "json"], default="matrix")
    p.add_argument("--basis", action="store_true", help="also dump the bases")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("check", help="run the identity catalog")
    p.add_argument("--only", help="comma-separated groups or name prefixes (e.g. R2,R7/involution)")
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--equivariance", action="store_true",
                   help="also check every produced matrix against the q(n) action")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("sergeev", help="symbolic Sergeev algebra operations")
    p.add_argument("op", choices=["mul", "elambda", "clasp", "psi"])
    p.add_argument("-k", type=int, required=True, help="strand count")
    p.add_argument("-n", type=int, default=1, help="rank for psi")
    p.add_argument("--x", help="element text, e.g. '(1/2)*c[1,2]*p[2,1]'")
    p.add_argument("--y", help="second element text for mul")
    p.add_argument("--partition", help="strict partition like 3,1 for elambda")
    p.set_defaults(func=_cmd_sergeev)

    p = sub.add_parser("lr", help="shifted Littlewood-Richardson coefficient")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--mu", required=True)
    p.set_defaults(func=_cmd_lr)

    p = sub.add_parser("schurp", help="Schur P-polynomial")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--vars", type=int, default=3)
    p.set_defaults(func=_cmd_schurp)

    p = sub.add_parser("staircase", help="the hook-filled LR tableau of shape mu/lambda(n)")
    p.add_argument("--mu", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_staircase)

    p = sub.add_parser("homdim", help="equivariant hom-space dimensions")
    p.add_argument("-n", type=int, default=1)
    p.add_argument("--from", dest="src", required=True, help="word like '^1 ^1'")
    p.add_argument("--to", dest="dst", required=True)
    p.set_defaults(func=_cmd_homdim)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
