"""Command line front end.

Output is JSON on stdout unless ``--text`` or ``--latex`` is given; logs go to
stderr.  Exit status is 0 on success, 1 when a verification fails and 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Callable, Optional

from .jetring import DiffPoly, ExprError, PotentialModel, parse_expr, parse_model, render, to_json_obj

log = logging.getLogger("charcoh")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEGREE_ENV = "CHARCOH_MAX_DEGREE"
DEFAULT_MAX_DEGREE = 7


class UsageError(Exception):
    pass


class Output:
    def __init__(self, fmt: str, out: Optional[str]) -> None:
        self.fmt = fmt
        self.path = out
        self.chunks: list[str] = []

    def emit(self, obj: dict, text: Callable[[], str], latex: Optional[Callable[[], str]] = None) -> None:
        if self.fmt == "text":
            self.chunks.append(text())
        elif self.fmt == "latex":
            self.chunks.append((latex or text)())
        else:
            self.chunks.append(json.dumps(obj, indent=2, sort_keys=True))

    def flush(self) -> None:
        data = "\n".join(self.chunks) + "\n"
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(data)
        else:
            sys.stdout.write(data)


def _model(text: str) -> PotentialModel:
    try:
        return parse_model(text)
    except ExprError as exc:
        raise UsageError(f"bad --model: {exc}") from None


def _poly(text: str) -> DiffPoly:
    try:
        return parse_expr(text)
    except ExprError as exc:
        raise UsageError(f"bad expression: {exc}") from None


def _generator(d: int, m: PotentialModel) -> DiffPoly:
    from .conslaw import solve_vd

    sol = solve_vd(d, m)
    if not sol.dim:
        raise UsageError(f"V_{d} is zero under {m.describe()}; pass an explicit generator")
    return sol.kernel[0]


# -- verbs -----------------------------------------------------------------------


def cmd_solve_vd(args, out: Output) -> int:
    from .conslaw import solve_vd

    m = _model(args.model)
    sol = solve_vd(args.degree, m)
    out.emit(
        sol.to_json_obj(),
        lambda: f"dim V_{sol.degree} = {sol.dim}" + "".join(f"\n  {render(p)}" for p in sol.kernel),
        lambda: "\n".join(render(p, "latex") for p in sol.kernel) or "0",
    )
    return EXIT_OK


def cmd_build_law(args, out: Output) -> int:
    from .conslaw import build_phi, build_varphi, classical_laws, classical_phi0

    m = _model(args.model)
    if args.classical:
        law = classical_laws(_poly(args.a).constant_value(), _poly(args.b).constant_value(), m)
        obj = law.to_json_obj()
        ok = law.closed
        if args.a.strip() == "0":
            phi0 = classical_phi0(m)
            obj["varphi"] = phi0.to_json_obj()
            ok = ok and phi0.residual.is_zero()
    else:
        P = _poly(args.P) if args.P else _generator(args.degree, m)
        law = build_phi(P, args.degree, m)
        obj = law.to_json_obj()
        ok = law.closed
        if args.degree:
            und = build_varphi(P, args.degree, m)
            obj["varphi"] = und.to_json_obj()
            ok = ok and und.ok
    out.emit(
        obj,
        lambda: f"P = {render(law.P)}\nPhi = {law.Phi.render()}\nclosed: {law.closed}",
        lambda: law.Phi.render("latex"),
    )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_ps_chain(args, out: Output) -> int:
    from .psrecursion import ps_chain, verify_ps

    beta = _poly(args.beta)
    if any(not v.is_param() for v in beta.variables()):
        raise UsageError("--beta must involve parameters only")
    ch = ps_chain(args.count, beta)
    reports = [verify_ps(i, ch) for i in range(1, len(ch) + 1)]
    obj = ch.to_json_obj()
    obj["degenerate"] = ch.degenerate
    obj["identities"] = [r.to_json_obj() for r in reports]
    out.emit(
        obj,
        lambda: "\n".join(f"P_{i} = {render(p)}" for i, p in enumerate(ch.P, 1)),
        lambda: "\n".join(render(p, "latex") for p in ch.P),
    )
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def cmd_classify(args, out: Output) -> int:
    from .conslaw import classify

    try:
        rep = classify(args.degree)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.emit(
        rep.to_json_obj(),
        lambda: "\n".join(f"{c.text}    witness: {render(c.witness) if c.witness else '-'}" for c in rep.conditions),
    )
    return EXIT_OK if all(c.verified for c in rep.conditions) else EXIT_FAIL


def cmd_symmetry_check(args, out: Output) -> int:
    from .symmetry import NotASymmetry, lie_check, symmetry_from_generating, vector_from_generating

    m = _model(args.model)
    g = _poly(args.g) if args.g else _generator(args.degree, m)
    try:
        v = symmetry_from_generating(g, m, args.depth + 2)
        solves = True
    except NotASymmetry:
        v = vector_from_generating(g, m, args.depth + 2)
        solves = False
    res = [lie_check(v, i, m) for i in range(args.depth + 1)]
    obj = {"g": to_json_obj(g), "solves_E": solves, "residuals": [r.to_json_obj() for r in res]}
    out.emit(
        obj,
        lambda: "\n".join(f"i={r.index}: zeta {render(r.zeta)}, zetab {render(r.zeta_bar)}" for r in res),
    )
    return EXIT_OK if solves and all(r.ok for r in res) else EXIT_FAIL


def cmd_numcheck(args, out: Output) -> int:
    from .numcheck import POTENTIALS, OdeSetup, energy_orders, linearized_residual

    pot = POTENTIALS[args.potential]
    P = _poly(args.P) if args.P else _generator(args.degree, pot.model)
    try:
        hs = [float(x) for x in args.h.split(",")]
    except ValueError:
        raise UsageError("--h takes a comma-separated list of step sizes") from None
    setup = OdeSetup(pot, args.u0, args.v0)
    rep = linearized_residual(P, setup, hs, args.length)
    erows = energy_orders(setup, hs, args.length)
    lo, hi = args.order_band
    ok = all(lo <= o <= hi for o in rep.orders)
    obj = rep.to_json_obj()
    obj["energy"] = [{"h": r.h, "drift": r.residual, "order": r.order} for r in erows]
    obj["ok"] = ok
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(rep.to_csv())
    out.emit(
        obj,
        lambda: "\n".join(f"h={r.h:g} residual={r.residual:.3e} order={r.order}" for r in rep.rows),
    )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args, out: Output) -> int:
    from .verify import run_suite

    checks = run_suite(args.max_degree)
    ok = all(c["ok"] for c in checks)
    out.emit(
        {"max_degree": args.max_degree, "ok": ok, "checks": checks},
        lambda: "\n".join(f"{'PASS' if c['ok'] else 'FAIL'}  {c['name']}" for c in checks),
    )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_render(args, out: Output) -> int:
    p = _poly(args.expr)
    fmt = out.fmt
    out.fmt = "text"
    out.emit({}, lambda: render(p, fmt))
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def _env_degree() -> int:
    raw = os.environ.get(DEGREE_ENV)
    if not raw:
        return DEFAULT_MAX_DEGREE
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{DEGREE_ENV} must be an integer") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="charcoh", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log to stderr")
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    fmt.add_argument("--latex", dest="fmt", action="store_const", const="latex")
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    common.add_argument("--out", help="write output to a file instead of stdout")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("solve-vd", parents=[common], help="generators of V_d")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--model", default="fuu=b*f")
    p.set_defaults(func=cmd_solve_vd)

    p = sub.add_parser("build-law", parents=[common], help="normal-form law and its primitive")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--model", default="fuu=b*f")
    p.add_argument("--P", help="generating function (default: generator of V_d)")
    p.add_argument("--classical", action="store_true", help="use P = a u0 + i b z u0")
    p.add_argument("--a", default="1")
    p.add_argument("--b", default="0")
    p.set_defaults(func=cmd_build_law)

    p = sub.add_parser("ps-chain", parents=[common], help="Pinkall-Sterling chain")
    p.add_argument("--count", type=int, default=4)
    p.add_argument("--beta", default="b")
    p.set_defaults(func=cmd_ps_chain)

    p = sub.add_parser("classify", parents=[common], help="admissible potentials for degree d")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("symmetry-check", parents=[common], help="Lie derivative residuals")
    p.add_argument("--g", help="generating function (default: generator of V_d)")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--model", default="fuu=b*f")
    p.set_defaults(func=cmd_symmetry_check)

    p = sub.add_parser("numcheck", parents=[common], help="numeric linearized-equation check")
    p.add_argument("--potential", choices=["sinh", "tzitzeica"], default="sinh")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--P", help="z-free generating function (default: generator of V_d)")
    p.add_argument("--h", default="2e-2,1e-2,5e-3")
    p.add_argument("--length", type=float, default=1.0)
    p.add_argument("--u0", type=float, default=1.0)
    p.add_argument("--v0", type=float, default=0.2)
    p.add_argument("--order-band", type=float, nargs=2, default=(1.8, 2.2))
    p.add_argument("--csv", help="write samples of the finest run as CSV")
    p.set_defaults(func=cmd_numcheck)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--max-degree", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", parents=[common], help="pretty-print an expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_render)
    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    from .conslaw import NotInKernel
    from .symmetry import NotASymmetry

    out = Output(args.fmt or "json", args.out)
    try:
        if args.verb == "verify" and args.max_degree is None:
            args.max_degree = _env_degree()
        code = args.func(args, out)
    except UsageError as exc:
        print(f"charcoh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotInKernel, NotASymmetry) as exc:
        print(f"charcoh: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, ExprError) as exc:
        print(f"charcoh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
