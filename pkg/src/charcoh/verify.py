"""One-shot invariant suite behind ``charcoh verify``."""

from __future__ import annotations

import logging
from typing import Callable

from .conslaw import Q, build_phi, build_varphi, classical_phi0, classify, kernel_of_ebar, solve_vd
from .jetring import DiffPoly, Param, PotentialModel, parse_expr
from .numcheck import SINH, OdeSetup, linearized_residual
from .psrecursion import ps_chain, verify_ps
from .symmetry import lie_check, symmetry_from_generating

log = logging.getLogger(__name__)

BETA = DiffPoly.var(Param("b"))
GOLDEN = {
    3: "u2 - 1/2*b*u0^3",
    5: "u4 - 5/2*b*u2*u0^2 - 5/2*b*u1^2*u0 + 3/8*b^2*u0^5",
    7: "u6 - 7/2*b*u4*u0^2 - 14*b*u3*u1*u0 - 21/2*b*u2^2*u0 - 35/2*b*u2*u1^2"
    " + 35/8*b^2*u2*u0^4 + 35/4*b^2*u1^2*u0^3 - 5/16*b^3*u0^7",
}
TZITZEICA_V5 = "u4 + 5*u2*u1 - 5*u2*u0^2 - 5*u1^2*u0 + u0^5"


def run_suite(max_degree: int = 7) -> list[dict]:
    checks: list[dict] = []

    def check(name: str, fn: Callable[[], bool]) -> None:
        try:
            ok = bool(fn())
        except Exception as exc:  # a crash is a failed check, reported by name
            log.error("%s raised %r", name, exc)
            ok = False
        log.info("%s: %s", name, "ok" if ok else "FAIL")
        checks.append({"name": name, "ok": ok})

    mb = PotentialModel.beta(BETA)
    generic = PotentialModel.generic()
    tz = PotentialModel.rule(-1, 2)

    check("V_0 spanned by q", lambda: solve_vd(0, mb).kernel == (Q,))
    for d in range(1, max_degree + 1):
        check(f"dim V_{d} under fuu=b*f", lambda d=d: solve_vd(d, mb).dim == d % 2)
    for d in range(2, min(max_degree, 6) + 1):
        check(f"dim V_{d} generic", lambda d=d: solve_vd(d, generic).dim == 0)
    for d, text in GOLDEN.items():
        if d <= max_degree:
            check(f"golden P^{d}", lambda d=d, t=text: solve_vd(d, mb).kernel[0] == parse_expr(t))
    if max_degree >= 5:
        check("golden Tzitzeica V_5", lambda: solve_vd(5, tz).kernel[0] == parse_expr(TZITZEICA_V5))
    for d in range(1, max_degree + 1, 2):
        P = solve_vd(d, mb).kernel[0]
        check(f"closure d={d}", lambda P=P, d=d: build_phi(P, d, mb).closed)
        check(f"d(varphi)=Phi d={d}", lambda P=P, d=d: build_varphi(P, d, mb).ok)
    check("d(phi_0) = classical law", lambda: classical_phi0(mb).residual.is_zero())
    n = (max_degree + 1) // 2
    chain = ps_chain(n, BETA)
    for i in range(1, n + 1):
        check(f"Pinkall-Sterling identities i={i}", lambda i=i: verify_ps(i, chain).ok)
        check(f"chain entry {i} = V_{2 * i - 1} generator", lambda i=i: chain.P[i - 1] == solve_vd(2 * i - 1, mb).kernel[0])
    check("classify(3)", lambda: [c.text for c in classify(3).conditions] == ["l1 = 0"])
    if max_degree >= 5:
        check("classify(5)", lambda: [c.text for c in classify(5).conditions] == ["l1 = 0", "l2 - 2*l1^2 = 0"])
    for d in range(1, min(max_degree, 5) + 1):
        check(f"ebar kernel empty wd {d}", lambda d=d: kernel_of_ebar(d, generic) == [])
    for name, g in [("u0", parse_expr("u0")), ("q", Q)]:
        v = symmetry_from_generating(g, mb, 5)
        check(f"symmetry {name}", lambda v=v: all(lie_check(v, i, mb).ok for i in range(4)))
    if max_degree >= 3:
        v = symmetry_from_generating(solve_vd(3, mb).kernel[0], mb, 5)
        check("symmetry P^3", lambda v=v: all(lie_check(v, i, mb).ok for i in range(4)))
    setup = OdeSetup(SINH)
    for d in (1, 3, 5):
        if d <= max_degree:
            P = solve_vd(d, SINH.model).kernel[0]
            check(
                f"numeric order d={d}",
                lambda P=P: all(1.8 <= o <= 2.2 for o in linearized_residual(P, setup).orders),
            )
    return checks


__all__ = ["run_suite"]
