"""Generating functions, normal-form conservation laws and their primitives.

``V_d`` is the space of weighted-homogeneous degree-``d`` solutions of
``E(P) = ebar(e(P)) + f_u P = 0`` that are polynomials in the holomorphic jets
``u_j`` alone.  Every ``P`` in ``V_d`` determines a closed 2-form ``Phi_P`` in
normal form and, for ``d != 0``, a 1-form ``varphi_P`` with
``d(varphi_P) = Phi_P + conj(Phi_P)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Optional, Sequence

from sympy import QQ
from sympy.polys.rings import PolyRing

from .forms import (
    ETA0,
    ZETA,
    ZETA_BAR,
    DiffForm,
    J_apply,
    d,
    eta,
    eta_bar,
    interior,
    mod_ideal,
    psi,
    symmetry_vector,
)
from .jetring import (
    DiffPoly,
    FTower,
    GaussScalar,
    Monomial,
    Param,
    PotentialModel,
    U,
    Uj,
    UjBar,
    Z,
    ZBAR,
    is_homogeneous,
    mono_key,
    partial,
    render,
    to_json_obj,
)
from .linalg import ParamRing, canonical_span, minors_gcd, nullspace
from .operators import E_op, e_minus1, e_minus1_bar, e_minus1_pow

I = GaussScalar(0, 1)
_z = DiffPoly.var(Z)
_zb = DiffPoly.var(ZBAR)
_u0 = DiffPoly.var(Uj(0))
_ub0 = DiffPoly.var(UjBar(0))

#: ``q = z u_0 - zb ub_0``, the generator of ``V_0``.
Q = _z * _u0 - _zb * _ub0


class NotInKernel(ValueError):
    """Raised when a generating function fails ``E(P) = 0``."""


# -- bases ---------------------------------------------------------------------


def _partitions(n: int, largest: Optional[int] = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@dataclass(frozen=True)
class VdBasis:
    degree: int
    monomials: tuple[Monomial, ...]

    def polys(self) -> list[DiffPoly]:
        return [DiffPoly({m: 1}) for m in self.monomials]


def vd_basis(d: int) -> VdBasis:
    """All weighted-degree-``d`` monomials in ``u_0 .. u_{d-1}``; ``u_{d-1}`` first."""
    if d < 1:
        raise ValueError("vd_basis needs d >= 1")
    monos = []
    for part in _partitions(d):
        p = DiffPoly({(): 1})
        for k in part:
            p = p * DiffPoly.var(Uj(k - 1))
        monos.append(next(iter(p.terms)))
    monos.sort(key=mono_key)
    return VdBasis(d, tuple(monos))


def _v0_ansatz() -> tuple[Monomial, ...]:
    """Bounded wd-0 ansatz: ``z^a zb^b`` times a mixed-free jet monomial of degree <= 2."""
    jets_h = [DiffPoly.var(Uj(j)) for j in range(3)]
    jets_a = [DiffPoly.var(UjBar(j)) for j in range(3)]
    jet_monos = [DiffPoly.const(1)]
    for fam in (jets_h, jets_a):
        for i, a in enumerate(fam):
            jet_monos.append(a)
            for b in fam[i:]:
                jet_monos.append(a * b)
    out = set()
    for jm in jet_monos:
        w = sum(v.wd * e for v, e in next(iter(jm.terms)))
        for a in range(4):
            b = a - w  # wd(z^a zb^b) = b - a must cancel w
            if 0 <= b <= 3:
                p = jm * _z**a * _zb**b
                out.add(next(iter(p.terms)))
    return tuple(sorted(out, key=mono_key))


# -- kernels -------------------------------------------------------------------


def _kernel_on(
    monomials: Sequence[Monomial],
    op: Callable[[DiffPoly], DiffPoly],
    extra_params: Iterable = (),
) -> list[DiffPoly]:
    """Exact kernel of ``op`` on the span of ``monomials``, canonically normalized.

    Elimination runs in the given column order; the returned basis is the
    reduced echelon form in canonical monomial order, so it does not depend
    on how ``monomials`` was ordered.
    """
    monomials = list(monomials)
    images = [op(DiffPoly({mono: 1})).split_params() for mono in monomials]
    params = set(extra_params)
    row_keys = set()
    for img in images:
        row_keys.update(img)
        for c in img.values():
            params.update(c.variables())
    pr = ParamRing(params)
    rows = []
    for key in sorted(row_keys, key=mono_key):
        rows.append([pr.to_elem(img.get(key, DiffPoly())) for img in images])
    kern = nullspace(rows, len(monomials), pr.ring, pr.field)
    order = sorted(range(len(monomials)), key=lambda k: mono_key(monomials[k]))
    canon = canonical_span([[v[k] for k in order] for v in kern], pr.ring, pr.field)
    out = []
    for vec in canon:
        p = DiffPoly()
        for k, c in zip(order, vec):
            if c:
                p = p + pr.from_elem(c) * DiffPoly({monomials[k]: 1})
        out.append(p)
    return out


@dataclass(frozen=True)
class VdSolution:
    degree: int
    model: PotentialModel
    basis: tuple[Monomial, ...]
    kernel: tuple[DiffPoly, ...]

    @property
    def dim(self) -> int:
        return len(self.kernel)

    def to_json_obj(self) -> dict:
        return {
            "degree": self.degree,
            "model": self.model.describe(),
            "dim": self.dim,
            "generators": [to_json_obj(p) for p in self.kernel],
            "generators_text": [render(p) for p in self.kernel],
        }


@functools.lru_cache(maxsize=None)
def _solve_vd_cached(d: int, m: PotentialModel) -> VdSolution:
    if d > 0:
        basis = vd_basis(d).monomials
        kernel = _kernel_on(basis, lambda p: E_op(p, m), m.params())
    else:
        basis = _v0_ansatz()
        kernel = _kernel_on(basis, lambda p: E_op(p, m), m.params())
        zu0 = next(iter((_z * _u0).terms))
        fixed = []
        for p in kernel:
            c = p.coeff(zu0)
            fixed.append(p / c if c else p)
        kernel = fixed
    return VdSolution(d, m, tuple(basis), tuple(kernel))


def solve_vd(d: int, m: PotentialModel, basis_order: Optional[Sequence[Monomial]] = None) -> VdSolution:
    """``V_d`` under the model.  ``basis_order`` permutes the elimination columns."""
    if d < 0:
        pos = solve_vd(-d, m)
        basis = tuple(next(iter(DiffPoly({mono: 1}).conjugate().terms)) for mono in pos.basis)
        return VdSolution(d, m, basis, tuple(p.conjugate() for p in pos.kernel))
    if basis_order is None:
        return _solve_vd_cached(d, m)
    kernel = _kernel_on(basis_order, lambda p: E_op(p, m), m.params())
    return VdSolution(d, m, tuple(basis_order), tuple(kernel))


def kernel_of_ebar(d: int, m: PotentialModel) -> list[DiffPoly]:
    """Kernel of ``ebar_{-1}`` on wd-``d`` polynomials in the ``u_j``; expected empty."""
    if d < 1:
        raise ValueError("kernel_of_ebar needs d >= 1")
    return _kernel_on(vd_basis(d).monomials, lambda p: e_minus1_bar(p, m), m.params())


# -- normal form ---------------------------------------------------------------


def _check_generator(P: DiffPoly, d: int) -> None:
    if P.variables() & {Z, ZBAR}:
        raise ValueError("generating function must not contain z or zb")
    if not is_homogeneous(P, d):
        raise ValueError(f"generating function is not weighted-homogeneous of degree {d}")


def _b_raw(P: DiffPoly, k: int, m: PotentialModel) -> dict[tuple[int, int], DiffPoly]:
    out = {}
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            acc = DiffPoly()
            for mm in range(0, k - j - i + 2):
                dP = partial(P, Uj(mm + j + i - 1))
                if not dP:
                    continue
                sign = -1 if (mm - i + 1) % 2 else 1
                acc = acc + sign * comb(mm + i - 1, i - 1) * e_minus1_pow(dP, mm, m)
            out[(i, j)] = acc * I
    return out


def b_coeffs(P: DiffPoly, d: int, m: PotentialModel) -> dict[tuple[int, int], DiffPoly]:
    """``B^{ij}`` for ``1 <= i < j <= k`` with level ``k = d - 1``."""
    _check_generator(P, d)
    return _b_raw(P, d - 1, m)


@dataclass(frozen=True)
class NormalFormLaw:
    P: DiffPoly
    degree: Optional[int]
    A_real: DiffPoly
    rho: DiffForm
    B: dict
    Phi: DiffForm
    Phi_real: DiffForm
    closure_residual: DiffForm

    @property
    def level(self) -> Optional[int]:
        return None if self.degree is None else self.degree - 1

    @property
    def closed(self) -> bool:
        return self.closure_residual.is_zero()

    def to_json_obj(self) -> dict:
        return {
            "P": to_json_obj(self.P),
            "P_text": render(self.P),
            "degree": self.degree,
            "rho": self.rho.to_json_obj(),
            "B": {f"{i},{j}": to_json_obj(b) for (i, j), b in sorted(self.B.items())},
            "Phi": self.Phi.to_json_obj(),
            "closure_residual_is_zero": self.closed,
        }


def rho_of(A: DiffPoly, m: PotentialModel) -> DiffForm:
    """``rho = -1/2 J dA``."""
    return J_apply(d(A, m)) * (GaussScalar(-1, 0) / 2)


def _eta_pairs(B: dict, bar: bool) -> DiffForm:
    out = DiffForm(2)
    for (i, j), c in B.items():
        if c:
            a, b = (eta_bar(i), eta_bar(j)) if bar else (eta(i), eta(j))
            out = out + DiffForm.letter(a).wedge(DiffForm.letter(b)) * c
    return out


def build_phi(P: DiffPoly, d_: int, m: PotentialModel) -> NormalFormLaw:
    """Normal-form complex piece ``Phi_P`` and the closure residual of its real part."""
    _check_generator(P, d_)
    if E_op(P, m):
        raise NotInKernel(f"E(P) != 0 for P = {render(P)}")
    k = d_ - 1
    rho = rho_of(P, m)
    B = _b_raw(P, k, m)
    Bbar = {ij: c.conjugate() for ij, c in _b_raw(P.conjugate(), k, m).items()}
    Phi = DiffForm.letter(ETA0).wedge(rho) + psi() * P + _eta_pairs(B, False) + _eta_pairs(Bbar, True)
    Phi_real = Phi + Phi.conjugate()
    return NormalFormLaw(
        P=P,
        degree=d_,
        A_real=P + P.conjugate(),
        rho=rho,
        B=B,
        Phi=Phi,
        Phi_real=Phi_real,
        closure_residual=d(Phi_real, m),
    )


# -- undifferentiated laws -----------------------------------------------------


@dataclass(frozen=True)
class UndiffLaw:
    P: DiffPoly
    degree: int
    varphi: DiffForm
    varphi_tilde: DiffForm
    Phi_real: DiffForm
    residual: DiffForm = field(compare=False)
    tilde_obstruction: DiffForm = field(compare=False)

    @property
    def ok(self) -> bool:
        return self.residual.is_zero() and self.tilde_obstruction.is_zero()

    def to_json_obj(self) -> dict:
        return {
            "P": to_json_obj(self.P),
            "degree": self.degree,
            "varphi": self.varphi.to_json_obj(),
            "varphi_tilde": self.varphi_tilde.to_json_obj(),
            "d_varphi_equals_Phi": self.residual.is_zero(),
            "tilde_obstruction_is_zero": self.tilde_obstruction.is_zero(),
        }


def varphi_tilde_of(P: DiffPoly, m: PotentialModel) -> DiffForm:
    """``(q e(P)) zeta + (ebar(q) P) zetab``."""
    return DiffForm(1, {(ZETA,): Q * e_minus1(P, m), (ZETA_BAR,): e_minus1_bar(Q, m) * P})


def contraction_piece(P: DiffPoly, d_: int, m: PotentialModel) -> DiffForm:
    """``(1/d) v -| Phi_P`` with the S^1 generator ``v``."""
    law = build_phi(P, d_, m)
    v = symmetry_vector(d_ + 2, m)
    return interior(v, law.Phi) * DiffPoly.const(GaussScalar(1, 0) / d_)


def explicit_piece(P: DiffPoly, d_: int, m: PotentialModel) -> DiffForm:
    """``(i/2d) J(P dq - q dP)``."""
    w = d(Q, m) * P - d(P, m) * Q
    return J_apply(w) * DiffPoly.const(I / (2 * d_))


def build_varphi(P: DiffPoly, d_: int, m: PotentialModel) -> UndiffLaw:
    """Real primitive ``varphi = (1/(i d)) v -| (Phi_P - conj Phi_P)``.

    ``v`` generates the S^1 action and carries a factor ``i``, so
    ``L_v Phi_P = i d Phi_P`` and ``L_v conj(Phi_P) = -i d conj(Phi_P)``.
    """
    if d_ == 0:
        raise ValueError("degree 0 has no primitive of this form; use classical_phi0")
    law = build_phi(P, d_, m)
    v = symmetry_vector(abs(d_) + 2, m)
    varphi = interior(v, law.Phi - law.Phi.conjugate()) * DiffPoly.const(GaussScalar(1, 0) / (I * d_))
    tilde = varphi_tilde_of(P, m)
    return UndiffLaw(
        P=P,
        degree=d_,
        varphi=varphi,
        varphi_tilde=tilde,
        Phi_real=law.Phi_real,
        residual=d(varphi, m) - law.Phi_real,
        tilde_obstruction=mod_ideal(d(tilde, m)),
    )


# -- degree zero and the classical laws ------------------------------------------


def classical_laws(a, b, m: PotentialModel) -> NormalFormLaw:
    """The law with ``A = P + conj P`` for ``P = a u_0 + i b z u_0``.

    The 2-form is assembled as ``eta_0 ^ rho + A psi``, the orientation under
    which it is closed (the opposite order ``rho ^ eta_0`` is not).
    """
    a = GaussScalar.coerce(a)
    b = GaussScalar.coerce(b)
    if not b.is_real():
        raise ValueError("b must be real")
    P = _u0 * a + _z * _u0 * (I * b)
    A = P + P.conjugate()
    rho = rho_of(A, m)
    Phi = DiffForm.letter(ETA0).wedge(rho) + psi() * A
    return NormalFormLaw(
        P=P,
        degree=None,
        A_real=A,
        rho=rho,
        B={},
        Phi=Phi,
        Phi_real=Phi,
        closure_residual=d(Phi, m),
    )


def classical_phi0(m: PotentialModel) -> UndiffLaw:
    """``phi_0 = G eta_0 + E zeta + conj(E) zetab``, ``E = -z u0^2/2 + zb Sf``.

    ``G = -(z u0 + zb ub0)/2``; with the unhalved ``G`` the derivative misses
    the classical law by ``-(z u0 + zb ub0)/2 d(eta_0)`` plus exact terms.
    """
    G = -(_z * _u0 + _zb * _ub0) / 2
    E = _z * _u0 * _u0 * GaussScalar(-1, 0) / 2 + _zb * DiffPoly.var(FTower(-1))
    phi0 = DiffForm(1, {(ETA0,): G, (ZETA,): E, (ZETA_BAR,): E.conjugate()})
    target = classical_laws(0, 1, m).Phi_real
    tilde = DiffForm(1, {(ZETA,): E, (ZETA_BAR,): E.conjugate()})
    return UndiffLaw(
        P=_z * _u0 * I,
        degree=0,
        varphi=phi0,
        varphi_tilde=tilde,
        Phi_real=target,
        residual=d(phi0, m) - target,
        tilde_obstruction=mod_ideal(d(tilde, m)),
    )


# -- classification ------------------------------------------------------------

L1 = Param("l1")
L2 = Param("l2")


@dataclass(frozen=True)
class Condition:
    poly: DiffPoly
    witness: Optional[DiffPoly]
    verified: bool

    @property
    def text(self) -> str:
        return f"{render(self.poly)} = 0"

    def to_json_obj(self) -> dict:
        return {
            "condition": to_json_obj(self.poly),
            "text": self.text,
            "witness": None if self.witness is None else to_json_obj(self.witness),
            "witness_text": None if self.witness is None else render(self.witness),
            "verified": self.verified,
        }


@dataclass(frozen=True)
class ClassifyReport:
    degree: int
    conditions: tuple[Condition, ...]
    generic_dim: int

    def to_json_obj(self) -> dict:
        return {
            "degree": self.degree,
            "generic_dim": self.generic_dim,
            "conditions": [c.to_json_obj() for c in self.conditions],
        }


def _solve_for_linear_param(cond: DiffPoly) -> Optional[tuple]:
    """If ``cond = c*x + h`` with constant ``c`` and ``x`` absent from ``h``, return ``(x, -h/c)``."""
    for x in sorted(cond.variables()):
        lin = partial(cond, x)
        if lin.is_constant() and lin and x not in (cond - lin * DiffPoly.var(x)).variables():
            rest = cond - lin * DiffPoly.var(x)
            return x, rest * DiffPoly.const(GaussScalar(-1, 0) / lin.constant_value())
    return None


def classify(d_: int) -> ClassifyReport:
    """Conditions on ``f_uu = l1 f_u + l2 f`` under which ``V_d`` is nonzero."""
    if d_ % 2 == 0 or not 3 <= d_ <= 7:
        raise ValueError("classify supports odd degrees 3, 5, 7")
    m = PotentialModel.rule(DiffPoly.var(L1), DiffPoly.var(L2))
    generic = solve_vd(d_, m)
    if generic.dim:
        return ClassifyReport(d_, (Condition(DiffPoly(), generic.kernel[0], True),), generic.dim)
    basis = vd_basis(d_).monomials
    images = [E_op(DiffPoly({mono: 1}), m).split_params() for mono in basis]
    keys = sorted({k for img in images for k in img}, key=mono_key)
    pr = ParamRing([L1, L2])
    rows = [[pr.to_elem(img.get(k, DiffPoly())) for img in images] for k in keys]
    g = minors_gcd(rows, len(basis), pr.ring)
    if not g:
        return ClassifyReport(d_, (), 0)
    real_ring = PolyRing([p.name for p in pr.params], QQ)
    g_real = real_ring.from_dict({e: c.x for e, c in g.items()})
    _, factors = g_real.factor_list()
    conds = []
    for fac, _mult in factors:
        fac = fac.primitive()[1]
        cpoly = pr.from_elem(pr.ring.from_dict({e: pr.ring.domain.convert(c) for e, c in fac.items()}))
        if cpoly.sorted_items()[0][1].re < 0:
            cpoly = -cpoly
        sol = _solve_for_linear_param(cpoly)
        if sol is None:
            conds.append(Condition(cpoly, None, False))
            continue
        x, val = sol
        l1 = DiffPoly.var(L1).subs({x: val})
        l2 = DiffPoly.var(L2).subs({x: val})
        spec = solve_vd(d_, PotentialModel.rule(l1, l2))
        if spec.dim:
            conds.append(Condition(cpoly, spec.kernel[0], True))
    conds.sort(key=lambda c: (len(c.poly), render(c.poly)))
    return ClassifyReport(d_, tuple(conds), 0)


__all__ = [
    "ClassifyReport",
    "Condition",
    "L1",
    "L2",
    "NormalFormLaw",
    "NotInKernel",
    "Q",
    "UndiffLaw",
    "VdBasis",
    "VdSolution",
    "b_coeffs",
    "build_phi",
    "build_varphi",
    "classical_laws",
    "classical_phi0",
    "classify",
    "contraction_piece",
    "explicit_piece",
    "kernel_of_ebar",
    "rho_of",
    "solve_vd",
    "varphi_tilde_of",
    "vd_basis",
]
