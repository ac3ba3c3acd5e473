"""Generalized symmetries built from generating functions, and the Noether map.

A proper symmetry ``v`` (``zeta(v) = 0``) with generating function ``g`` has
``eta_i(v) = e^i(g)`` and ``etab_i(v) = ebar^i(g)``.  It preserves the ideal
exactly when ``E(g) = 0``; the zetab-coefficient of ``L_v(eta_i)`` is
``e^{i-1}(E(g))`` for ``i >= 1`` and vanishes identically for ``i = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .conslaw import Q, NormalFormLaw, build_phi, classical_laws
from .forms import ETA0, ZETA, ZETA_BAR, DiffForm, FrameVector, d, eta, eta_bar, interior, mod_ideal
from .jetring import U, DiffPoly, PotentialModel, Z, ZBAR, is_homogeneous, render, to_json_obj
from .operators import E_op, e_minus1, e_minus1_bar


class NotASymmetry(ValueError):
    """The generating function fails ``E(g) = 0``."""


class NoConservationLaw(ValueError):
    """``g`` solves ``E(g) = 0`` but mixes holomorphic and antiholomorphic jets."""


@dataclass(frozen=True)
class GenSymmetry:
    g: DiffPoly
    depth: int
    components: FrameVector

    def eta(self, i: int) -> DiffPoly:
        return self.components[eta(i) if i else ETA0]

    def eta_bar(self, i: int) -> DiffPoly:
        return self.components[eta_bar(i) if i else ETA0]


def vector_from_generating(g: DiffPoly, m: PotentialModel, depth: int) -> GenSymmetry:
    """Proper vector field with ``eta_0(v) = g``; no equation check."""
    comps = {ETA0: g}
    hol = anti = g
    for i in range(1, depth + 1):
        hol = e_minus1(hol, m)
        anti = e_minus1_bar(anti, m)
        comps[eta(i)] = hol
        comps[eta_bar(i)] = anti
    return GenSymmetry(g, depth, FrameVector(comps))


def symmetry_from_generating(g: DiffPoly, m: PotentialModel, depth: int) -> GenSymmetry:
    if E_op(g, m):
        raise NotASymmetry(f"E(g) != 0 for g = {render(g)}")
    return vector_from_generating(g, m, depth)


@dataclass(frozen=True)
class LieResidual:
    index: int
    zeta: DiffPoly
    zeta_bar: DiffPoly

    @property
    def ok(self) -> bool:
        return not (self.zeta or self.zeta_bar)

    def to_json_obj(self) -> dict:
        return {
            "i": self.index,
            "zeta": to_json_obj(self.zeta),
            "zeta_bar": to_json_obj(self.zeta_bar),
            "ok": self.ok,
        }


def lie_derivative(v: GenSymmetry, w: DiffForm, m: PotentialModel) -> DiffForm:
    """Cartan's formula ``L_v w = v -| dw + d(v -| w)``."""
    out = interior(v.components, d(w, m))
    if w.degree:
        out = out + d(interior(v.components, w), m)
    return out


def lie_check(v: GenSymmetry, i: int, m: PotentialModel) -> LieResidual:
    """zeta and zetab coefficients of ``L_v(eta_i)`` modulo the ideal."""
    if v.depth < i + 2:
        raise ValueError(f"depth {v.depth} too small to check eta_{i}; need {i + 2}")
    L = mod_ideal(lie_derivative(v, DiffForm.letter(eta(i) if i else ETA0), m))
    return LieResidual(i, L.coeff(ZETA), L.coeff(ZETA_BAR))


def trivial_symmetry_check(Qfun: DiffPoly, m: PotentialModel, depth: int) -> bool:
    """``Q e_{-1}`` annihilates every eta letter and maps each d(eta) into the ideal."""
    v = FrameVector({ZETA: Qfun})
    letters = [ETA0] + [a for i in range(1, depth + 1) for a in (eta(i), eta_bar(i))]
    for a in letters:
        if interior(v, DiffForm.letter(a)):
            return False
        if mod_ideal(interior(v, d(DiffForm.letter(a), m))):
            return False
    return True


def _mixed(g: DiffPoly) -> bool:
    """Some monomial pairs a ``u_i`` with a ``ub_j``, or ``g`` depends on ``u``."""
    for mono, _ in g.items():
        vs = [v for v, _ in mono]
        if any(v.is_holomorphic_jet() for v in vs) and any(v.is_antiholomorphic_jet() for v in vs):
            return True
        if any(v == U or v.is_tower() for v in vs):
            return True
    return False


def noether_pair(g: DiffPoly, d_: int, m: PotentialModel) -> NormalFormLaw:
    """Conservation law with generating function ``g`` (identity on generating functions).

    At degree 0 the generator ``q`` is routed to the classical law with
    ``A = i q``, i.e. ``classical_laws(0, 1)``.
    """
    if E_op(g, m):
        raise NotASymmetry(f"E(g) != 0 for g = {render(g)}")
    if d_ == 0 and g.variables() & {Z, ZBAR}:
        lead = g.coeff(next(iter(Q.terms)))
        if lead and g == Q * lead:
            return classical_laws(0, 1, m)
        raise NoConservationLaw("degree-0 generator outside span{q}")
    if _mixed(g):
        raise NoConservationLaw("symmetry without conservation law in the mixed-free class")
    if not is_homogeneous(g, d_):
        raise ValueError(f"g is not weighted-homogeneous of degree {d_}")
    return build_phi(g, d_, m)


__all__ = [
    "GenSymmetry",
    "LieResidual",
    "NoConservationLaw",
    "NotASymmetry",
    "lie_check",
    "lie_derivative",
    "noether_pair",
    "symmetry_from_generating",
    "trivial_symmetry_check",
    "vector_from_generating",
]
