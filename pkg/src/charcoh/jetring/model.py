"""Rewrite regimes for the potential tower ``f, f_u, f_uu, ...``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .poly import DiffPoly, FTower, PolyLike, Var, poly, zero


@dataclass(frozen=True)
class PotentialModel:
    """``Generic`` (``l1 is None``) or the rule ``f_uu = l1*f_u + l2*f``.

    ``l1`` and ``l2`` are polynomials in parameters only.
    """

    l1: Optional[DiffPoly] = None
    l2: Optional[DiffPoly] = None
    _table: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if (self.l1 is None) != (self.l2 is None):
            raise ValueError("rule needs both l1 and l2")
        for lam in (self.l1, self.l2):
            if lam is not None and any(not v.is_param() for v in lam.variables()):
                raise ValueError("rule coefficients may only involve parameters")

    @classmethod
    def generic(cls) -> PotentialModel:
        return cls()

    @classmethod
    def rule(cls, l1: PolyLike, l2: PolyLike) -> PotentialModel:
        return cls(poly(l1), poly(l2))

    @classmethod
    def beta(cls, beta: PolyLike) -> PotentialModel:
        """``f_uu = beta*f``."""
        return cls.rule(0, beta)

    @classmethod
    def tzitzeica(cls, alpha: PolyLike) -> PotentialModel:
        """``f_uu = alpha*f_u + 2*alpha^2*f``."""
        a = poly(alpha)
        return cls(a, 2 * a * a)

    @property
    def is_generic(self) -> bool:
        return self.l1 is None

    def params(self) -> set[Var]:
        if self.is_generic:
            return set()
        return self.l1.variables() | self.l2.variables()

    def tower_rewrite(self, n: int) -> tuple[DiffPoly, DiffPoly]:
        """``(a, b)`` with ``F(n) = a*f_u + b*f`` under the rule, ``n >= 0``."""
        if self.is_generic:
            raise ValueError("generic model has no tower rewrite")
        tab = self._table
        if not tab:
            tab[0] = (zero(), poly(1))
            tab[1] = (poly(1), zero())
        k = max(tab)
        while k < n:
            a1, b1 = tab[k]
            a0, b0 = tab[k - 1]
            # F(k+1) = l1*F(k) + l2*F(k-1)
            tab[k + 1] = (self.l1 * a1 + self.l2 * a0, self.l1 * b1 + self.l2 * b0)
            k += 1
        return tab[n]

    def describe(self) -> str:
        from .syntax import render

        if self.is_generic:
            return "generic"
        parts = []
        if self.l1:
            parts.append(f"({render(self.l1)})*fu")
        if self.l2:
            parts.append(f"({render(self.l2)})*f")
        return "fuu=" + (" + ".join(parts) if parts else "0")


def reduce(p: DiffPoly, m: PotentialModel) -> DiffPoly:
    """Eliminate every ``F(n)``, ``n >= 2``, using the model's rule."""
    if m.is_generic:
        return p
    high = {v for v in p.variables() if v.is_tower() and v.index >= 2}
    if not high:
        return p
    mapping = {}
    for v in high:
        a, b = m.tower_rewrite(v.index)
        mapping[v] = a * DiffPoly.var(FTower(1)) + b * DiffPoly.var(FTower(0))
    return p.subs(mapping)
