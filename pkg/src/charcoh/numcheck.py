"""Floating-point checks along y-independent solutions.

For ``u = u(x)`` the equation ``u_{z zb} = -f(u)`` becomes ``u'' = -4 f(u)``
and the holomorphic jets are ``u_j = 2^{-(j+1)} u^{(j+1)}``.  A generator
``P`` gives ``a = P + conj(P)`` along the trajectory, which must satisfy the
linearized equation ``a'' + 4 f_u(u) a = 0``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .jetring import DiffPoly, FTower, PotentialModel, U, Uj, UjBar, Z, ZBAR, render
from .operators import e_minus1


@dataclass(frozen=True)
class Potential:
    name: str
    deriv: Callable[[int, np.ndarray], np.ndarray]  # n-th derivative of f, n >= 0
    antiderivative: Callable[[np.ndarray], np.ndarray]
    model: PotentialModel

    def f(self, u):
        return self.deriv(0, u)

    def f_u(self, u):
        return self.deriv(1, u)


def _sinh_deriv(n: int, u):
    return np.sinh(u) if n % 2 == 0 else np.cosh(u)


def _tz_deriv(n: int, u):
    return np.exp(u) - (-2.0) ** n * np.exp(-2.0 * u)


SINH = Potential("sinh", _sinh_deriv, np.cosh, PotentialModel.rule(0, 1))
TZITZEICA = Potential(
    "tzitzeica",
    _tz_deriv,
    lambda u: np.exp(u) + 0.5 * np.exp(-2.0 * u),
    PotentialModel.rule(-1, 2),
)
POTENTIALS = {p.name: p for p in (SINH, TZITZEICA)}


class DivergenceError(RuntimeError):
    def __init__(self, x: float, step: int) -> None:
        super().__init__(f"non-finite state at x = {x:g} (step {step})")
        self.x = x
        self.step = step


@dataclass(frozen=True)
class OdeSetup:
    potential: Potential
    u0: float = 1.0
    v0: float = 0.2
    h: float = 1e-2
    N: int = 100

    def with_step(self, h: float, length: Optional[float] = None) -> OdeSetup:
        length = self.h * self.N if length is None else length
        return OdeSetup(self.potential, self.u0, self.v0, h, int(round(length / h)))


@dataclass
class Trajectory:
    x: np.ndarray
    u: np.ndarray
    v: np.ndarray  # u'

    def energy(self, pot: Potential) -> np.ndarray:
        return 0.5 * self.v**2 + 4.0 * pot.antiderivative(self.u)


def integrate(setup: OdeSetup) -> Trajectory:
    """Classical RK4 for ``u'' = -4 f(u)``."""
    if setup.h <= 0 or setup.N < 2:
        raise ValueError("need h > 0 and N >= 2")
    f = setup.potential.f
    h, N = setup.h, setup.N
    x = np.arange(N + 1) * h
    u = np.empty(N + 1)
    v = np.empty(N + 1)
    u[0], v[0] = setup.u0, setup.v0
    for k in range(N):
        uk, vk = u[k], v[k]
        k1u, k1v = vk, -4.0 * f(uk)
        k2u, k2v = vk + 0.5 * h * k1v, -4.0 * f(uk + 0.5 * h * k1u)
        k3u, k3v = vk + 0.5 * h * k2v, -4.0 * f(uk + 0.5 * h * k2u)
        k4u, k4v = vk + h * k3v, -4.0 * f(uk + h * k3u)
        u[k + 1] = uk + h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u)
        v[k + 1] = vk + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
        if not (math.isfinite(u[k + 1]) and math.isfinite(v[k + 1])):
            raise DivergenceError(x[k + 1], k + 1)
    return Trajectory(x, u, v)


def energy_drift(traj: Trajectory, pot: Potential) -> float:
    E = traj.energy(pot)
    return float(np.max(np.abs(E - E[0])))


class JetSampler:
    """Jets along y-independent solutions as polynomials in ``u``, ``u_0`` and the tower.

    ``u_1 = -f`` closes the system; higher jets follow from ``u_{j+1} = e_{-1}(u_j)``.
    """

    def __init__(self) -> None:
        self._table: list[DiffPoly] = [DiffPoly.var(Uj(0)), -DiffPoly.var(FTower(0))]
        self._generic = PotentialModel.generic()

    def closure(self, j: int) -> DiffPoly:
        while len(self._table) <= j:
            nxt = e_minus1(self._table[-1], self._generic)
            self._table.append(nxt.subs({Uj(1): self._table[1]}))
        return self._table[j]

    def values(self, P: DiffPoly, traj: Trajectory, pot: Potential) -> dict:
        u = traj.u
        u0 = 0.5 * traj.v
        base = {U: u, Uj(0): u0}
        tower_needed = set()
        jets_needed = set()
        for v in P.variables():
            if v in (Z, ZBAR):
                raise ValueError("explicit z/zb is not supported on y-independent reductions")
            if v.is_jet():
                jets_needed.add(v.n)
            elif v.is_tower():
                tower_needed.add(v.index)
            elif v.is_param():
                raise ValueError(f"unbound parameter {v.name}")
        vals = dict(base)
        for j in sorted(jets_needed):
            c = self.closure(j)
            for tv in c.variables():
                if tv.is_tower():
                    tower_needed.add(tv.index)
        for n in tower_needed:
            vals[FTower(n)] = pot.deriv(n, u) if n >= 0 else pot.antiderivative(u)
        for j in sorted(jets_needed):
            val = self.closure(j).evaluate(vals)
            vals[Uj(j)] = val
            vals[UjBar(j)] = val
        return vals

    def evaluate(self, P: DiffPoly, traj: Trajectory, pot: Potential) -> np.ndarray:
        vals = self.values(P, traj, pot)
        out = np.asarray(P.evaluate(vals)) + np.zeros_like(traj.u)
        return out


_sampler = JetSampler()


@dataclass
class ResidualRow:
    h: float
    residual: float
    order: Optional[float] = None


@dataclass
class ResidualReport:
    P: DiffPoly
    potential: str
    rows: list[ResidualRow] = field(default_factory=list)
    samples: Optional[dict] = None

    @property
    def orders(self) -> list[float]:
        return [r.order for r in self.rows if r.order is not None]

    def to_json_obj(self) -> dict:
        return {
            "P": render(self.P),
            "potential": self.potential,
            "table": [{"h": r.h, "residual": r.residual, "order": r.order} for r in self.rows],
            "max_residual": max((r.residual for r in self.rows), default=0.0),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "u", "du", "a", "residual"])
        if self.samples:
            s = self.samples
            for row in zip(s["x"], s["u"], s["du"], s["a"], s["residual"]):
                w.writerow([f"{x:.17g}" for x in row])
        return buf.getvalue()


def _observed_orders(rows: list[ResidualRow]) -> None:
    for prev, cur in zip(rows, rows[1:]):
        if prev.residual > 0 and cur.residual > 0:
            cur.order = math.log(prev.residual / cur.residual) / math.log(prev.h / cur.h)


def linearized_residual(
    P: DiffPoly,
    setup: OdeSetup,
    hs: Sequence[float] = (2e-2, 1e-2, 5e-3),
    length: float = 1.0,
) -> ResidualReport:
    """Max of ``|D_h^2 a + 4 f_u(u) a|`` along RK4 trajectories for each step ``h``."""
    if P.variables() & {Z, ZBAR}:
        raise ValueError("explicit z/zb is not supported on y-independent reductions")
    pot = setup.potential
    A = P + P.conjugate()
    rep = ResidualReport(P, pot.name)
    for h in hs:
        traj = integrate(setup.with_step(h, length))
        a = _sampler.evaluate(A, traj, pot)
        d2 = (a[2:] - 2 * a[1:-1] + a[:-2]) / h**2
        res = d2 + 4.0 * pot.f_u(traj.u[1:-1]) * a[1:-1]
        rep.rows.append(ResidualRow(h, float(np.max(np.abs(res)))))
        rep.samples = {
            "x": traj.x[1:-1],
            "u": traj.u[1:-1],
            "du": traj.v[1:-1],
            "a": a[1:-1],
            "residual": res,
        }
    _observed_orders(rep.rows)
    return rep


def energy_orders(setup: OdeSetup, hs: Sequence[float] = (2e-2, 1e-2, 5e-3), length: float = 1.0) -> list[ResidualRow]:
    rows = [ResidualRow(h, energy_drift(integrate(setup.with_step(h, length)), setup.potential)) for h in hs]
    _observed_orders(rows)
    return rows


def jet_consistency(traj: Trajectory, pot: Potential) -> tuple[float, float]:
    """Max deviation of sampled ``u_0``, ``u_1`` from central differences of ``u``."""
    h = traj.x[1] - traj.x[0]
    u = traj.u
    fd_u0 = 0.5 * (u[2:] - u[:-2]) / (2 * h)
    fd_u1 = 0.25 * (u[2:] - 2 * u[1:-1] + u[:-2]) / h**2
    vals = _sampler.values(DiffPoly.var(Uj(0)) * DiffPoly.var(Uj(1)), traj, pot)
    e0 = float(np.max(np.abs(fd_u0 - vals[Uj(0)][1:-1])))
    e1 = float(np.max(np.abs(fd_u1 - vals[Uj(1)][1:-1])))
    return e0, e1


__all__ = [
    "DivergenceError",
    "JetSampler",
    "OdeSetup",
    "POTENTIALS",
    "Potential",
    "ResidualReport",
    "ResidualRow",
    "SINH",
    "TZITZEICA",
    "Trajectory",
    "energy_drift",
    "energy_orders",
    "integrate",
    "jet_consistency",
    "linearized_residual",
]
