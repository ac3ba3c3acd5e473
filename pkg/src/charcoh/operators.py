"""Total-derivative frame on the infinite prolongation.

``e_minus1`` is d/dz along solutions::

    e_{-1} = d/dz + u0 d/du + sum u_{i+1} d/du_i - sum conj(T^i) d/dub_i

with ``T^i = (e_{-1})^i f``.  ``e_minus1_bar`` is its conjugate and ``E_op``
is the linearized operator ``ebar(e(A)) + f_u*A``.
"""

from __future__ import annotations

import threading
from math import comb

from .jetring import DiffPoly, FTower, PotentialModel, U, Uj, UjBar, Z, ZBAR, partial, reduce
from .jetring.poly import zero


class TCache:
    """Append-only table of ``T^i`` reduced under a fixed model."""

    def __init__(self, model: PotentialModel) -> None:
        self.model = model
        self._table: list[DiffPoly] = [DiffPoly.var(FTower(0))]
        self._conj: dict[int, DiffPoly] = {}
        self._lock = threading.Lock()

    def get(self, i: int) -> DiffPoly:
        if i < 0:
            raise ValueError("T^i needs i >= 0")
        if i < len(self._table):
            return self._table[i]
        with self._lock:
            while len(self._table) <= i:
                n = len(self._table) - 1
                # T^{n+1} = sum_j C(n, j) u_{n-j} T^j_u
                acc = zero()
                for j in range(n + 1):
                    acc = acc + comb(n, j) * DiffPoly.var(Uj(n - j)) * partial(self._table[j], U)
                self._table.append(reduce(acc, self.model))
        return self._table[i]

    def conj(self, i: int) -> DiffPoly:
        c = self._conj.get(i)
        if c is None:
            c = self.get(i).conjugate()
            self._conj[i] = c
        return c


_caches: dict[PotentialModel, TCache] = {}
_caches_lock = threading.Lock()


def tcache(model: PotentialModel) -> TCache:
    c = _caches.get(model)
    if c is None:
        with _caches_lock:
            c = _caches.setdefault(model, TCache(model))
    return c


def T(i: int, cache_or_model: TCache | PotentialModel) -> DiffPoly:
    cache = cache_or_model if isinstance(cache_or_model, TCache) else tcache(cache_or_model)
    return cache.get(i)


def e_minus1(p: DiffPoly, m: PotentialModel) -> DiffPoly:
    cache = tcache(m)
    out = zero()
    for v in p.variables():
        if v.is_param():
            continue
        if v.is_tower():
            continue  # handled through U
        dp = partial(p, v)
        if v == Z:
            out = out + dp
        elif v == ZBAR:
            continue
        elif v.is_holomorphic_jet():
            out = out + DiffPoly.var(Uj(v.n + 1)) * dp
        elif v.is_antiholomorphic_jet():
            out = out - cache.conj(v.n) * dp
    if U in p.variables() or any(v.is_tower() for v in p.variables()):
        out = out + DiffPoly.var(Uj(0)) * partial(p, U)
    return reduce(out, m)


def e_minus1_bar(p: DiffPoly, m: PotentialModel) -> DiffPoly:
    cache = tcache(m)
    out = zero()
    for v in p.variables():
        if v.is_param() or v.is_tower():
            continue
        dp = partial(p, v)
        if v == ZBAR:
            out = out + dp
        elif v == Z:
            continue
        elif v.is_antiholomorphic_jet():
            out = out + DiffPoly.var(UjBar(v.n + 1)) * dp
        elif v.is_holomorphic_jet():
            out = out - cache.get(v.n) * dp
    if U in p.variables() or any(v.is_tower() for v in p.variables()):
        out = out + DiffPoly.var(UjBar(0)) * partial(p, U)
    return reduce(out, m)


def e_minus1_pow(p: DiffPoly, n: int, m: PotentialModel) -> DiffPoly:
    for _ in range(n):
        p = e_minus1(p, m)
    return p


def e_minus1_bar_pow(p: DiffPoly, n: int, m: PotentialModel) -> DiffPoly:
    for _ in range(n):
        p = e_minus1_bar(p, m)
    return p


def E_op(p: DiffPoly, m: PotentialModel) -> DiffPoly:
    """The linearized operator ``ebar(e(p)) + f_u*p``."""
    return reduce(e_minus1_bar(e_minus1(p, m), m) + DiffPoly.var(FTower(1)) * p, m)
