"""Fraction-free linear algebra over ``QQ(i)[params]``.

Matrix entries are parameter-only :class:`DiffPoly` values on the outside and
sympy ``PolyElement`` values on the inside.  Elimination is Bareiss-style with
exact division, so intermediate entries stay polynomial.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import QQ, QQ_I
from sympy.polys.rings import PolyRing

from .jetring import DiffPoly, GaussScalar, Var


def _qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


class ParamRing:
    """Bridge between parameter-only ``DiffPoly`` and a sympy polynomial ring."""

    def __init__(self, params: Iterable[Var]) -> None:
        self.params: list[Var] = sorted(set(params))
        self.ring = PolyRing([p.name for p in self.params], QQ_I)
        self.field = self.ring.to_field()
        self._pos = {p: k for k, p in enumerate(self.params)}

    def to_elem(self, p: DiffPoly):
        n = len(self.params)
        terms = {}
        for mono, c in p.items():
            exps = [0] * n
            for v, e in mono:
                if v not in self._pos:
                    raise ValueError(f"{v.name} is not a parameter of this ring")
                exps[self._pos[v]] = e
            terms[tuple(exps)] = QQ_I.new(QQ(c.re.numerator, c.re.denominator), QQ(c.im.numerator, c.im.denominator))
        return self.ring.from_dict(terms) if terms else self.ring.zero

    def from_elem(self, x) -> DiffPoly:
        terms = {}
        for exps, c in x.items():
            mono = tuple((self.params[k], e) for k, e in enumerate(exps) if e)
            terms[mono] = GaussScalar(_qq(c.x), _qq(c.y))
        return DiffPoly(terms)


def bareiss_echelon(rows: list[list], ring) -> tuple[list[list], list[int]]:
    """Row echelon form by fraction-free elimination; returns (rows, pivot columns).

    Pivots are chosen as the first nonzero entry in row order, so the result is
    deterministic for a given row/column order.
    """
    M = [list(r) for r in rows]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    pivots: list[int] = []
    prev = ring.one
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if M[i][c]), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        for i in range(r + 1, nrows):
            a = M[i][c]
            Mi = M[i]
            Mr = M[r]
            for j in range(c + 1, ncols):
                val = piv * Mi[j] - a * Mr[j]
                Mi[j] = val.exquo(prev) if val else val
            Mi[c] = ring.zero
        pivots.append(c)
        prev = piv
        r += 1
    return M[:r], pivots


def nullspace(rows: list[list], ncols: int, ring, field) -> list[list]:
    """Kernel vectors (polynomial, content-free) of the matrix ``rows``."""
    if not rows:
        return [[ring.one if j == k else ring.zero for j in range(ncols)] for k in range(ncols)]
    E, pivots = bareiss_echelon(rows, ring)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        x = [field.zero] * ncols
        x[f] = field.one
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            s = field.zero
            for j in range(c + 1, ncols):
                if E[r][j] and x[j]:
                    s = s + field(E[r][j]) * x[j]
            x[c] = -s / field(E[r][c])
        out.append(clear_denominators(x, ring))
    return out


def clear_denominators(vec: Sequence, ring) -> list:
    """Scale a fraction-field vector to a primitive polynomial vector."""
    den = ring.one
    for x in vec:
        den = den.lcm(x.denom)
    nums = [(x.numer * den).exquo(x.denom) for x in vec]
    g = ring.zero
    for n in nums:
        if n:
            g = n if not g else g.gcd(n)
    if g and g != ring.one:
        nums = [n.exquo(g) for n in nums]
    return nums


def canonical_span(vectors: list[list], ring, field) -> list[list]:
    """Unique basis of the span: reduced echelon form, each row made primitive.

    A row whose pivot is a nonzero constant is scaled so that pivot is 1.
    """
    if not vectors:
        return []
    ncols = len(vectors[0])
    R = [[field(x) for x in v] for v in vectors]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(R)) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = field.one / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                a = R[i][c]
                R[i] = [x - a * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    out = []
    for row, c in zip(R[:r], pivots):
        v = clear_denominators(row, ring)
        lead = v[c]
        if lead.is_ground:
            inv = ring.domain.quo(ring.domain.one, lead.LC)
            v = [x * inv for x in v]
        out.append(v)
    return out


def determinant(M: list[list], ring):
    """Determinant of a square matrix by Bareiss elimination."""
    n = len(M)
    if n == 0:
        return ring.one
    A = [list(r) for r in M]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not A[k][k]:
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return ring.zero
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = val.exquo(prev) if val else val
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


def minors_gcd(rows: list[list], ncols: int, ring, trials: int = 8, seed: int = 0):
    """A multiple of the gcd of all maximal (``ncols x ncols``) minors.

    Each trial shuffles the rows and runs fraction-free elimination; the last
    pivot is then the determinant of the ``ncols`` rows it selected, an actual
    maximal minor.  The gcd over trials is divisible by the true gcd and in
    practice equal to it; callers verify each factor independently.
    """
    rng = random.Random(seed)
    g = ring.zero
    if len(rows) < ncols:
        return ring.zero
    order = list(range(len(rows)))
    for _ in range(trials):
        E, pivots = bareiss_echelon([rows[i] for i in order], ring)
        if len(pivots) == ncols:
            det = E[-1][ncols - 1]
            g = det if not g else g.gcd(det)
        rng.shuffle(order)
    return g


__all__ = [
    "ParamRing",
    "bareiss_echelon",
    "canonical_span",
    "clear_denominators",
    "determinant",
    "minors_gcd",
    "nullspace",
]
