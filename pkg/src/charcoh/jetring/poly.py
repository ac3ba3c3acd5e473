"""Sparse differential polynomials on the infinite jet space.

Variables are the base coordinates ``z``, ``zb``, the dependent variable ``u``,
the holomorphic jets ``u_j`` and their conjugates ``ub_j``, named parameters,
and the abstract potential tower ``F(n) = f^(n)(u)`` (``F(-1)`` is an
antiderivative of ``f``).  Coefficients are exact Gaussian rationals.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

from .scalar import GaussScalar, ScalarLike

# Rank of each variable family in the canonical variable order:
# params < F(-1) < F(0) < ... < U < Z < Zbar < u0 < ub0 < u1 < ub1 < ...
_PARAM, _TOWER, _U, _Z, _ZBAR, _JET = range(6)


class Var(NamedTuple):
    """Variable identifier; tuple comparison is the canonical variable order."""

    rank: int
    index: int = 0
    name: str = ""

    @property
    def kind(self) -> str:
        if self.rank == _JET:
            return "UjBar" if self.index % 2 else "Uj"
        return ("Param", "FTower", "U", "Z", "Zbar")[self.rank]

    @property
    def n(self) -> int:
        """Jet index for ``Uj``/``UjBar``, derivative order for ``FTower``."""
        if self.rank == _JET:
            return self.index // 2
        return self.index

    def is_jet(self) -> bool:
        return self.rank == _JET

    def is_holomorphic_jet(self) -> bool:
        return self.rank == _JET and self.index % 2 == 0

    def is_antiholomorphic_jet(self) -> bool:
        return self.rank == _JET and self.index % 2 == 1

    def is_param(self) -> bool:
        return self.rank == _PARAM

    def is_tower(self) -> bool:
        return self.rank == _TOWER

    def conjugate(self) -> Var:
        if self.rank == _Z:
            return ZBAR
        if self.rank == _ZBAR:
            return Z
        if self.rank == _JET:
            return Var(_JET, self.index ^ 1)
        return self

    @property
    def wd(self) -> int:
        if self.rank == _Z:
            return -1
        if self.rank == _ZBAR:
            return 1
        if self.rank == _JET:
            j = self.index // 2
            return -(j + 1) if self.index % 2 else j + 1
        return 0

    def __repr__(self) -> str:
        return f"Var<{var_name(self)}>"


def Param(name: str) -> Var:
    return Var(_PARAM, 0, name)


def FTower(n: int) -> Var:
    if n < -1:
        raise ValueError("tower index must be >= -1")
    return Var(_TOWER, n)


def Uj(n: int) -> Var:
    if n < 0:
        raise ValueError("jet index must be >= 0")
    return Var(_JET, 2 * n)


def UjBar(n: int) -> Var:
    if n < 0:
        raise ValueError("jet index must be >= 0")
    return Var(_JET, 2 * n + 1)


U = Var(_U)
Z = Var(_Z)
ZBAR = Var(_ZBAR)


def var_name(v: Var) -> str:
    """Ascii token for ``v`` in the expression grammar."""
    if v.rank == _PARAM:
        return v.name
    if v.rank == _TOWER:
        return {-1: "Sf", 0: "f", 1: "fu"}.get(v.index, f"F{v.index}")
    if v.rank == _U:
        return "u"
    if v.rank == _Z:
        return "z"
    if v.rank == _ZBAR:
        return "zb"
    j = v.index // 2
    return f"ub{j}" if v.index % 2 else f"u{j}"


# A monomial is a tuple of (Var, exponent) pairs sorted by Var, exponents > 0.
Monomial = tuple


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_wd(m: Monomial) -> int:
    return sum(v.wd * e for v, e in m)


def mono_conj(m: Monomial) -> Monomial:
    return tuple(sorted((v.conjugate(), e) for v, e in m))


def _mono_cmp(a: Monomial, b: Monomial) -> int:
    """Graded-lex: lower total degree first; ties broken by the highest variables."""
    da, db = mono_degree(a), mono_degree(b)
    if da != db:
        return -1 if da < db else 1
    for (va, ea), (vb, eb) in zip(reversed(a), reversed(b)):
        if va != vb:
            return -1 if va > vb else 1
        if ea != eb:
            return -1 if ea > eb else 1
    return 0


mono_key = functools.cmp_to_key(_mono_cmp)

PolyLike = Union["DiffPoly", GaussScalar, int, Fraction]


class DiffPoly:
    """Immutable sparse polynomial ``{monomial: GaussScalar}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, ScalarLike] | None = None) -> None:
        clean: dict[Monomial, GaussScalar] = {}
        if terms:
            for m, c in terms.items():
                c = GaussScalar.coerce(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, GaussScalar]) -> DiffPoly:
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: ScalarLike) -> DiffPoly:
        c = GaussScalar.coerce(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, v: Var, exp: int = 1) -> DiffPoly:
        if exp == 0:
            return cls.const(1)
        return cls._raw({((v, exp),): GaussScalar(1)})

    @classmethod
    def coerce(cls, x: PolyLike) -> DiffPoly:
        if isinstance(x, DiffPoly):
            return x
        return cls.const(x)

    @property
    def terms(self) -> dict[Monomial, GaussScalar]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, GaussScalar]]:
        return iter(self._terms.items())

    def sorted_items(self) -> list[tuple[Monomial, GaussScalar]]:
        return sorted(self._terms.items(), key=lambda t: mono_key(t[0]))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def variables(self) -> set[Var]:
        return {v for m in self._terms for v, _ in m}

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> GaussScalar:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((), GaussScalar(0))

    def coeff(self, m: Monomial) -> GaussScalar:
        return self._terms.get(m, GaussScalar(0))

    def leading(self) -> tuple[Monomial, GaussScalar]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_items()[0]

    # -- ring operations -------------------------------------------------
    def __add__(self, other: PolyLike) -> DiffPoly:
        try:
            o = DiffPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if len(o._terms) > len(self._terms):
            big, small = o._terms, self._terms
        else:
            big, small = self._terms, o._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return DiffPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> DiffPoly:
        return DiffPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: PolyLike) -> DiffPoly:
        try:
            o = DiffPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: PolyLike) -> DiffPoly:
        return DiffPoly.coerce(other) - self

    def scale(self, c: ScalarLike) -> DiffPoly:
        c = GaussScalar.coerce(c)
        if not c:
            return DiffPoly._raw({})
        return DiffPoly._raw({m: a * c for m, a in self._terms.items()})

    def __mul__(self, other: PolyLike) -> DiffPoly:
        if isinstance(other, (GaussScalar, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        if len(other._terms) == 1 and () in other._terms:
            return self.scale(other._terms[()])
        out: dict[Monomial, GaussScalar] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                c = c1 * c2
                s = out.get(m)
                out[m] = c if s is None else s + c
        return DiffPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> DiffPoly:
        if isinstance(other, DiffPoly):
            other = other.constant_value()
        inv = GaussScalar(1) / GaussScalar.coerce(other)
        return self.scale(inv)

    def __pow__(self, n: int) -> DiffPoly:
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = DiffPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DiffPoly):
            return self._terms == other._terms
        if isinstance(other, (GaussScalar, int, Fraction)):
            return self._terms == DiffPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        from .syntax import render

        return f"DiffPoly({render(self)!r})"

    def __str__(self) -> str:
        from .syntax import render

        return render(self)

    # -- structure -------------------------------------------------------
    def conjugate(self) -> DiffPoly:
        return DiffPoly._raw({mono_conj(m): c.conjugate() for m, c in self._terms.items()})

    def real_part(self) -> DiffPoly:
        """``p + conj(p)``."""
        return self + self.conjugate()

    def map_terms(self, fn) -> DiffPoly:
        out = DiffPoly._raw({})
        for m, c in self._terms.items():
            out = out + fn(m, c)
        return out

    def split_params(self) -> dict[Monomial, DiffPoly]:
        """Group as ``{non-parameter monomial: parameter polynomial}``."""
        groups: dict[Monomial, dict[Monomial, GaussScalar]] = {}
        for m, c in self._terms.items():
            pm = tuple((v, e) for v, e in m if v.rank == _PARAM)
            rest = tuple((v, e) for v, e in m if v.rank != _PARAM)
            groups.setdefault(rest, {})[pm] = c
        return {k: DiffPoly._raw(v) for k, v in groups.items()}

    def subs(self, mapping: Mapping[Var, PolyLike]) -> DiffPoly:
        """Substitute polynomials for variables."""
        mapping = {v: DiffPoly.coerce(p) for v, p in mapping.items()}
        cache: dict[tuple[Var, int], DiffPoly] = {}
        acc: dict[Monomial, GaussScalar] = {}
        out = DiffPoly._raw({})
        for m, c in self._terms.items():
            keep = []
            factor = None
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = mapping[v] ** e
                    factor = cache[key] if factor is None else factor * cache[key]
                else:
                    keep.append((v, e))
            if factor is None:
                acc[m] = acc[m] + c if m in acc else c
            else:
                out = out + factor * DiffPoly._raw({tuple(keep): c})
        return out + DiffPoly(acc)

    def evaluate(self, values: Mapping[Var, object]):
        """Numeric evaluation; values may be floats, complex, or numpy arrays."""
        total = 0
        for m, c in self._terms.items():
            term = complex(c) if c.im else float(c.re)
            for v, e in m:
                term = term * values[v] ** e
            total = total + term
        return total


def poly(x: PolyLike | Var) -> DiffPoly:
    if isinstance(x, Var):
        return DiffPoly.var(x)
    return DiffPoly.coerce(x)


def zero() -> DiffPoly:
    return DiffPoly._raw({})


def conjugate(p: DiffPoly) -> DiffPoly:
    return p.conjugate()


class _AnyDegree:
    """Weighted degree of the zero polynomial: homogeneous of every degree."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return isinstance(other, int) or other is self

    def __hash__(self) -> int:
        return hash("ANY_DEGREE")

    def __repr__(self) -> str:
        return "ANY_DEGREE"


ANY_DEGREE = _AnyDegree()
INHOMOGENEOUS = "inhomogeneous"


def weighted_degree(p: DiffPoly):
    """Common weighted degree of all monomials, ``INHOMOGENEOUS``, or ``ANY_DEGREE`` for 0."""
    degrees = {mono_wd(m) for m, _ in p.items()}
    if not degrees:
        return ANY_DEGREE
    if len(degrees) == 1:
        return degrees.pop()
    return INHOMOGENEOUS


def is_homogeneous(p: DiffPoly, d: int) -> bool:
    return weighted_degree(p) == d


def partial(p: DiffPoly, v: Var) -> DiffPoly:
    """Partial derivative; ``d/du`` applies the chain rule to the tower ``F(n)``."""
    if v.is_tower():
        raise ValueError("differentiate the tower through U, not directly")
    out: dict[Monomial, GaussScalar] = {}

    def put(m: Monomial, c: GaussScalar) -> None:
        s = out.get(m)
        out[m] = c if s is None else s + c

    for m, c in p.items():
        for k, (w, e) in enumerate(m):
            if w == v:
                rest = list(m)
                if e == 1:
                    del rest[k]
                else:
                    rest[k] = (w, e - 1)
                put(tuple(rest), c * e)
            elif v == U and w.is_tower():
                rest = dict(m)
                if e == 1:
                    del rest[w]
                else:
                    rest[w] = e - 1
                nxt = FTower(w.index + 1)
                rest[nxt] = rest.get(nxt, 0) + 1
                put(tuple(sorted(rest.items())), c * e)
    return DiffPoly._raw({m: c for m, c in out.items() if c})


def linear_combination(pairs: Iterable[tuple[PolyLike, DiffPoly]]) -> DiffPoly:
    out = zero()
    for c, p in pairs:
        out = out + DiffPoly.coerce(c) * p
    return out


to_poly = poly
