"""Exterior algebra over the coframe ``zeta, zetab, eta_0, eta_i, etab_i``.

Letters are small integers ordered ``zeta < zetab < eta0 < eta1 < etab1 < eta2 < ...``;
a wedge word is a strictly increasing tuple of letters.  Structure equations::

    d zeta = 0
    d eta_0 = zeta^eta_1 + zetab^etab_1
    d eta_i = -eta_{i+1}^zeta + tau^{i-1}^zetab          (i >= 1)
    tau^i = sum_j C(i, j) T^j_u eta_{i-j}
"""

from __future__ import annotations

import json
from math import comb
from typing import Iterable, Mapping, Optional

from .jetring import DiffPoly, GaussScalar, PotentialModel, U, Uj, UjBar, partial, reduce, render
from .jetring.poly import PolyLike, mono_wd, to_poly
from .jetring.syntax import to_json_obj
from .operators import T, e_minus1, e_minus1_bar

ZETA = 0
ZETA_BAR = 1
ETA0 = 2


def eta(i: int) -> int:
    if i < 0:
        raise ValueError("eta index must be >= 0")
    return ETA0 if i == 0 else 2 * i + 1


def eta_bar(i: int) -> int:
    if i < 1:
        raise ValueError("etab index must be >= 1")
    return 2 * i + 2


def letter_index(a: int) -> int:
    """Jet index of an eta/etab letter (0 for eta0)."""
    if a < ETA0:
        raise ValueError("not an eta letter")
    if a == ETA0:
        return 0
    return (a - 1) // 2 if a % 2 else (a - 2) // 2


def is_eta(a: int) -> bool:
    return a == ETA0 or (a > ETA0 and a % 2 == 1)


def is_eta_bar(a: int) -> bool:
    return a > ETA0 and a % 2 == 0


def letter_conj(a: int) -> int:
    if a == ZETA:
        return ZETA_BAR
    if a == ZETA_BAR:
        return ZETA
    if a == ETA0:
        return ETA0
    i = letter_index(a)
    return eta_bar(i) if is_eta(a) else eta(i)


def letter_wd(a: int) -> int:
    if a == ZETA:
        return -1
    if a == ZETA_BAR:
        return 1
    if a == ETA0:
        return 0
    i = letter_index(a)
    return i if is_eta(a) else -i


def letter_name(a: int) -> str:
    if a == ZETA:
        return "zeta"
    if a == ZETA_BAR:
        return "zetab"
    i = letter_index(a)
    return f"eta{i}" if is_eta(a) else f"etab{i}"


def letter_from_name(s: str) -> int:
    if s == "zeta":
        return ZETA
    if s == "zetab":
        return ZETA_BAR
    if s.startswith("etab"):
        return eta_bar(int(s[4:]))
    if s.startswith("eta"):
        return eta(int(s[3:]))
    raise ValueError(f"unknown coframe letter {s!r}")


def _latex_letter(a: int) -> str:
    if a == ZETA:
        return r"\zeta"
    if a == ZETA_BAR:
        return r"\bar{\zeta}"
    i = letter_index(a)
    return rf"\eta_{{{i}}}" if is_eta(a) else rf"\bar{{\eta}}_{{{i}}}"


def _sort_word(letters: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Sort letters, returning (sign, word); sign 0 if a letter repeats."""
    w = list(letters)
    sign = 1
    # insertion sort counting transpositions
    for k in range(1, len(w)):
        j = k
        while j > 0 and w[j - 1] > w[j]:
            w[j - 1], w[j] = w[j], w[j - 1]
            sign = -sign
            j -= 1
    for k in range(1, len(w)):
        if w[k] == w[k - 1]:
            return 0, ()
    return sign, tuple(w)


class DiffForm:
    """Homogeneous-degree differential form ``{wedge word: DiffPoly}``."""

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: Optional[Mapping[tuple[int, ...], PolyLike]] = None) -> None:
        self.degree = degree
        clean: dict[tuple[int, ...], DiffPoly] = {}
        for word, c in (terms or {}).items():
            if len(word) != degree:
                raise ValueError("word length does not match form degree")
            sign, w = _sort_word(word)
            if sign == 0:
                continue
            c = to_poly(c)
            if sign < 0:
                c = -c
            s = clean.get(w)
            clean[w] = c if s is None else s + c
        self._terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def letter(cls, a: int, coeff: PolyLike = 1) -> DiffForm:
        return cls(1, {(a,): coeff})

    @classmethod
    def function(cls, F: PolyLike) -> DiffForm:
        return cls(0, {(): F})

    @property
    def terms(self) -> dict[tuple[int, ...], DiffPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, *letters: int) -> DiffPoly:
        sign, w = _sort_word(letters)
        if sign == 0:
            return DiffPoly()
        c = self._terms.get(w, DiffPoly())
        return c if sign > 0 else -c

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffForm):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self._terms.items())))

    def _check(self, other: DiffForm) -> None:
        if self.degree != other.degree and self._terms and other._terms:
            raise ValueError("cannot add forms of different degree")

    def __add__(self, other: DiffForm) -> DiffForm:
        if not isinstance(other, DiffForm):
            return NotImplemented
        self._check(other)
        deg = self.degree if self._terms else other.degree
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out[w] + c if w in out else c
        return DiffForm(deg, out)

    def __neg__(self) -> DiffForm:
        return DiffForm(self.degree, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: DiffForm) -> DiffForm:
        return self + (-other)

    def __mul__(self, c: PolyLike) -> DiffForm:
        c = to_poly(c)
        return DiffForm(self.degree, {w: a * c for w, a in self._terms.items()})

    __rmul__ = __mul__

    def wedge(self, other: DiffForm) -> DiffForm:
        out: dict[tuple[int, ...], DiffPoly] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                sign, w = _sort_word(w1 + w2)
                if sign == 0:
                    continue
                c = c1 * c2
                if sign < 0:
                    c = -c
                out[w] = out[w] + c if w in out else c
        return DiffForm(self.degree + other.degree, out)

    __xor__ = wedge

    def conjugate(self) -> DiffForm:
        out = {}
        for w, c in self._terms.items():
            out[tuple(letter_conj(a) for a in w)] = c.conjugate()
        return DiffForm(self.degree, out)

    def map_coeffs(self, fn) -> DiffForm:
        return DiffForm(self.degree, {w: fn(c) for w, c in self._terms.items()})

    def render(self, format: str = "text") -> str:
        if format == "json":
            return json.dumps(self.to_json_obj(), separators=(",", ":"))
        if not self._terms:
            return "0"
        parts = []
        for w, c in sorted(self._terms.items()):
            if format == "latex":
                word = r"\wedge ".join(_latex_letter(a) for a in w) or "1"
                parts.append(rf"\left({render(c, 'latex')}\right) {word}")
            else:
                word = "^".join(letter_name(a) for a in w) or "1"
                parts.append(f"({render(c)})*{word}")
        return " + ".join(parts)

    def to_json_obj(self) -> list:
        return [
            {"word": [letter_name(a) for a in w], "coeff": to_json_obj(c)}
            for w, c in sorted(self._terms.items())
        ]

    def __repr__(self) -> str:
        return f"DiffForm({self.degree}, {self.render()!r})"


def zero_form(degree: int) -> DiffForm:
    return DiffForm(degree)


def form_weighted_degree(w: DiffForm):
    """Common weighted degree of all (letter word, coefficient monomial) pairs."""
    from .jetring import ANY_DEGREE, INHOMOGENEOUS

    degs = set()
    for word, c in w.items():
        base = sum(letter_wd(a) for a in word)
        for m, _ in c.items():
            degs.add(base + mono_wd(m))
    if not degs:
        return ANY_DEGREE
    return degs.pop() if len(degs) == 1 else INHOMOGENEOUS


# -- exterior derivative -----------------------------------------------------


def d_function(F: PolyLike, m: PotentialModel) -> DiffForm:
    """``dF = e(F) zeta + ebar(F) zetab + F_u eta0 + sum F_{u_{i-1}} eta_i + conj terms``."""
    F = to_poly(F)
    terms: dict[tuple[int, ...], DiffPoly] = {
        (ZETA,): e_minus1(F, m),
        (ZETA_BAR,): e_minus1_bar(F, m),
        (ETA0,): reduce(partial(F, U), m),
    }
    for v in F.variables():
        if v.is_holomorphic_jet():
            terms[(eta(v.n + 1),)] = partial(F, v)
        elif v.is_antiholomorphic_jet():
            terms[(eta_bar(v.n + 1),)] = partial(F, v)
    return DiffForm(1, terms)


def tau(i: int, m: PotentialModel) -> DiffForm:
    if i < 0:
        raise ValueError("tau needs i >= 0")
    terms = {}
    for j in range(i + 1):
        terms[(eta(i - j),)] = reduce(comb(i, j) * partial(T(j, m), U), m)
    return DiffForm(1, terms)


def _d_letter(a: int, m: PotentialModel) -> DiffForm:
    if a in (ZETA, ZETA_BAR):
        return DiffForm(2)
    if a == ETA0:
        return DiffForm(2, {(ZETA, eta(1)): 1, (ZETA_BAR, eta_bar(1)): 1})
    i = letter_index(a)
    out = -DiffForm.letter(eta(i + 1)).wedge(DiffForm.letter(ZETA)) + tau(i - 1, m).wedge(
        DiffForm.letter(ZETA_BAR)
    )
    return out if is_eta(a) else out.conjugate()


def d_form(w: DiffForm, m: PotentialModel) -> DiffForm:
    """Exterior derivative via the graded Leibniz rule."""
    if w.degree == 0:
        return d_function(w.coeff(), m)
    out = DiffForm(w.degree + 1)
    letter_cache: dict[int, DiffForm] = {}
    for word, c in w.items():
        out = out + d_function(c, m).wedge(DiffForm(w.degree, {word: 1}))
        for k, a in enumerate(word):
            if a not in letter_cache:
                letter_cache[a] = _d_letter(a, m)
            da = letter_cache[a]
            if da.is_zero():
                continue
            left = DiffForm(k, {word[:k]: 1})
            right = DiffForm(len(word) - k - 1, {word[k + 1 :]: 1})
            piece = left.wedge(da).wedge(right) * c
            out = out + (piece if k % 2 == 0 else -piece)
    return out.map_coeffs(lambda c: reduce(c, m))


def d(obj, m: PotentialModel) -> DiffForm:
    if isinstance(obj, DiffForm):
        return d_form(obj, m)
    return d_function(obj, m)


# -- J, psi, interior product, ideal -----------------------------------------

_I = GaussScalar(0, 1)


def J_apply(w: DiffForm) -> DiffForm:
    if w.degree != 1:
        raise ValueError("J acts on 1-forms only")
    out = {}
    for (a,), c in w.items():
        if a == ETA0:
            out[(a,)] = c
        elif a == ZETA or is_eta(a):
            out[(a,)] = c * _I
        else:
            out[(a,)] = c * (-_I)
    return DiffForm(1, out)


def psi() -> DiffForm:
    """``Im(zeta ^ omega_1) = -(i/2)(zeta^eta1 - zetab^etab1)``."""
    h = GaussScalar(0, -1) / 2
    return DiffForm(2, {(ZETA, eta(1)): h, (ZETA_BAR, eta_bar(1)): -h})


class FrameVector:
    """Vector field in the frame dual to the coframe; keyed by the dual letter."""

    def __init__(self, components: Optional[Mapping[int, PolyLike]] = None) -> None:
        self.components = {a: to_poly(c) for a, c in (components or {}).items() if to_poly(c)}

    @classmethod
    def named(cls, **named: PolyLike) -> FrameVector:
        """Components by tag: ``Eminus1``, ``Eminus1Bar``, ``E0``, ``E<i>``, ``Ebar<i>``."""
        comps = {}
        for tag, c in named.items():
            comps[frame_tag_letter(tag)] = c
        return cls(comps)

    def __getitem__(self, a: int) -> DiffPoly:
        return self.components.get(a, DiffPoly())

    def depth(self) -> int:
        idx = [letter_index(a) for a in self.components if a >= ETA0]
        return max(idx, default=0)


def frame_tag_letter(tag: str) -> int:
    if tag == "Eminus1":
        return ZETA
    if tag == "Eminus1Bar":
        return ZETA_BAR
    if tag == "E0":
        return ETA0
    if tag.startswith("Ebar"):
        return eta_bar(int(tag[4:]))
    if tag.startswith("E"):
        return eta(int(tag[1:]))
    raise ValueError(f"unknown frame tag {tag!r}")


def interior(v: FrameVector, w: DiffForm) -> DiffForm:
    """Contraction ``v -| w`` (antiderivation of degree -1)."""
    if w.degree == 0:
        return DiffForm(0)
    out: dict[tuple[int, ...], DiffPoly] = {}
    for word, c in w.items():
        for k, a in enumerate(word):
            comp = v.components.get(a)
            if comp is None:
                continue
            rest = word[:k] + word[k + 1 :]
            val = comp * c
            if k % 2:
                val = -val
            out[rest] = out[rest] + val if rest in out else val
    return DiffForm(w.degree - 1, out)


def mod_ideal(w: DiffForm) -> DiffForm:
    """Drop every word containing an eta/etab letter."""
    return DiffForm(w.degree, {word: c for word, c in w.items() if all(a < ETA0 for a in word)})


def symmetry_vector(depth: int, m: PotentialModel) -> FrameVector:
    """Infinitesimal generator of the S^1 action ``z -> z/lambda, u_j -> lambda^{j+1} u_j``.

    ``v = i(q e0 + zb ebar_{-1} - z e_{-1} + sum e^j(q) e_j + ebar^j(q) ebar_j)``.
    """
    from .jetring import Z, ZBAR

    q = DiffPoly.var(Z) * DiffPoly.var(Uj(0)) - DiffPoly.var(ZBAR) * DiffPoly.var(UjBar(0))
    comps = {
        ZETA: -DiffPoly.var(Z) * _I,
        ZETA_BAR: DiffPoly.var(ZBAR) * _I,
        ETA0: q * _I,
    }
    hol = q
    anti = q
    for j in range(1, depth + 1):
        hol = e_minus1(hol, m)
        anti = e_minus1_bar(anti, m)
        comps[eta(j)] = hol * _I
        comps[eta_bar(j)] = anti * _I
    return FrameVector(comps)
