"""Exact sparse polynomials over the rationals in the boundary/loop parameters.

A monomial is a sorted tuple of ``(name, exponent)`` pairs with positive
exponents; the empty tuple is 1.  A :class:`Poly` maps monomials to
``Fraction`` coefficients and never stores zero terms, so equal
polynomials compare equal structurally.
"""

from __future__ import annotations

from fractions import Fraction

from .params import PARAM_ORDER, UnboundParameter

Mono = tuple  # tuple[tuple[str, int], ...]

MONO_ONE: Mono = ()


def mono(name: str, exp: int = 1) -> Mono:
    return ((name, exp),)


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for name, e in b:
        out[name] = out.get(name, 0) + e
    return tuple(sorted(out.items(), key=lambda kv: PARAM_ORDER[kv[0]]))


def mono_eval(m: Mono, binding) -> complex:
    val = 1.0 + 0j
    for name, e in m:
        val *= binding[name] ** e
    return val


def mono_text(m: Mono) -> str:
    if not m:
        return "1"
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in m)


def _mono_key(m: Mono):
    return tuple((PARAM_ORDER[name], e) for name, e in m)


class Poly:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[m] = c
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero() -> "Poly":
        return _ZERO

    @staticmethod
    def one() -> "Poly":
        return _ONE

    @staticmethod
    def const(c) -> "Poly":
        return Poly({MONO_ONE: Fraction(c)})

    @staticmethod
    def param(name: str, exp: int = 1) -> "Poly":
        return Poly({mono(name, exp): Fraction(1)})

    @staticmethod
    def from_mono(m: Mono, c=1) -> "Poly":
        return Poly({m: Fraction(c)})

    # -- ring operations ----------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        p = Poly.__new__(Poly)
        p.terms = out
        p._hash = None
        return p

    def __neg__(self) -> "Poly":
        p = Poly.__new__(Poly)
        p.terms = {m: -c for m, c in self.terms.items()}
        p._hash = None
        return p

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            out = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = mono_mul(m1, m2)
                    s = out.get(m, 0) + c1 * c2
                    if s:
                        out[m] = s
                    else:
                        out.pop(m, None)
            p = Poly.__new__(Poly)
            p.terms = out
            p._hash = None
            return p
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return _ZERO
            p = Poly.__new__(Poly)
            p.terms = {m: c * other for m, c in self.terms.items()}
            p._hash = None
            return p
        return NotImplemented

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- evaluation and substitution ----------------------------------
    def evaluate(self, binding) -> complex:
        """Substitute bound complex values; raises UnboundParameter if one is missing."""
        total = 0j
        for m, c in self.terms.items():
            total += complex(c) * mono_eval(m, binding)
        return total

    def subs_params(self, mapping: dict) -> "Poly":
        """Rename parameters; collapsing renames merge like terms."""
        out = _ZERO
        for m, c in self.terms.items():
            renamed = MONO_ONE
            for name, e in m:
                renamed = mono_mul(renamed, mono(mapping.get(name, name), e))
            out = out + Poly.from_mono(renamed, c)
        return out

    def shift_params(self, delta: int) -> "Poly":
        """Substitute every parameter p by p + delta, expanding binomially."""
        out = _ZERO
        for m, c in self.terms.items():
            term = Poly.const(c)
            for name, e in m:
                base = Poly.param(name) + Poly.const(delta)
                for _ in range(e):
                    term = term * base
            out = out + term
        return out

    # -- serialisation -------------------------------------------------
    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_mono_key):
            c = self.terms[m]
            if m == MONO_ONE:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono_text(m))
            else:
                parts.append(f"{c}*{mono_text(m)}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [
            {"coeff": str(self.terms[m]), "exps": {name: e for name, e in m}}
            for m in sorted(self.terms, key=_mono_key)
        ]

    @staticmethod
    def from_json(data: list) -> "Poly":
        terms = {}
        for entry in data:
            m = tuple(sorted(entry["exps"].items(), key=lambda kv: PARAM_ORDER[kv[0]]))
            terms[m] = Fraction(entry["coeff"])
        return Poly(terms)

    def __repr__(self):
        return f"Poly({self.text()})"


_ZERO = Poly()
_ONE = Poly({MONO_ONE: Fraction(1)})
