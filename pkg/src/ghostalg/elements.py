"""Linear combinations of diagrams with exact or numeric coefficients."""

from __future__ import annotations

import itertools

from .diagrams import Diagram, Variant, concat, identity_diagram, make_diagram, reflect
from .scalars import Poly, mono_eval


class Element:
    """Finite map from canonical diagrams to coefficients.

    ``mode`` is ``"exact"`` (Poly coefficients) or ``"numeric"`` (complex
    coefficients evaluated against ``binding``).  All values are
    immutable in spirit: operations return new elements.
    """

    __slots__ = ("n", "variant", "mode", "binding", "generalised", "terms")

    def __init__(self, n, variant, mode="exact", binding=None, generalised=False, terms=None):
        if mode == "numeric" and binding is None:
            raise ValueError("numeric mode requires a parameter binding")
        self.n = n
        self.variant = variant
        self.mode = mode
        self.binding = binding
        self.generalised = generalised
        self.terms = dict(terms) if terms else {}

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, n, variant, **kw):
        return cls(n, variant, **kw)

    @classmethod
    def from_diagram(cls, d: Diagram, coeff=None, **kw):
        el = cls(d.n, d.variant, **kw)
        if coeff is None:
            coeff = Poly.one() if el.mode == "exact" else 1.0 + 0j
        el.terms[d] = coeff
        return el

    @classmethod
    def identity(cls, n, variant: Variant, **kw):
        """Dense: the all-horizontal diagram; dilute: the 2^n dashed expansion."""
        el = cls(n, variant, **kw)
        one = Poly.one() if el.mode == "exact" else 1.0 + 0j
        if not variant.dilute:
            el.terms[identity_diagram(n, variant)] = one
            return el
        for drawn in itertools.product((True, False), repeat=n):
            strings = [(("L", i), ("R", i)) for i in range(1, n + 1) if drawn[i - 1]]
            empty = [(side, i) for i in range(1, n + 1) if not drawn[i - 1] for side in "LR"]
            el.terms[make_diagram(n, variant, strings, empty=empty)] = one
        return el

    # -- helpers ----------------------------------------------------------
    def _compatible(self, other: "Element"):
        if (self.n, self.variant, self.mode, self.generalised) != \
                (other.n, other.variant, other.mode, other.generalised):
            raise ValueError("element mismatch (n, variant, mode or parameter set)")
        if self.mode == "numeric" and self.binding is not other.binding and self.binding != other.binding:
            raise ValueError("numeric elements bound to different parameter values")

    def _spawn(self):
        return Element(self.n, self.variant, self.mode, self.binding, self.generalised)

    def _add_term(self, d, c):
        cur = self.terms.get(d)
        s = c if cur is None else cur + c
        if (isinstance(s, Poly) and not s) or (not isinstance(s, Poly) and s == 0):
            self.terms.pop(d, None)
        else:
            self.terms[d] = s

    def copy(self):
        out = self._spawn()
        out.terms = dict(self.terms)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    # -- linear structure -------------------------------------------------
    def __add__(self, other: "Element") -> "Element":
        self._compatible(other)
        out = self.copy()
        for d, c in other.terms.items():
            out._add_term(d, c)
        return out

    def __sub__(self, other: "Element") -> "Element":
        return self + other.scale(-1)

    def scale(self, c) -> "Element":
        out = self._spawn()
        if isinstance(c, int):
            c = Poly.const(c) if self.mode == "exact" else complex(c)
        for d, v in self.terms.items():
            out._add_term(d, v * c if self.mode == "exact" else v * c)
        return out

    # -- multiplication ----------------------------------------------------
    def _weight_scalar(self, weight):
        if self.mode == "exact":
            return Poly.from_mono(weight)
        return mono_eval(weight, self.binding)

    def __mul__(self, other: "Element") -> "Element":
        self._compatible(other)
        out = self._spawn()
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                res = concat(d1, d2, generalised=self.generalised)
                if res.annihilated:
                    continue
                w = self._weight_scalar(res.weight)
                out._add_term(res.diagram, c1 * c2 * w)
        return out

    def star(self) -> "Element":
        """Reflection anti-involution, extended linearly."""
        out = self._spawn()
        for d, c in self.terms.items():
            out._add_term(reflect(d), c)
        return out

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return (self.n, self.variant, self.mode) == (other.n, other.variant, other.mode) \
            and self.terms == other.terms

    def __repr__(self):
        return f"Element({self.variant.name}{self.n}, {len(self.terms)} terms, {self.mode})"

    # -- serialisation --------------------------------------------------------
    def to_json(self) -> dict:
        if self.mode != "exact":
            raise ValueError("only exact elements serialise to JSON")
        terms = sorted(self.terms.items(), key=lambda kv: kv[0].key())
        return {
            "n": self.n,
            "density": "dilute" if self.variant.dilute else "dense",
            "boundaries": self.variant.boundaries,
            "generalised": self.generalised,
            "terms": [{"diagram": d.to_json(), "coeff": c.to_json()} for d, c in terms],
        }


def element_from_json(data: dict) -> Element:
    from .diagrams import diagram_from_json

    variant = Variant(data["density"] == "dilute", data["boundaries"])
    el = Element(data["n"], variant, "exact", generalised=data.get("generalised", False))
    for t in data["terms"]:
        el._add_term(diagram_from_json(t["diagram"]), Poly.from_json(t["coeff"]))
    return el


def max_residual(a: Element, b: Element) -> float:
    """Max coefficient difference between numeric elements, relatively scaled."""
    keys = set(a.terms) | set(b.terms)
    if not keys:
        return 0.0
    diff = max(abs(a.terms.get(d, 0) - b.terms.get(d, 0)) for d in keys)
    scale = max(
        max((abs(c) for c in a.terms.values()), default=0.0),
        max((abs(c) for c in b.terms.values()), default=0.0),
        1e-300,
    )
    return diff / scale
