"""Algebra maps: psi from two-boundary TL diagrams, dilute embedding, strand addition.

The two-boundary TL algebra allows top-to-bottom strings and has no
ghosts; it is infinite-dimensional, so only individual diagrams are
handled here, never the whole algebra.
"""

from __future__ import annotations

import itertools

from .diagrams import (
    Diagram, Variant, _cyclic_positions, _noncrossing, _pair, expand_items,
    make_diagram, reduce_pseudo, trace_edges,
)
from .elements import Element
from .scalars import MONO_ONE, mono, mono_mul


class TL2Diagram:
    """Two-boundary TL basis diagram: ghost-free, vertical strings allowed,
    an even number of attachments on each boundary."""

    __slots__ = ("n", "strings", "_hash")

    def __init__(self, n, strings):
        self.n = n
        self.strings = tuple(sorted(_pair(a, b) for a, b in strings))
        self._hash = hash((n, self.strings))

    def __eq__(self, other):
        return isinstance(other, TL2Diagram) and (self.n, self.strings) == (other.n, other.strings)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"TL2Diagram(n={self.n}, {self.strings})"

    @property
    def top_attachments(self):
        return sum(1 for a, b in self.strings for e in (a, b) if e[0] == "T")

    @property
    def bottom_attachments(self):
        return sum(1 for a, b in self.strings for e in (a, b) if e[0] == "B")


def make_tl2_diagram(n, strings) -> TL2Diagram:
    d = TL2Diagram(n, strings)
    used = {}
    top_slots, bottom_slots = [], []
    for a, b in d.strings:
        for e in (a, b):
            if e[0] in "LR":
                if not 1 <= e[1] <= n:
                    raise ValueError("node out of range")
                used[e] = used.get(e, 0) + 1
            elif e[0] == "T":
                top_slots.append(e[1])
            else:
                bottom_slots.append(e[1])
        if a[0] == b[0] and a[0] in "TB":
            raise ValueError("same-boundary arcs are not basis strings")
    if any(c > 1 for c in used.values()) or len(used) != 2 * n:
        raise ValueError("every node needs exactly one string")
    if sorted(top_slots) != list(range(1, len(top_slots) + 1)) or \
            sorted(bottom_slots) != list(range(1, len(bottom_slots) + 1)):
        raise ValueError("bad boundary slots")
    if len(top_slots) % 2 or len(bottom_slots) % 2:
        raise ValueError("attachment count per boundary must be even")
    pos = _cyclic_positions(n, len(top_slots), len(bottom_slots))
    if not _noncrossing(d.strings, pos):
        raise ValueError("crossing strings")
    return d


def multiply_tl2(x: TL2Diagram, y: TL2Diagram):
    """Product of two-boundary TL diagrams: ``(weight monomial, diagram)``.

    Loops give ``beta``; same-boundary arcs give ``alpha1``/``alpha2`` or
    ``delta1``/``delta2`` by the parity of their left endpoint; vertical
    strings survive into the result.
    """
    if x.n != y.n:
        raise ValueError("size mismatch")

    def xh(e):
        k, i = e
        return ("L", i) if k == "L" else ("M", i) if k == "R" else ("x" + k, i)

    def yh(e):
        k, i = e
        return ("M", i) if k == "L" else ("R", i) if k == "R" else ("y" + k, i)

    edges = [(xh(a), xh(b)) for a, b in x.strings] + [(yh(a), yh(b)) for a, b in y.strings]
    pairs, loops = trace_edges(edges)

    top_tokens = [("xT", s) for s in range(1, x.top_attachments + 1)] + \
        [("yT", s) for s in range(1, y.top_attachments + 1)]
    bottom_tokens = [("xB", s) for s in range(1, x.bottom_attachments + 1)] + \
        [("yB", s) for s in range(1, y.bottom_attachments + 1)]
    position = {t: i for i, t in enumerate(top_tokens, start=1)}
    position.update({t: i for i, t in enumerate(bottom_tokens, start=1)})
    on_top = set(top_tokens)

    weight = mono("beta", loops) if loops else MONO_ONE
    removed = set()
    kept = []
    for a, b in pairs:
        a_bd = a in position
        b_bd = b in position
        if a_bd and b_bd and (a in on_top) == (b in on_top):
            left = min(position[a], position[b])
            if a in on_top:
                weight = mono_mul(weight, mono("alpha1" if left % 2 else "alpha2"))
            else:
                weight = mono_mul(weight, mono("delta1" if left % 2 else "delta2"))
            removed.update((a, b))
        else:
            kept.append((a, b))

    top_slot = {t: i for i, t in enumerate((t for t in top_tokens if t not in removed), start=1)}
    bottom_slot = {t: i for i, t in enumerate((t for t in bottom_tokens if t not in removed), start=1)}

    def to_endpoint(h):
        if h in top_slot:
            return ("T", top_slot[h])
        if h in bottom_slot:
            return ("B", bottom_slot[h])
        return h

    return weight, TL2Diagram(x.n, [(to_endpoint(a), to_endpoint(b)) for a, b in kept])


def psi(d: TL2Diagram, generalised: bool = False) -> Element:
    """Map a two-boundary TL diagram into the two-boundary ghost algebra.

    Vertical strings are removed for gamma factors exactly as arcs are
    removed in ghost-algebra multiplication, leaving ghosts at both
    endpoints.
    """
    gh2 = Variant(False, 2)
    top_tokens = [("T", s) for s in range(1, d.top_attachments + 1)]
    bottom_tokens = [("B", s) for s in range(1, d.bottom_attachments + 1)]

    def handle(e):
        return e if e[0] in "LR" else (("pT", e[1]) if e[0] == "T" else ("pB", e[1]))

    pairs = [(handle(a), handle(b)) for a, b in d.strings]
    top_items = [("a", ("pT", s)) for s in range(1, len(top_tokens) + 1)]
    bottom_items = [("a", ("pB", s)) for s in range(1, len(bottom_tokens) + 1)]
    weight, diagram = reduce_pseudo(
        d.n, gh2, top_items=top_items, bottom_items=bottom_items,
        pairs=pairs, loops=0, empty_nodes=(), generalised=generalised,
    )
    from .scalars import Poly

    return Element.from_diagram(diagram, Poly.from_mono(weight), generalised=generalised)


def dilute_embed(a: Element | Diagram) -> Element:
    """Dashed-string expansion into the matching dilute algebra.

    Each string is independently drawn or omitted; omitting a string
    empties its node endpoints and turns its boundary endpoints into
    ghosts.  Multiplicative once every parameter is shifted down by one.
    """
    if isinstance(a, Diagram):
        a = Element.from_diagram(a)
    if a.variant.dilute:
        raise ValueError("source must be a dense variant")
    target = Variant(True, a.variant.boundaries)
    out = Element(a.n, target, a.mode, a.binding, a.generalised)
    for d, coeff in a.terms.items():
        top_tokens = [("T", s) for s in range(1, d.top_attachments + 1)]
        bottom_tokens = [("B", s) for s in range(1, d.bottom_attachments + 1)]
        for mask in itertools.product((True, False), repeat=len(d.strings)):
            empty = set()
            ghosted = set()
            kept = []
            for s, keep in zip(d.strings, mask):
                if keep:
                    kept.append(s)
                    continue
                for e in s:
                    if e[0] in "LR":
                        empty.add(e)
                    else:
                        ghosted.add(e)

            def rebuild(ghosts, tokens):
                slot = {}
                out_g = [0]
                items = expand_items(ghosts, tokens)
                for kind, token in items:
                    if kind == "g" or token in ghosted:
                        out_g[-1] += 1
                    else:
                        slot[token] = len(slot) + 1
                        out_g.append(0)
                return slot, tuple(g % 2 for g in out_g)

            top_slot, tg = rebuild(d.top_ghosts, top_tokens)
            bottom_slot, bg = rebuild(d.bottom_ghosts, bottom_tokens)

            def remap(e):
                if e[0] == "T":
                    return ("T", top_slot[e])
                if e[0] == "B":
                    return ("B", bottom_slot[e])
                return e

            term = make_diagram(
                d.n, target, [(remap(x), remap(y)) for x, y in kept],
                empty=empty,
                top_ghosts=tg if target.has_top else None,
                bottom_ghosts=bg if target.has_bottom else None,
            )
            out._add_term(term, coeff)
    return out


def add_strand(a: Element | Diagram) -> Element:
    """Unital embedding into the algebra on one more strand.

    Appends a horizontal string at the bottom (a dashed one in the dilute
    case).  Rejected for two-boundary variants, where the new strand
    would cross bottom boundary links.
    """
    if isinstance(a, Diagram):
        a = Element.from_diagram(a)
    if a.variant.has_bottom:
        raise ValueError("strand addition is not available for two-boundary variants")
    m = a.n + 1
    out = Element(m, a.variant, a.mode, a.binding, a.generalised)
    for d, coeff in a.terms.items():
        strings = list(d.strings) + [(("L", m), ("R", m))]
        out._add_term(
            make_diagram(m, d.variant, strings, empty=d.empty,
                         top_ghosts=d.top_ghosts if d.variant.has_top else None),
            coeff,
        )
        if a.variant.dilute:
            out._add_term(
                make_diagram(m, d.variant, d.strings,
                             empty=set(d.empty) | {("L", m), ("R", m)},
                             top_ghosts=d.top_ghosts if d.variant.has_top else None),
                coeff,
            )
    return out
