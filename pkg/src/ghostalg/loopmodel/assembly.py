"""Planar tangle assemblies contracted into numeric algebra elements.

An assembly is a list of slots (faces or boundary triangles), internal
links between slot legs, external legs wired to the nodes of the target
algebra, and the left-to-right order of triangle slots along each
boundary.  Contraction expands the product of tile choices with early
pruning on link compatibility; each full configuration is reduced by the
same pseudo-diagram machinery as diagram multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..diagrams import Variant, reduce_pseudo, trace_edges
from ..elements import Element
from ..scalars import mono_eval
from .triangles import LLEG, RLEG, TriTile


@dataclass
class Slot:
    name: str
    kind: str            # "face" or "triangle"
    choices: list        # [(tile, weight complex)]
    boundary: str | None = None  # for triangles: "T" or "B"


@dataclass
class Assembly:
    n: int
    variant: Variant
    slots: list
    links: list                       # [((slot, leg), (slot, leg))]
    external: dict                    # (slot, leg) -> ('L', i) or ('R', i)
    top_order: list = field(default_factory=list)     # triangle slot names, left to right
    bottom_order: list = field(default_factory=list)

    def contract(self, binding, generalised=False, budget=None) -> Element:
        slot_index = {s.name: k for k, s in enumerate(self.slots)}
        n_slots = len(self.slots)

        # precompute, per slot, leg occupancy per choice
        occupancies = []
        for s in self.slots:
            occ = []
            for t, w in s.choices:
                if isinstance(t, TriTile):
                    occ.append(frozenset(t.occupied))
                else:
                    occ.append(frozenset(leg for p in t for leg in p))
            occupancies.append(occ)

        # links indexed by the later slot so compatibility prunes early
        links_at = [[] for _ in range(n_slots)]
        for (sa, la), (sb, lb) in self.links:
            ia, ib = slot_index[sa], slot_index[sb]
            if ia > ib:
                (ia, la), (ib, lb) = (ib, lb), (ia, la)
            links_at[ib].append((ia, la, lb))

        if budget is not None:
            total = 1
            for s in self.slots:
                total *= len(s.choices)
            if total > budget:
                raise RuntimeError(
                    f"assembly would expand {total} configurations, budget {budget}")

        out = Element(self.n, self.variant, "numeric", binding, generalised)
        choice = [0] * n_slots

        def descend(k, weight):
            if k == n_slots:
                self._emit(choice, weight, binding, generalised, out)
                return
            slot = self.slots[k]
            for idx, (t, w) in enumerate(slot.choices):
                if w == 0:
                    continue
                occ = occupancies[k][idx]
                ok = True
                for ia, la, lb in links_at[k]:
                    tile_a = self.slots[ia].choices[choice[ia]][0]
                    occ_a = occupancies[ia][choice[ia]]
                    if (la in occ_a) != (lb in occ):
                        ok = False
                        break
                if not ok:
                    continue
                choice[k] = idx
                descend(k + 1, weight * w)
        descend(0, 1.0 + 0j)
        return out

    def _emit(self, choice, weight, binding, generalised, out):
        slot_index = {s.name: k for k, s in enumerate(self.slots)}
        edges = []
        att_edges = []
        tiles = [self.slots[k].choices[choice[k]][0] for k in range(len(self.slots))]

        for k, slot in enumerate(self.slots):
            t = tiles[k]
            if isinstance(t, TriTile):
                if t.arc:
                    edges.append(((slot.name, LLEG), (slot.name, RLEG)))
                for leg in t.attach:
                    edges.append(((slot.name, leg), ("att", slot.name, leg)))
            else:
                for a, b in t:
                    edges.append(((slot.name, a), (slot.name, b)))

        for (sa, la), (sb, lb) in self.links:
            ta = tiles[slot_index[sa]]
            occ_a = ta.occupied if isinstance(ta, TriTile) else {leg for p in ta for leg in p}
            if la in occ_a:
                edges.append(((sa, la), (sb, lb)))

        # external node endpoints replace their leg handles
        relabel = {}
        empty_nodes = set()
        for (sname, leg), node in self.external.items():
            t = tiles[slot_index[sname]]
            occ = t.occupied if isinstance(t, TriTile) else {x for p in t for x in p}
            if leg in occ:
                relabel[(sname, leg)] = node
            else:
                empty_nodes.add(node)
        edges = [(relabel.get(a, a), relabel.get(b, b)) for a, b in edges]

        pairs, loops = trace_edges(edges)

        def span_items(order):
            items = []
            for sname in order:
                t = tiles[slot_index[sname]]
                for it in t.items:
                    if it == "g":
                        items.append(("g", None))
                    else:
                        items.append(("a", ("att", sname, it)))
            return items

        top_items = span_items(self.top_order)
        bottom_items = span_items(self.bottom_order)

        w, diagram = reduce_pseudo(
            self.n, self.variant,
            top_items=top_items, bottom_items=bottom_items,
            pairs=pairs, loops=loops, empty_nodes=empty_nodes,
            generalised=generalised,
        )
        out._add_term(diagram, weight * mono_eval(w, binding))
