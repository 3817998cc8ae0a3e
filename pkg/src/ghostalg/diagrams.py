"""Canonical basis diagrams and their concatenation product.

A diagram lives on a rectangle with ``n`` nodes on each vertical side and
up to two dotted horizontal boundaries.  Strings join nodes to nodes or to
boundary slots; ghost bits sit in the domains between consecutive
boundary attachments.  Multiplication concatenates two diagrams and then
reduces the resulting pseudo-diagram: loops contribute ``beta``, each
boundary arc contributes the parameter selected by the parities of its
endpoints (ghosts included in the numbering), and removed arcs deposit a
ghost at each endpoint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .scalars import MONO_ONE, Mono, mono, mono_mul


@dataclass(frozen=True)
class Variant:
    dilute: bool
    boundaries: int  # 0, 1 (top only) or 2

    def __post_init__(self):
        if self.boundaries not in (0, 1, 2):
            raise ValueError("boundaries must be 0, 1 or 2")

    @property
    def has_top(self) -> bool:
        return self.boundaries >= 1

    @property
    def has_bottom(self) -> bool:
        return self.boundaries == 2

    @property
    def name(self) -> str:
        base = {0: "tl", 1: "gh1", 2: "gh2"}[self.boundaries]
        return ("d" + base) if self.dilute else base


VARIANTS = {
    "tl": Variant(False, 0),
    "gh1": Variant(False, 1),
    "gh2": Variant(False, 2),
    "dtl": Variant(True, 0),
    "dgh1": Variant(True, 1),
    "dgh2": Variant(True, 2),
}

Endpoint = tuple  # ('L', i), ('R', i), ('T', s) or ('B', s)


def _pair(a: Endpoint, b: Endpoint):
    return (a, b) if a <= b else (b, a)


class Diagram:
    """Immutable canonical diagram; construct through :func:`make_diagram`."""

    __slots__ = ("n", "variant", "strings", "empty", "top_ghosts", "bottom_ghosts", "_hash")

    def __init__(self, n, variant, strings, empty, top_ghosts, bottom_ghosts):
        self.n = n
        self.variant = variant
        self.strings = strings
        self.empty = empty
        self.top_ghosts = top_ghosts
        self.bottom_ghosts = bottom_ghosts
        self._hash = hash((n, variant, strings, empty, top_ghosts, bottom_ghosts))

    def key(self):
        return (self.n, self.variant.name, self.strings, tuple(sorted(self.empty)),
                self.top_ghosts, self.bottom_ghosts)

    def __eq__(self, other):
        return isinstance(other, Diagram) and self.key() == other.key()

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key() < other.key()

    # -- inspection ----------------------------------------------------
    @property
    def top_attachments(self) -> int:
        return len(self.top_ghosts) - 1 if self.top_ghosts else 0

    @property
    def bottom_attachments(self) -> int:
        return len(self.bottom_ghosts) - 1 if self.bottom_ghosts else 0

    def throughlines(self) -> int:
        return sum(1 for a, b in self.strings if {a[0], b[0]} == {"L", "R"})

    def __repr__(self):
        return (f"Diagram({self.variant.name}{self.n}: {self.strings}, "
                f"g={self.top_ghosts}/{self.bottom_ghosts}, empty={sorted(self.empty)})")

    # -- serialisation --------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "density": "dilute" if self.variant.dilute else "dense",
            "boundaries": self.variant.boundaries,
            "strings": [[f"{a[0]}{a[1]}" for a in pair] for pair in self.strings],
            "empty": [f"{a[0]}{a[1]}" for a in sorted(self.empty)],
            "topGhosts": list(self.top_ghosts),
            "bottomGhosts": list(self.bottom_ghosts),
        }


def parse_endpoint(label: str) -> Endpoint:
    kind, idx = label[0], label[1:]
    if kind not in "LRTB" or not idx.isdigit():
        raise ValueError(f"bad endpoint label {label!r}")
    return (kind, int(idx))


def diagram_from_json(data: dict) -> Diagram:
    variant = Variant(data["density"] == "dilute", data["boundaries"])
    strings = [tuple(parse_endpoint(e) for e in pair) for pair in data["strings"]]
    empty = [parse_endpoint(e) for e in data.get("empty", [])]
    return make_diagram(
        data["n"], variant, strings,
        empty=empty,
        top_ghosts=data.get("topGhosts"),
        bottom_ghosts=data.get("bottomGhosts"),
    )


# ---------------------------------------------------------------------------
# validation and canonical construction
# ---------------------------------------------------------------------------

def _cyclic_positions(n, n_top, n_bottom):
    """Endpoint -> index in the boundary cycle [L1..Ln, B left-to-right, Rn..R1, T right-to-left]."""
    pos = {}
    for i in range(1, n + 1):
        pos[("L", i)] = i - 1
    for s in range(1, n_bottom + 1):
        pos[("B", s)] = n + s - 1
    for i in range(1, n + 1):
        pos[("R", i)] = n + n_bottom + (n - i)
    for s in range(1, n_top + 1):
        pos[("T", s)] = 2 * n + n_bottom + (n_top - s)
    return pos


def _noncrossing(pairs, pos) -> bool:
    idx = [(pos[a], pos[b]) for a, b in pairs]
    idx = [(min(p), max(p)) for p in idx]
    for (a1, b1), (a2, b2) in itertools.combinations(idx, 2):
        in1 = (a1 < a2 < b1)
        in2 = (a1 < b2 < b1)
        if in1 != in2:
            return False
    return True


def validate_parts(n, variant, strings, empty, top_ghosts, bottom_ghosts, *, mod2=True):
    """Return the list of violated invariants as machine-readable codes."""
    errors = []
    if n < 1:
        return ["bad-n"]
    node_use = {}
    top_slots, bottom_slots = [], []
    for a, b in strings:
        for e in (a, b):
            if e[0] in "LR":
                if not 1 <= e[1] <= n:
                    errors.append("node-out-of-range")
                node_use[e] = node_use.get(e, 0) + 1
            elif e[0] == "T":
                if not variant.has_top:
                    errors.append("no-top-boundary")
                top_slots.append(e[1])
            elif e[0] == "B":
                if not variant.has_bottom:
                    errors.append("no-bottom-boundary")
                bottom_slots.append(e[1])
            else:
                errors.append("bad-endpoint")
        if a[0] in "TB" and b[0] in "TB":
            errors.append("boundary-arc-in-basis")
        if a == b:
            errors.append("self-loop")
    if any(c > 1 for c in node_use.values()):
        errors.append("node-reused")
    empty = set(empty)
    for e in empty:
        if e[0] not in "LR" or not 1 <= e[1] <= n:
            errors.append("bad-empty-node")
    if empty & set(node_use):
        errors.append("empty-node-attached")
    missing = {(side, i) for side in "LR" for i in range(1, n + 1)} - set(node_use) - empty
    if missing:
        errors.append("all-nodes-occupied" if not variant.dilute else "unoccupied-node-unmarked")
    if empty and not variant.dilute:
        errors.append("empty-node-in-dense")

    if sorted(top_slots) != list(range(1, len(top_slots) + 1)):
        errors.append("bad-top-slots")
    if sorted(bottom_slots) != list(range(1, len(bottom_slots) + 1)):
        errors.append("bad-bottom-slots")

    n_top, n_bottom = len(top_slots), len(bottom_slots)
    if variant.has_top:
        if len(top_ghosts) != n_top + 1:
            errors.append("top-ghost-length")
        elif (n_top + sum(top_ghosts)) % 2 != 0:
            errors.append("top-parity")
    elif top_ghosts:
        errors.append("top-ghost-length")
    if variant.has_bottom:
        if len(bottom_ghosts) != n_bottom + 1:
            errors.append("bottom-ghost-length")
        elif (n_bottom + sum(bottom_ghosts)) % 2 != 0:
            errors.append("bottom-parity")
    elif bottom_ghosts:
        errors.append("bottom-ghost-length")

    if mod2 and any(g not in (0, 1) for g in tuple(top_ghosts) + tuple(bottom_ghosts)):
        errors.append("ghosts-not-reduced")

    if not errors:
        pos = _cyclic_positions(n, n_top, n_bottom)
        if not _noncrossing(strings, pos):
            errors.append("crossing")
    return errors


def make_diagram(n, variant, strings, empty=(), top_ghosts=None, bottom_ghosts=None) -> Diagram:
    """Validate raw data, reduce ghost counts mod 2 and build the canonical diagram."""
    strings = tuple(sorted(_pair(a, b) for a, b in strings))
    n_top = sum(1 for a, b in strings for e in (a, b) if e[0] == "T")
    n_bottom = sum(1 for a, b in strings for e in (a, b) if e[0] == "B")
    if top_ghosts is None:
        top_ghosts = (0,) * (n_top + 1) if variant.has_top else ()
    if bottom_ghosts is None:
        bottom_ghosts = (0,) * (n_bottom + 1) if variant.has_bottom else ()
    top_ghosts = tuple(top_ghosts)
    bottom_ghosts = tuple(bottom_ghosts)
    errors = validate_parts(n, variant, strings, empty, top_ghosts, bottom_ghosts, mod2=False)
    if errors:
        raise ValueError(f"invalid diagram: {errors}")
    return Diagram(
        n, variant, strings, frozenset(empty),
        tuple(g % 2 for g in top_ghosts),
        tuple(g % 2 for g in bottom_ghosts),
    )


def validate(d: Diagram):
    return validate_parts(d.n, d.variant, d.strings, d.empty, d.top_ghosts, d.bottom_ghosts)


def identity_diagram(n: int, variant: Variant) -> Diagram:
    return make_diagram(n, variant, [(("L", i), ("R", i)) for i in range(1, n + 1)])


def reflect(d: Diagram) -> Diagram:
    """Mirror about a vertical line: swap sides, reverse slots and ghost vectors."""
    n_top, n_bottom = d.top_attachments, d.bottom_attachments

    def mirror(e: Endpoint) -> Endpoint:
        kind, i = e
        if kind == "L":
            return ("R", i)
        if kind == "R":
            return ("L", i)
        if kind == "T":
            return ("T", n_top + 1 - i)
        return ("B", n_bottom + 1 - i)

    return Diagram(
        d.n, d.variant,
        tuple(sorted(_pair(mirror(a), mirror(b)) for a, b in d.strings)),
        frozenset(mirror(e) for e in d.empty),
        tuple(reversed(d.top_ghosts)),
        tuple(reversed(d.bottom_ghosts)),
    )


# ---------------------------------------------------------------------------
# pseudo-diagram reduction (the chi / zeta / floor machinery)
# ---------------------------------------------------------------------------

def arc_param(bd1, parity1, bd2, parity2, generalised: bool) -> str:
    """Parameter for a boundary arc; parity 1 = odd.

    Same-boundary arcs are passed left endpoint first; mixed arcs are
    passed top endpoint first.
    """
    if bd1 == bd2 == "T":
        table = {
            (1, 0): "alpha1", (0, 1): "alpha2",
            (1, 1): "alpha3", (0, 0): "alpha4" if generalised else "alpha3",
        }
    elif bd1 == bd2 == "B":
        table = {
            (1, 0): "delta1", (0, 1): "delta2",
            (1, 1): "delta3", (0, 0): "delta4" if generalised else "delta3",
        }
    else:
        table = {
            (1, 0): "gamma1" if generalised else "gamma12",
            (0, 1): "gamma2" if generalised else "gamma12",
            (1, 1): "gamma3", (0, 0): "gamma4" if generalised else "gamma3",
        }
    return table[(parity1, parity2)]


def expand_items(ghosts, att_tokens):
    """Interleave ghost bits and attachment tokens into one left-to-right item list."""
    items = []
    for dom, g in enumerate(ghosts):
        items.extend(("g", None) for _ in range(g))
        if dom < len(att_tokens):
            items.append(("a", att_tokens[dom]))
    return items


def _is_node(h) -> bool:
    return h[0] in ("L", "R")


def reduce_pseudo(n, variant, *, top_items, bottom_items, pairs, loops,
                  empty_nodes, generalised=False):
    """Reduce a traced pseudo-diagram to ``(weight monomial, Diagram)``.

    ``pairs`` are the connected components given as endpoint pairs over
    handles: result nodes ``('L', i)`` / ``('R', i)`` or attachment
    tokens appearing in ``top_items`` / ``bottom_items``.  Loops must
    already be counted.  Annihilation is the caller's concern.
    """
    weight: Mono = mono("beta", loops) if loops else MONO_ONE

    position = {}
    boundary = {}
    for items, bd in ((top_items, "T"), (bottom_items, "B")):
        idx = 0
        for kind, token in items:
            idx += 1
            if kind == "a":
                position[token] = idx
                boundary[token] = bd

    is_ghost = set()
    kept_strings = []
    for a, b in pairs:
        if _is_node(a) and _is_node(b):
            kept_strings.append((a, b))
        elif _is_node(a) or _is_node(b):
            kept_strings.append((a, b))
        else:
            bd_a, bd_b = boundary[a], boundary[b]
            pa, pb = position[a] % 2, position[b] % 2
            if bd_a == bd_b:
                if position[a] > position[b]:
                    pa, pb = pb, pa
            elif bd_a == "B":
                pa, pb = pb, pa
                bd_a, bd_b = bd_b, bd_a
            weight = mono_mul(weight, mono(arc_param(bd_a, pa, bd_b, pb, generalised)))
            is_ghost.add(a)
            is_ghost.add(b)

    def rebuild(items):
        slot_of = {}
        ghosts = [0]
        for kind, token in items:
            if kind == "g" or token in is_ghost:
                ghosts[-1] += 1
            else:
                slot_of[token] = len(slot_of) + 1
                ghosts.append(0)
        return slot_of, tuple(g % 2 for g in ghosts)

    top_slot, top_ghosts = rebuild(top_items)
    bottom_slot, bottom_ghosts = rebuild(bottom_items)
    if not variant.has_top:
        top_ghosts = ()
    if not variant.has_bottom:
        bottom_ghosts = ()

    def to_endpoint(h):
        if _is_node(h):
            return h
        if boundary[h] == "T":
            return ("T", top_slot[h])
        return ("B", bottom_slot[h])

    strings = tuple(sorted(_pair(to_endpoint(a), to_endpoint(b)) for a, b in kept_strings))
    return weight, Diagram(n, variant, strings, frozenset(empty_nodes), top_ghosts, bottom_ghosts)


# ---------------------------------------------------------------------------
# concatenation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ContractionOutcome:
    annihilated: bool
    weight: Mono
    diagram: Diagram | None


def trace_edges(edges):
    """Split a degree-<=2 multigraph into open paths and closed loops.

    ``edges`` is a list of handle pairs, parallel edges allowed.  Returns
    ``(end-pairs of open paths, number of loops)``.
    """
    incidence = {}
    for eid, (a, b) in enumerate(edges):
        incidence.setdefault(a, []).append((eid, b))
        incidence.setdefault(b, []).append((eid, a))
    used = [False] * len(edges)
    pairs = []
    for h, inc in incidence.items():
        if len(inc) != 1:
            continue
        eid, cur = inc[0]
        if used[eid]:
            continue
        used[eid] = True
        while True:
            nxt = [(e2, o2) for e2, o2 in incidence[cur] if not used[e2]]
            if not nxt:
                break
            e2, cur = nxt[0]
            used[e2] = True
        pairs.append((h, cur))
    loops = 0
    for h, inc in incidence.items():
        for eid, other in inc:
            if used[eid]:
                continue
            loops += 1
            used[eid] = True
            cur = other
            while True:
                nxt = [(e2, o2) for e2, o2 in incidence[cur] if not used[e2]]
                if not nxt:
                    break
                e2, cur = nxt[0]
                used[e2] = True
    return pairs, loops


_CACHES = {False: {}, True: {}}


def concat(x: Diagram, y: Diagram, generalised: bool = False) -> ContractionOutcome:
    """Product of two basis diagrams: trace x concatenated with y and reduce."""
    if x.n != y.n or x.variant != y.variant:
        raise ValueError("size or variant mismatch")
    cache = _CACHES[generalised]
    cached = cache.get((x, y))
    if cached is not None:
        return cached

    n = x.n
    x_mid = {i for i in range(1, n + 1) if ("R", i) not in x.empty}
    y_mid = {i for i in range(1, n + 1) if ("L", i) not in y.empty}
    if x_mid != y_mid:
        out = ContractionOutcome(True, MONO_ONE, None)
        cache[(x, y)] = out
        return out

    def x_handle(e):
        kind, i = e
        return ("L", i) if kind == "L" else ("M", i) if kind == "R" else ("x" + kind, i)

    def y_handle(e):
        kind, i = e
        return ("M", i) if kind == "L" else ("R", i) if kind == "R" else ("y" + kind, i)

    edges = [(x_handle(a), x_handle(b)) for a, b in x.strings]
    edges += [(y_handle(a), y_handle(b)) for a, b in y.strings]
    pairs, loops = trace_edges(edges)

    def att_tokens(d, prefix, bd):
        count = d.top_attachments if bd == "T" else d.bottom_attachments
        return [(prefix + bd, s) for s in range(1, count + 1)]

    top_items = expand_items(x.top_ghosts, att_tokens(x, "x", "T")) + \
        expand_items(y.top_ghosts, att_tokens(y, "y", "T"))
    bottom_items = expand_items(x.bottom_ghosts, att_tokens(x, "x", "B")) + \
        expand_items(y.bottom_ghosts, att_tokens(y, "y", "B"))

    empty_nodes = {e for e in x.empty if e[0] == "L"} | {e for e in y.empty if e[0] == "R"}
    weight, diagram = reduce_pseudo(
        n, x.variant,
        top_items=top_items, bottom_items=bottom_items,
        pairs=pairs, loops=loops, empty_nodes=empty_nodes, generalised=generalised,
    )
    out = ContractionOutcome(False, weight, diagram)
    cache[(x, y)] = out
    return out


def clear_caches():
    for c in _CACHES.values():
        c.clear()
