"""Half-diagrams, dimension formulas, and the cut/glue bijection.

A half-diagram keeps the left side of a diagram after cutting all
throughlines: links between nodes, boundary links, an ordered set of
defects (the cut stubs), empty nodes in the dilute case, and the ghost
bits of its boundary domains.  Every diagram with ``d`` throughlines is
``glue`` of a unique pair of half-diagrams with ``d`` defects.
"""

from __future__ import annotations

import itertools
from math import comb

from .diagrams import Diagram, Variant, make_diagram


class BudgetExceeded(RuntimeError):
    """Enumeration would exceed the configured element budget."""


class HalfDiagram:
    """Immutable one-sided diagram with ``d`` ordered defects."""

    __slots__ = ("n", "variant", "links", "top_linked", "bottom_linked",
                 "defects", "empty", "top_ghosts", "bottom_ghosts", "_hash")

    def __init__(self, n, variant, links, top_linked, bottom_linked, defects,
                 empty, top_ghosts, bottom_ghosts):
        self.n = n
        self.variant = variant
        self.links = tuple(sorted(tuple(sorted(p)) for p in links))
        self.top_linked = tuple(sorted(top_linked))
        self.bottom_linked = tuple(sorted(bottom_linked))
        self.defects = tuple(sorted(defects))
        self.empty = frozenset(empty)
        self.top_ghosts = tuple(top_ghosts)
        self.bottom_ghosts = tuple(bottom_ghosts)
        self._hash = hash(self.key())

    def key(self):
        return (self.n, self.variant.name, self.links, self.top_linked,
                self.bottom_linked, self.defects, tuple(sorted(self.empty)),
                self.top_ghosts, self.bottom_ghosts)

    def __eq__(self, other):
        return isinstance(other, HalfDiagram) and self.key() == other.key()

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        return (f"Half({self.variant.name}{self.n}: links={self.links} top={self.top_linked} "
                f"bot={self.bottom_linked} def={self.defects} g={self.top_ghosts}/{self.bottom_ghosts})")


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _tl_half_structures(nodes):
    """Yield (links, free) over noncrossing partial pairings of ``nodes``.

    ``nodes`` is an ascending tuple.  Links must not enclose free nodes,
    which is the planarity condition for half-diagrams.
    """
    if not nodes:
        yield (), ()
        return
    first, rest = nodes[0], nodes[1:]
    for links, free in _tl_half_structures(rest):
        yield links, (first,) + free
    for j, partner in enumerate(rest):
        inside, outside = rest[:j], rest[j + 1:]
        if len(inside) % 2:
            continue
        for links_in, free_in in _tl_half_structures(inside):
            if free_in:
                continue
            for links_out, free_out in _tl_half_structures(outside):
                yield ((first, partner),) + links_in + links_out, free_out


def _ghost_patterns(n_atts):
    """All parity-even ghost vectors of length ``n_atts + 1`` (bits, one forced)."""
    for bits in itertools.product((0, 1), repeat=n_atts):
        forced = (n_atts + sum(bits)) % 2
        yield bits + (forced,)


def enumerate_half(n, d, variant: Variant):
    """All half-diagrams of ``variant`` on ``n`` nodes with ``d`` defects."""
    if not 0 <= d <= n:
        return
    all_nodes = tuple(range(1, n + 1))
    empty_choices = (
        itertools.chain.from_iterable(
            itertools.combinations(all_nodes, v) for v in range(n - d + 1))
        if variant.dilute else ((),)
    )
    for empty in empty_choices:
        occupied = tuple(i for i in all_nodes if i not in empty)
        if len(occupied) < d:
            continue
        for links, free in _tl_half_structures(occupied):
            q = len(free)
            if q < d or (not variant.has_top and q != d):
                continue
            # top links are the topmost free ends, bottom links the lowest
            k_choices = range(q - d + 1) if variant.has_bottom else (q - d,)
            for k in k_choices:
                top_linked = free[:k]
                defects = free[k:k + d]
                bottom_linked = free[k + d:]
                tg_choices = _ghost_patterns(len(top_linked)) if variant.has_top else ((),)
                for tg in tg_choices:
                    bg_choices = _ghost_patterns(len(bottom_linked)) if variant.has_bottom else ((),)
                    for bg in bg_choices:
                        yield HalfDiagram(n, variant, links, top_linked,
                                          bottom_linked, defects, empty, tg, bg)


def half_count(n, d, variant: Variant) -> int:
    """Closed-form count of half-diagrams with ``d`` defects."""
    def dense_count(m):
        if m < d:
            return 0
        total = 0
        for j in range((m - d) // 2 + 1):
            free = m - 2 * j - d
            tl = comb(m, j) - (comb(m, j - 1) if j else 0)
            if variant.boundaries == 2:
                total += 2 ** free * (free + 1) * tl
            elif variant.boundaries == 1:
                total += 2 ** free * tl
            else:
                total += tl if free == 0 else 0
        return total

    if not variant.dilute:
        return dense_count(n)
    return sum(comb(n, v) * dense_count(n - v) for v in range(n - d + 1))


def dim_formula(n, variant: Variant) -> int:
    """Dimension of the diagram algebra: sum over defects of squared half counts."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(half_count(n, d, variant) ** 2 for d in range(n + 1))


# ---------------------------------------------------------------------------
# glue and cut
# ---------------------------------------------------------------------------

def _top_slots(half: HalfDiagram):
    """Top boundary attachment order: higher nodes attach further left."""
    return {node: s for s, node in enumerate(half.top_linked, start=1)}


def _bottom_slots(half: HalfDiagram):
    """Bottom boundary attachment order: lower nodes attach further left."""
    return {node: s for s, node in enumerate(reversed(half.bottom_linked), start=1)}


def glue(x: HalfDiagram, y: HalfDiagram) -> Diagram:
    """Reflect ``y``, join defects top to bottom, and merge middle domains mod 2."""
    if x.n != y.n or x.variant != y.variant:
        raise ValueError("size or variant mismatch")
    if len(x.defects) != len(y.defects):
        raise ValueError("defect count mismatch")
    n, variant = x.n, x.variant

    strings = []
    xt, xb = _top_slots(x), _bottom_slots(x)
    yt, yb = _top_slots(y), _bottom_slots(y)
    n_xt, n_xb = len(x.top_linked), len(x.bottom_linked)
    n_yt, n_yb = len(y.top_linked), len(y.bottom_linked)

    for i, j in x.links:
        strings.append((("L", i), ("L", j)))
    for node, s in xt.items():
        strings.append((("L", node), ("T", s)))
    for node, s in xb.items():
        strings.append((("L", node), ("B", s)))
    for i, j in y.links:
        strings.append((("R", i), ("R", j)))
    for node, s in yt.items():
        # reflection reverses the slot order and appends after x's slots
        strings.append((("R", node), ("T", n_xt + (n_yt + 1 - s))))
    for node, s in yb.items():
        strings.append((("R", node), ("B", n_xb + (n_yb + 1 - s))))
    for dx, dy in zip(x.defects, y.defects):
        strings.append((("L", dx), ("R", dy)))

    def merge(gx, gy, has):
        if not has:
            return ()
        mid = (gx[-1] + gy[-1]) % 2
        return gx[:-1] + (mid,) + tuple(reversed(gy[:-1]))

    empty = {("L", i) for i in x.empty} | {("R", i) for i in y.empty}
    return make_diagram(
        n, variant, strings, empty=empty,
        top_ghosts=merge(x.top_ghosts, y.top_ghosts, variant.has_top),
        bottom_ghosts=merge(x.bottom_ghosts, y.bottom_ghosts, variant.has_bottom),
    )


def cut(z: Diagram) -> tuple[HalfDiagram, HalfDiagram]:
    """Inverse of :func:`glue`: split at the throughlines, fixing far-right parity."""
    n, variant = z.n, z.variant
    sides = {"L": {"links": [], "top": [], "bottom": [], "defects": [], "empty": set()},
             "R": {"links": [], "top": [], "bottom": [], "defects": [], "empty": set()}}
    throughlines = []
    top_att_side = {}
    bottom_att_side = {}
    for a, b in z.strings:
        ka, kb = a[0], b[0]
        if {ka, kb} == {"L", "R"}:
            throughlines.append((a[1] if ka == "L" else b[1], a[1] if ka == "R" else b[1]))
        elif ka == kb and ka in "LR":
            sides[ka]["links"].append((a[1], b[1]))
        else:
            node = a if ka in "LR" else b
            bd = b if kb in "TB" else a
            if bd[0] == "T":
                sides[node[0]]["top"].append(node[1])
                top_att_side[bd[1]] = node[0]
            else:
                sides[node[0]]["bottom"].append(node[1])
                bottom_att_side[bd[1]] = node[0]
    for e in z.empty:
        sides[e[0]]["empty"].add(e[1])
    throughlines.sort()
    sides["L"]["defects"] = [p[0] for p in throughlines]
    sides["R"]["defects"] = [p[1] for p in throughlines]

    def split(ghosts, att_side, has):
        """Left-prefix and reflected right-suffix, far-right bits forced by parity."""
        if not has:
            return (), ()
        n_left = sum(1 for s in att_side.values() if s == "L")
        n_right = len(att_side) - n_left
        left_prefix = tuple(ghosts[:n_left])
        forced_left = (n_left + sum(left_prefix)) % 2
        rev = tuple(reversed(ghosts[n_left + 1:]))
        forced_right = (n_right + sum(rev)) % 2
        return left_prefix + (forced_left,), rev + (forced_right,)

    tg_l, tg_r = split(z.top_ghosts, top_att_side, variant.has_top)
    bg_l, bg_r = split(z.bottom_ghosts, bottom_att_side, variant.has_bottom)

    left = HalfDiagram(n, variant, sides["L"]["links"], sides["L"]["top"],
                       sides["L"]["bottom"], sides["L"]["defects"],
                       sides["L"]["empty"], tg_l, bg_l)
    right = HalfDiagram(n, variant, sides["R"]["links"], sides["R"]["top"],
                        sides["R"]["bottom"], sides["R"]["defects"],
                        sides["R"]["empty"], tg_r, bg_r)
    return left, right


def enumerate_diagrams(n, variant: Variant, budget: int | None = None):
    """All basis diagrams, defects descending then lexicographic; streaming."""
    if budget is not None and dim_formula(n, variant) > budget:
        raise BudgetExceeded(
            f"dim {variant.name}_{n} = {dim_formula(n, variant)} exceeds budget {budget}")
    for d in range(n, -1, -1):
        halves = sorted(enumerate_half(n, d, variant))
        for x in halves:
            for y in halves:
                yield glue(x, y)
