"""Cell-datum checks: half-diagram pairs, reflection, and T-independence.

The datum is (Lambda, M, C, *): Lambda = {0..n} defect counts with the
usual order, M(lam) the half-diagrams with lam defects, C = glue, and *
the reflection anti-involution.  Products never raise the throughline
count, so reduction mod the span of lower cells is a filter on the
throughline grading.
"""

from __future__ import annotations

import random

from .diagrams import Variant, concat, reflect
from .halfdiag import cut, dim_formula, enumerate_half, glue
from .scalars import Poly


def check_axiom1(n, variant: Variant) -> dict:
    """C is injective with image the whole diagram basis."""
    seen = {}
    collisions = 0
    total = 0
    for lam in range(n + 1):
        halves = list(enumerate_half(n, lam, variant))
        for s in halves:
            for t in halves:
                total += 1
                z = glue(s, t)
                if z in seen:
                    collisions += 1
                seen[z] = (lam, s, t)
    dim = dim_formula(n, variant)
    return {
        "axiom": 1,
        "pairs": total,
        "distinct": len(seen),
        "collisions": collisions,
        "dim": dim,
        "pass": collisions == 0 and len(seen) == dim,
    }


def check_axiom2(n, variant: Variant) -> dict:
    """Reflection swaps the two half-diagrams of every basis element."""
    failures = 0
    total = 0
    for lam in range(n + 1):
        halves = list(enumerate_half(n, lam, variant))
        for s in halves:
            for t in halves:
                total += 1
                if reflect(glue(s, t)) != glue(t, s):
                    failures += 1
    return {"axiom": 2, "checked": total, "failures": failures, "pass": failures == 0}


def _action_row(a, s, t, lam):
    """Coefficients r(s') with a * C_{s,t} = sum r(s') C_{s',t} mod lower cells.

    Returns None if the product is annihilated or drops below lam
    throughlines (the zero row), else a dict {s': Poly}.
    """
    out = concat(a, glue(s, t))
    if out.annihilated:
        return {}
    z = out.diagram
    if z.throughlines() < lam:
        return {}
    left, right = cut(z)
    if right != t:
        raise AssertionError("product did not preserve the right half-diagram")
    return {left: Poly.from_mono(out.weight)}


def check_axiom3(n, variant: Variant, multipliers=None, sample=None, seed=0) -> dict:
    """r_a(s', s) must not depend on t.

    ``multipliers`` defaults to every basis diagram (exhaustive); pass
    ``sample`` to draw that many seeded random multipliers instead.
    """
    from .halfdiag import enumerate_diagrams

    basis = list(enumerate_diagrams(n, variant))
    if multipliers is None:
        multipliers = basis
    if sample is not None:
        rng = random.Random(seed)
        multipliers = [rng.choice(basis) for _ in range(sample)]

    checked = 0
    failures = 0
    for lam in range(n + 1):
        halves = list(enumerate_half(n, lam, variant))
        if not halves:
            continue
        for a in multipliers:
            for s in halves:
                reference = None
                for t in halves:
                    row = _action_row(a, s, t, lam)
                    checked += 1
                    if reference is None:
                        reference = row
                    elif row != reference:
                        failures += 1
    return {"axiom": 3, "checked": checked, "failures": failures, "pass": failures == 0}


def check_throughline_filtration(n, variant: Variant) -> dict:
    """Products never exceed the throughline count of either factor."""
    from .halfdiag import enumerate_diagrams

    basis = list(enumerate_diagrams(n, variant))
    bad = 0
    for x in basis:
        for y in basis:
            out = concat(x, y)
            if out.annihilated:
                continue
            if out.diagram.throughlines() > min(x.throughlines(), y.throughlines()):
                bad += 1
    return {"checked": len(basis) ** 2, "violations": bad, "pass": bad == 0}
