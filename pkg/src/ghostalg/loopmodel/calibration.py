"""Operational calibration of the triangle tile labelling.

The coefficient indices b1..b4 (and b5..b8 in the dilute case) are tied
to concrete ghost patterns by requiring that the known solution families
actually solve the BYBE: only one assignment of patterns to indices does.
The result is frozen in ``golden_calibration.json`` and mirrored by the
module constants in ``triangles.py``; ``verify_calibration`` recomputes
it from scratch.
"""

from __future__ import annotations

import itertools
import json
import pathlib
import random

from .relations import check_bybe, random_family, sample_spectral
from .triangles import DENSE_B_ORDER, DILUTE_B_ORDER, PATTERN_TILES, SINGLE_TILES

GOLDEN_PATH = pathlib.Path(__file__).with_name("golden_calibration.json")


def calibrate(seed=2024, tol=1e-9, points=2):
    """Recompute the unique tile assignment from the BYBE; returns (dense, dilute)."""
    rng = random.Random(seed)

    # Solution II alone cannot split b2 from b4 (both carry alpha3 in
    # standard mode); Solution I with generic c2 != c4 does.
    dense_pts = [(sample_spectral(rng, "dense"), fam)
                 for fam in ("II", "I") for _ in range(points)]
    dense_hits = []
    for perm in itertools.permutations(PATTERN_TILES):
        ok = True
        for (u, v, binding), fam in dense_pts:
            coeffs = random_family(rng, "dense", fam, binding)
            if check_bybe(u, v, coeffs, binding, "dense", b_order=perm) > tol:
                ok = False
                break
        if ok:
            dense_hits.append(perm)
    if len(dense_hits) != 1:
        raise RuntimeError(f"dense calibration not unique: {dense_hits}")
    dense = dense_hits[0]

    # Solution I is symmetric under swapping the mirror-paired singles;
    # Solution II has opposite signs on b7, b8 and breaks every swap.
    dilute_pts = [(sample_spectral(rng, "dilute"), fam)
                  for fam in ("I", "II") for _ in range(points)]
    dilute_hits = []
    for perm in itertools.permutations(SINGLE_TILES):
        ok = True
        for (u, v, binding), fam in dilute_pts:
            coeffs = random_family(rng, "dilute", fam, binding)
            if check_bybe(u, v, coeffs, binding, "dilute",
                          b_order=dense, single_order=perm) > tol:
                ok = False
                break
        if ok:
            dilute_hits.append(perm)
    if len(dilute_hits) != 1:
        raise RuntimeError(f"dilute calibration not unique: {dilute_hits}")
    return dense, dilute_hits[0]


def write_golden(dense, dilute):
    GOLDEN_PATH.write_text(json.dumps({
        "dense_b_order": [list(p) for p in dense],
        "dilute_single_order": [list(s) for s in dilute],
    }, indent=2))


def load_golden():
    data = json.loads(GOLDEN_PATH.read_text())
    dense = tuple(tuple(p) for p in data["dense_b_order"])
    dilute = tuple(tuple(s) for s in data["dilute_single_order"])
    return dense, dilute


def verify_calibration(seed=2024) -> bool:
    """The frozen constants must coincide with a fresh calibration and the golden file."""
    dense, dilute = calibrate(seed=seed)
    golden_dense, golden_dilute = load_golden()
    return (dense == DENSE_B_ORDER == golden_dense
            and dilute == DILUTE_B_ORDER == golden_dilute)
