"""Bulk face operators: weighted local tiles on a square face.

A tile is a tuple of leg pairs over the four legs NW, NE, SW, SE (the
edge midpoints of a diamond-drawn face); legs not mentioned are empty.
Dense faces use the two full-pairing tiles; dilute faces use all nine
partial pairings.
"""

from __future__ import annotations

import cmath

LEGS = ("NW", "NE", "SW", "SE")


def tile(*pairs):
    return tuple(sorted(tuple(sorted(p)) for p in pairs))


TILE_H = tile(("NW", "NE"), ("SW", "SE"))   # arcs across the top and the bottom
TILE_V = tile(("NW", "SW"), ("NE", "SE"))   # arcs down the left and the right
TILE_EMPTY = tile()
TILE_TOP = tile(("NW", "NE"))
TILE_BOT = tile(("SW", "SE"))
TILE_LEFT = tile(("NW", "SW"))
TILE_RIGHT = tile(("NE", "SE"))
TILE_UP = tile(("SW", "NE"))                # straight string, rising
TILE_DOWN = tile(("NW", "SE"))              # straight string, falling

DENSE_TILES = (TILE_H, TILE_V)
DILUTE_TILES = (TILE_EMPTY, TILE_BOT, TILE_TOP, TILE_RIGHT, TILE_LEFT,
                TILE_UP, TILE_DOWN, TILE_H, TILE_V)


def dense_face(u: complex, lam: complex):
    """Temperley-Lieb face operator; weights (sin(lam-u), sin u)/sin lam."""
    s = cmath.sin(lam)
    if abs(s) < 1e-12:
        raise ValueError("singular spectral constant: sin(lambda) = 0")
    return [
        (TILE_H, cmath.sin(lam - u) / s),
        (TILE_V, cmath.sin(u) / s),
    ]


def dilute_weights(u: complex, phi: complex):
    return {
        "w1": cmath.sin(2 * phi) * cmath.sin(3 * phi) + cmath.sin(u) * cmath.sin(3 * phi - u),
        "w2": cmath.sin(2 * phi) * cmath.sin(3 * phi - u),
        "w3": cmath.sin(2 * phi) * cmath.sin(u),
        "w4": cmath.sin(u) * cmath.sin(3 * phi - u),
        "w5": cmath.sin(2 * phi - u) * cmath.sin(3 * phi - u),
        "w6": -cmath.sin(u) * cmath.sin(phi - u),
    }


def dilute_face(u: complex, phi: complex):
    w = dilute_weights(u, phi)
    return [
        (TILE_EMPTY, w["w1"]),
        (TILE_BOT, w["w2"]), (TILE_TOP, w["w2"]),
        (TILE_RIGHT, w["w3"]), (TILE_LEFT, w["w3"]),
        (TILE_UP, w["w4"]), (TILE_DOWN, w["w4"]),
        (TILE_H, w["w5"]),
        (TILE_V, w["w6"]),
    ]


def face(u: complex, binding, mode: str):
    """Face operator for ``mode`` in {"dense", "dilute"} at spectral point u."""
    if mode == "dense":
        return dense_face(u, binding.lam)
    return dilute_face(u, binding.phi)


_ROT90 = {"NW": "SW", "NE": "NW", "SE": "NE", "SW": "SE"}  # quarter turn, anticlockwise


def rotate_tile(t, times: int = 1):
    for _ in range(times % 4):
        t = tile(*[(_ROT90[a], _ROT90[b]) for a, b in t])
    return t
