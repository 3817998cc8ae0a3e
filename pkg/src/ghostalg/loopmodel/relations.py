"""Integrability checks: YBE, crossing, inversion, BYBE, transfer tangles.

Assemblies follow the lattice pictures: diamond faces carry legs NW, NE,
SW, SE; axis-aligned square faces enter with the role map L->NW, T->NE,
R->SE, B->SW; top boundary triangles sit between the upper edges of
adjacent faces.  Every relation is contracted into the appropriate
algebra and compared coefficientwise.
"""

from __future__ import annotations

import cmath
import random

from ..diagrams import Variant
from ..elements import Element, max_residual
from ..params import ParamBinding
from .assembly import Assembly, Slot
from .faces import face, rotate_tile
from .triangles import TriangleCoeffs, dense_tiles, dilute_tiles


def _variant(mode: str, boundaries: int) -> Variant:
    return Variant(mode == "dilute", boundaries)


def face_slot(name, u, binding, mode) -> Slot:
    return Slot(name, "face", face(u, binding, mode))


def triangle_slot(name, u, coeffs: TriangleCoeffs, binding, generalised=False,
                  b_order=None, single_order=None) -> Slot:
    cs = coeffs.coefficients(u, binding, generalised)
    tiles = dense_tiles(b_order) if coeffs.mode == "dense" else \
        dilute_tiles(b_order, single_order)
    boundary = "T" if coeffs.side == "top" else "B"
    return Slot(name, "triangle", list(zip(tiles, cs)), boundary)


# ---------------------------------------------------------------------------
# YBE
# ---------------------------------------------------------------------------

def ybe_sides(u, v, binding, mode):
    var = _variant(mode, 0)
    lhs = Assembly(
        3, var,
        slots=[face_slot("D", u - v, binding, mode),
               face_slot("S1", v, binding, mode),
               face_slot("S2", u, binding, mode)],
        links=[(("D", "NE"), ("S1", "NW")),
               (("D", "SE"), ("S2", "NW")),
               (("S1", "SW"), ("S2", "NE"))],
        external={("D", "NW"): ("L", 1), ("D", "SW"): ("L", 2),
                  ("S2", "SW"): ("L", 3), ("S2", "SE"): ("R", 3),
                  ("S1", "SE"): ("R", 2), ("S1", "NE"): ("R", 1)},
    )
    rhs = Assembly(
        3, var,
        slots=[face_slot("S1p", u, binding, mode),
               face_slot("S2p", v, binding, mode),
               face_slot("Dp", u - v, binding, mode)],
        links=[(("S1p", "SE"), ("Dp", "NW")),
               (("S2p", "SE"), ("Dp", "SW")),
               (("S1p", "SW"), ("S2p", "NE"))],
        external={("S1p", "NW"): ("L", 1), ("S2p", "NW"): ("L", 2),
                  ("S2p", "SW"): ("L", 3), ("Dp", "SE"): ("R", 3),
                  ("Dp", "NE"): ("R", 2), ("S1p", "NE"): ("R", 1)},
    )
    return lhs, rhs


def check_ybe(u, v, binding, mode) -> float:
    lhs, rhs = ybe_sides(u, v, binding, mode)
    return max_residual(lhs.contract(binding), rhs.contract(binding))


# ---------------------------------------------------------------------------
# crossing symmetry (tile-weight identities under rotation)
# ---------------------------------------------------------------------------

def check_crossing(u, binding, mode) -> float:
    lam = binding.lam if mode == "dense" else 3 * binding.phi
    direct = dict(face(u, binding, mode))
    crossed = dict(face(lam - u, binding, mode))
    scale = max(max(abs(w) for w in direct.values()),
                max(abs(w) for w in crossed.values()), 1e-300)
    res = 0.0
    for t, w in crossed.items():
        res = max(res, abs(direct.get(rotate_tile(t), 0) - w))
    for t, w in direct.items():
        res = max(res, abs(direct.get(rotate_tile(t, 2), 0) - w))
    return res / scale


# ---------------------------------------------------------------------------
# local inversion
# ---------------------------------------------------------------------------

def check_inversion(u, binding, mode) -> float:
    var = _variant(mode, 0)
    asm = Assembly(
        2, var,
        slots=[face_slot("F1", u, binding, mode),
               face_slot("F2", -u, binding, mode)],
        links=[(("F1", "NE"), ("F2", "NW")), (("F1", "SE"), ("F2", "SW"))],
        external={("F1", "NW"): ("L", 1), ("F1", "SW"): ("L", 2),
                  ("F2", "NE"): ("R", 1), ("F2", "SE"): ("R", 2)},
    )
    got = asm.contract(binding)
    if mode == "dense":
        lam = binding.lam
        factor = cmath.sin(lam - u) * cmath.sin(lam + u) / cmath.sin(lam) ** 2
    else:
        phi = binding.phi
        factor = (cmath.sin(2 * phi - u) * cmath.sin(3 * phi - u)
                  * cmath.sin(2 * phi + u) * cmath.sin(3 * phi + u))
    want = Element.identity(2, var, mode="numeric", binding=binding).scale(factor)
    return max_residual(got, want)


# ---------------------------------------------------------------------------
# BYBE
# ---------------------------------------------------------------------------

def bybe_sides(u, v, coeffs: TriangleCoeffs, binding, mode, generalised=False,
               b_order=None, single_order=None):
    if coeffs.side != "top":
        raise ValueError("the BYBE is solved for top-boundary coefficients")
    var = _variant(mode, 1)

    def tri(name, arg):
        return triangle_slot(name, arg, coeffs, binding, generalised,
                             b_order, single_order)

    lhs = Assembly(
        2, var,
        slots=[face_slot("D1", u - v, binding, mode),
               tri("TU", u),
               face_slot("D2", u + v, binding, mode),
               tri("TV", v)],
        links=[(("D1", "NE"), ("TU", "Lleg")),
               (("TU", "Rleg"), ("D2", "NW")),
               (("D2", "NE"), ("TV", "Lleg")),
               (("D1", "SE"), ("D2", "SW"))],
        external={("D1", "NW"): ("L", 1), ("D1", "SW"): ("L", 2),
                  ("D2", "SE"): ("R", 2), ("TV", "Rleg"): ("R", 1)},
        top_order=["TU", "TV"],
    )
    rhs = Assembly(
        2, var,
        slots=[tri("TVp", v),
               face_slot("D1p", u + v, binding, mode),
               tri("TUp", u),
               face_slot("D2p", u - v, binding, mode)],
        links=[(("TVp", "Rleg"), ("D1p", "NW")),
               (("D1p", "NE"), ("TUp", "Lleg")),
               (("TUp", "Rleg"), ("D2p", "NW")),
               (("D1p", "SE"), ("D2p", "SW"))],
        external={("TVp", "Lleg"): ("L", 1), ("D1p", "SW"): ("L", 2),
                  ("D2p", "SE"): ("R", 2), ("D2p", "NE"): ("R", 1)},
        top_order=["TVp", "TUp"],
    )
    return lhs, rhs


def check_bybe(u, v, coeffs, binding, mode, generalised=False,
               b_order=None, single_order=None) -> float:
    lhs, rhs = bybe_sides(u, v, coeffs, binding, mode, generalised,
                          b_order, single_order)
    return max_residual(lhs.contract(binding, generalised),
                        rhs.contract(binding, generalised))


# ---------------------------------------------------------------------------
# transfer tangle
# ---------------------------------------------------------------------------

def transfer_assembly(u, n, binding, mode, top: TriangleCoeffs,
                      bottom: TriangleCoeffs, generalised=False) -> Assembly:
    lam = binding.lam if mode == "dense" else 3 * binding.phi
    var = _variant(mode, 2)
    slots = [triangle_slot("TT", lam - u, top, binding, generalised)]
    links = []
    external = {}
    for i in range(1, n + 1):
        slots.append(face_slot(f"FL{i}", u, binding, mode))
        slots.append(face_slot(f"FR{i}", lam - u, binding, mode))
        links.append(((f"FL{i}", "SE"), (f"FR{i}", "NW")))
        external[(f"FL{i}", "NW")] = ("L", i)
        external[(f"FR{i}", "SE")] = ("R", i)
        if i > 1:
            links.append(((f"FL{i-1}", "SW"), (f"FL{i}", "NE")))
            links.append(((f"FR{i-1}", "SW"), (f"FR{i}", "NE")))
    slots.append(triangle_slot("TB", u, bottom, binding, generalised))
    links += [(("TT", "Lleg"), ("FL1", "NE")), (("TT", "Rleg"), ("FR1", "NE")),
              (("TB", "Lleg"), (f"FL{n}", "SW")), (("TB", "Rleg"), (f"FR{n}", "SW"))]
    return Assembly(n, var, slots, links, external,
                    top_order=["TT"], bottom_order=["TB"])


def transfer_tangle(u, n, binding, mode, top, bottom=None, generalised=False,
                    budget=None) -> Element:
    if bottom is None:
        bottom = top.reflected()
    asm = transfer_assembly(u, n, binding, mode, top, bottom, generalised)
    return asm.contract(binding, generalised, budget=budget)


def commutator_residual(u, v, n, binding, mode, top, bottom=None,
                        generalised=False) -> float:
    tu = transfer_tangle(u, n, binding, mode, top, bottom, generalised)
    tv = transfer_tangle(v, n, binding, mode, top, bottom, generalised)
    return max_residual(tu * tv, tv * tu)


# ---------------------------------------------------------------------------
# seeded generic sampling
# ---------------------------------------------------------------------------

def _guarded(rng, guards, draw):
    for _ in range(1000):
        val = draw(rng)
        if all(abs(g(val)) > 0.05 for g in guards):
            return val
    raise RuntimeError("could not sample away from the singular locus")


def sample_spectral(rng, mode):
    """Generic (u, v, binding) bounded away from singular denominators."""
    if mode == "dense":
        binding = ParamBinding.random(rng, spectral="lambda")
    else:
        binding = ParamBinding.random(rng, spectral="phi")

    def draw(r):
        return 0.1 + 1.2 * r.random() + 0.1j * (r.random() - 0.5)

    guards = [lambda u: cmath.sin(2 * u)]
    if mode == "dense":
        guards.append(lambda u: cmath.sin(binding.lam - u))
    else:
        guards.append(lambda u: cmath.sin(2 * binding.phi - u))
    u = _guarded(rng, guards, draw)
    v = _guarded(rng, guards + [lambda w: cmath.sin(u - w), lambda w: cmath.sin(u + w)], draw)
    return u, v, binding


def random_family(rng, mode, family, binding, generalised=False, side="top") -> TriangleCoeffs:
    """Random free parameters for a solution family; constrained ones solved.

    Constrained families (III, V) solve their constraint against the
    parameters of the requested side, so a bottom family is generated
    directly rather than by reflecting a top one.
    """
    from .triangles import solve_constraint

    def draw():
        return (0.4 + rng.random()) * cmath.exp(2j * cmath.pi * rng.random())

    if mode == "dense":
        if family == "I":
            c1, c2, c4 = draw(), draw(), draw()
            c3 = c2 * c4 / c1
            return TriangleCoeffs("dense", "I", side, free=(draw(), c1, c2, c3, c4))
        return TriangleCoeffs("dense", "II", side, free=(draw(),))
    if family in ("I", "II"):
        return TriangleCoeffs("dilute", family, side, free=(draw(), draw()))
    if family == "IV":
        return TriangleCoeffs("dilute", "IV", side, free=(draw(), draw(), draw(), draw()))
    tau = draw()
    roots = solve_constraint(family, binding, tau, generalised, side=side)
    sigma = roots[rng.randrange(len(roots))]
    if family == "III":
        return TriangleCoeffs("dilute", "III", side, free=(sigma, tau))
    return TriangleCoeffs("dilute", "V", side, free=(draw(), draw(), sigma, tau))


DENSE_FAMILIES = ("I", "II")
DILUTE_FAMILIES = ("I", "II", "III", "IV", "V")
