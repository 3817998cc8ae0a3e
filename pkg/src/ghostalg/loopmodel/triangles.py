"""Boundary triangle tiles and the coefficient families solving the BYBE.

A triangle has two legs facing the bulk.  Its tile either joins them
with an arc, attaches them to the adjacent boundary (depositing the tile's
own item sequence of attachments and ghosts), or, in the dilute case,
leaves legs empty.  The assignment of coefficient indices to ghost
patterns is fixed by the calibration recorded in ``calibration.py``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

LLEG, RLEG = "Lleg", "Rleg"


@dataclass(frozen=True)
class TriTile:
    arc: bool
    attach: tuple  # legs attached to the boundary, left to right
    items: tuple   # boundary item sequence: 'g' or a leg name

    @property
    def occupied(self):
        if self.arc:
            return (LLEG, RLEG)
        return self.attach


ARC_TILE = TriTile(True, (), ())
EMPTY_TILE = TriTile(False, (), ())

# Both-leg tiles, one per even ghost pattern over the three local domains.
PATTERN_TILES = {
    (0, 0, 0): TriTile(False, (LLEG, RLEG), (LLEG, RLEG)),
    (0, 1, 1): TriTile(False, (LLEG, RLEG), (LLEG, "g", RLEG, "g")),
    (1, 0, 1): TriTile(False, (LLEG, RLEG), ("g", LLEG, RLEG, "g")),
    (1, 1, 0): TriTile(False, (LLEG, RLEG), ("g", LLEG, "g", RLEG)),
}

# Single-leg tiles (dilute): one leg attached, one ghost on either side.
SINGLE_TILES = {
    (LLEG, "gl"): TriTile(False, (LLEG,), ("g", LLEG)),
    (LLEG, "gr"): TriTile(False, (LLEG,), (LLEG, "g")),
    (RLEG, "gl"): TriTile(False, (RLEG,), ("g", RLEG)),
    (RLEG, "gr"): TriTile(False, (RLEG,), (RLEG, "g")),
}

# Calibrated index -> tile maps (see calibration.py; frozen golden values).
DENSE_B_ORDER = ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))
DILUTE_B_ORDER = ((LLEG, "gl"), (LLEG, "gr"), (RLEG, "gl"), (RLEG, "gr"))


def dense_tiles(b_order=None):
    """Tile list [arc, b1..b4] in coefficient order."""
    order = b_order or DENSE_B_ORDER
    return [ARC_TILE] + [PATTERN_TILES[p] for p in order]


def dilute_tiles(b_order=None, single_order=None):
    """Tile list [arc, empty, b1..b4, b5..b8] in coefficient order."""
    order = b_order or DENSE_B_ORDER
    singles = single_order or DILUTE_B_ORDER
    return [ARC_TILE, EMPTY_TILE] + [PATTERN_TILES[p] for p in order] + \
        [SINGLE_TILES[s] for s in singles]


# ---------------------------------------------------------------------------
# coefficient families (top boundary; bottom = same functions with deltas)
# ---------------------------------------------------------------------------

def _a_params(binding, names):
    return [binding[n] for n in names]


def helper_A(binding, generalised: bool, prefix="alpha"):
    a1, a2, a3 = (binding[f"{prefix}{i}"] for i in (1, 2, 3))
    a4 = binding[f"{prefix}4"] if generalised else a3
    return a1 ** 2 + a2 ** 2 - 2 * a3 * a4, a1 * a2 - a3 * a4


def P(sigma, tau, theta):
    return 2 * sigma * tau * cmath.cos(theta) + (sigma ** 2 - tau ** 2) * cmath.sin(theta)


def Q(sigma, tau, phi, A1, A2):
    p1, p3 = P(sigma, tau, phi), P(sigma, tau, -3 * phi)
    return A1 * p1 * p3 + A2 * (p1 ** 2 + p3 ** 2)


@dataclass(frozen=True)
class TriangleCoeffs:
    """A chosen solution family with its free parameters.

    ``mode``: "dense" or "dilute"; ``family``: "I".."V"; ``side``: "top" or
    "bottom" (bottom swaps alpha and delta); ``free``: family parameters;
    ``b``: overall scalar profile, defaults to 1.
    """

    mode: str
    family: str
    side: str = "top"
    free: tuple = ()
    b: object = None

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(self.free))

    def _b(self, u):
        return 1.0 if self.b is None else self.b(u)

    def prefix(self):
        return "alpha" if self.side == "top" else "delta"

    def reflected(self) -> "TriangleCoeffs":
        return TriangleCoeffs(self.mode, self.family,
                              "bottom" if self.side == "top" else "top",
                              self.free, self.b)

    def coefficients(self, u, binding, generalised=False):
        if self.mode == "dense":
            return self._dense_coeffs(u, binding, generalised)
        return self._dilute_coeffs(u, binding, generalised)

    # -- dense families -------------------------------------------------
    def _dense_coeffs(self, u, binding, generalised):
        lam = binding.lam
        pre = self.prefix()
        a1, a2, a3 = (binding[f"{pre}{i}"] for i in (1, 2, 3))
        a4 = binding[f"{pre}4"] if generalised else a3
        b = self._b(u)
        denom = 2 * cmath.sin(2 * u) * cmath.sin(lam)
        if self.family == "I":
            kappa, c1, c2, c3, c4 = self.free
            first = c1 * a1 + c3 * a2 + c2 * a3 + c4 * a4
            second = c3 * a1 + c1 * a2 + c2 * a4 + c4 * a3
            a = b / denom * (kappa + first * cmath.cos(2 * u) - second * cmath.cos(2 * u - lam))
            return [a, c1 * b, c2 * b, c3 * b, c4 * b]
        if self.family == "II":
            (kappa,) = self.free
            A1, A2 = helper_A(binding, generalised, pre)
            a = b / denom * (kappa - A1 * cmath.cos(2 * u) + A2 * cmath.cos(2 * u - lam))
            return [a, -a1 * b, a3 * b, -a2 * b, a4 * b]
        raise ValueError(f"unknown dense family {self.family!r}")

    # -- dilute families ------------------------------------------------
    def _dilute_coeffs(self, u, binding, generalised):
        phi = binding.phi
        pre = self.prefix()
        a1, a2, a3 = (binding[f"{pre}{i}"] for i in (1, 2, 3))
        a4 = binding[f"{pre}4"] if generalised else a3
        A1, A2 = helper_A(binding, generalised, pre)
        b = self._b(u)
        s2u, s2p = cmath.sin(2 * u), cmath.sin(2 * phi)

        if self.family in ("I", "II"):
            mu, nu = self.free
            mix = mu * nu * (a1 + a2) + mu ** 2 * a3 + nu ** 2 * a4
            if self.family == "I":
                a1c = -b / (2 * s2u * s2p) * (
                    cmath.sin(u - phi / 2) * (cmath.cos(2 * (u - phi)) - cmath.cos(phi)) * mix
                    + 4 * cmath.cos(phi) * cmath.sin(u - 3 * phi / 2))
                a2c = b / (2 * s2u * s2p) * (
                    cmath.sin(u + phi / 2) * (cmath.cos(2 * (u - phi)) - cmath.cos(phi)) * mix
                    + 4 * cmath.cos(phi) * cmath.sin(u + 3 * phi / 2))
                env = cmath.sin(u - phi / 2)
                b14 = [mu * nu * b * env, nu ** 2 * b * env, mu * nu * b * env, mu ** 2 * b * env]
                b58 = [nu * b, mu * b, mu * b, nu * b]
            else:
                a1c = -b / (2 * s2u * s2p) * (
                    cmath.cos(u - phi / 2) * (cmath.cos(2 * (u - phi)) + cmath.cos(phi)) * mix
                    - 4 * cmath.cos(phi) * cmath.cos(u - 3 * phi / 2))
                a2c = -b / (2 * s2u * s2p) * (
                    cmath.cos(u + phi / 2) * (cmath.cos(2 * (u - phi)) + cmath.cos(phi)) * mix
                    - 4 * cmath.cos(phi) * cmath.cos(u + 3 * phi / 2))
                env = cmath.cos(u - phi / 2)
                b14 = [mu * nu * b * env, nu ** 2 * b * env, mu * nu * b * env, mu ** 2 * b * env]
                b58 = [nu * b, mu * b, -mu * b, -nu * b]
            return [a1c, a2c] + b14 + b58

        if self.family == "III":
            sigma, tau = self.free
            p3 = P(sigma, tau, -3 * phi)
            a1c = b / s2u * A1 * (sigma * cmath.cos(u) + tau * cmath.sin(u)) * \
                (sigma * cmath.cos(u - phi) + tau * cmath.sin(u - phi))
            a2c = b / s2u * A1 * (sigma * cmath.cos(u) - tau * cmath.sin(u)) * \
                (sigma * cmath.cos(u - phi) + tau * cmath.sin(u - phi))
            return [a1c, a2c, a1 * b * p3, -a3 * b * p3, a2 * b * p3, -a4 * b * p3,
                    0, 0, 0, 0]

        if self.family == "IV":
            mu, nu, sigma, tau = self.free
            mix = mu * nu * (a1 + a2) + mu ** 2 * a3 + nu ** 2 * a4
            p1, p3 = P(sigma, tau, phi), P(sigma, tau, -3 * phi)
            grow = (sigma * cmath.cos(u) + tau * cmath.sin(u)) * \
                (sigma * cmath.cos(u - phi) + tau * cmath.sin(u - phi))
            gshr = (sigma * cmath.cos(u) - tau * cmath.sin(u)) * \
                (sigma * cmath.cos(u - phi) + tau * cmath.sin(u - phi))
            a1c = b / s2u * (a1 - a2) * mix * grow
            a2c = b / s2u * (a1 - a2) * mix * gshr
            b1 = mu * b * ((nu * a2 + mu * a3) * p1 + (nu * a1 + mu * a3) * p3)
            b2 = nu * b * ((nu * a2 + mu * a3) * p1 + (nu * a1 + mu * a3) * p3)
            b3 = -nu * b * ((mu * a1 + nu * a3) * p1 + (mu * a2 + nu * a3) * p3)
            b4 = -mu * b * ((mu * a1 + nu * a3) * p1 + (mu * a2 + nu * a3) * p3)
            return [a1c, a2c, b1, b2, b3, b4, 0, 0, 0, 0]

        if self.family == "V":
            c2, c3, sigma, tau = self.free
            p1, p3 = P(sigma, tau, phi), P(sigma, tau, -3 * phi)
            pm = P(sigma, tau, -phi)
            c2p = cmath.cos(2 * phi)
            mixv = (c2 * a1 + c3 * a3) * p3 + (c2 * a2 + c3 * a3) * p1
            a1c = b / (4 * s2u * c2p ** 2) * (a1 - a2) * \
                (sigma * cmath.cos(u) + tau * cmath.sin(u)) * \
                (sigma * cmath.cos(u - phi) + tau * cmath.sin(u - phi)) * mixv
            a2c = b / (4 * s2u * c2p ** 2) * (a1 - a2) * \
                (sigma * cmath.cos(u) - tau * cmath.sin(u)) * \
                (sigma * cmath.cos(u - phi) + tau * cmath.sin(u - phi)) * mixv
            b1 = c2 * b / (2 * c2p) * pm * (a1 * p3 + a2 * p1)
            b2 = -c2 * a3 * b * pm ** 2
            b3 = -c3 * a3 * b * pm ** 2
            b4 = c3 * b / (2 * c2p) * pm * (a1 * p3 + a2 * p1)
            return [a1c, a2c, b1, b2, b3, b4, 0, 0, 0, 0]

        raise ValueError(f"unknown dilute family {self.family!r}")


def solve_constraint(family: str, binding, tau: complex, generalised=False, side="top"):
    """Roots sigma of the family III quadratic or the family V quartic."""
    import numpy as np

    phi = binding.phi
    prefix = "alpha" if side == "top" else "delta"
    A1, A2 = helper_A(binding, generalised, prefix)

    def p_coeffs(theta):
        # P(sigma, tau; theta) as a polynomial in sigma: [s^2, s, 1]
        return np.array([cmath.sin(theta), 2 * tau * cmath.cos(theta),
                         -tau ** 2 * cmath.sin(theta)], dtype=complex)

    p1, p3 = p_coeffs(phi), p_coeffs(-3 * phi)
    if family == "III":
        poly = A1 * p1 + A2 * p3
    elif family == "V":
        poly = A1 * np.convolve(p1, p3) + A2 * (np.convolve(p1, p1) + np.convolve(p3, p3))
    else:
        raise ValueError("constraint families are III and V")
    poly = np.trim_zeros(poly, "f")
    if poly.size <= 1:
        return []
    roots = np.roots(poly)
    out = []
    for sigma in roots:
        if family == "III":
            res = abs(A1 * P(sigma, tau, phi) + A2 * P(sigma, tau, -3 * phi))
        else:
            res = abs(Q(sigma, tau, phi, A1, A2))
        scale = max(abs(A1), abs(A2), 1.0) * max(abs(sigma), abs(tau), 1.0) ** 4
        if res / scale > 1e-10:
            raise ArithmeticError(f"root failed back-substitution: residual {res}")
        out.append(complex(sigma))
    return out
