"""Parameter names and numeric parameter bindings.

Two parameter sets are supported.  The standard set has nine names: the
loop weight ``beta``, top-arc weights ``alpha1..alpha3``, bottom-arc
weights ``delta1..delta3`` and the top-to-bottom weights ``gamma12`` and
``gamma3``.  The generalised set splits every parity-paired arc weight,
giving thirteen names.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

STANDARD_PARAMS = (
    "beta",
    "alpha1", "alpha2", "alpha3",
    "gamma12", "gamma3",
    "delta1", "delta2", "delta3",
)

GENERALISED_PARAMS = (
    "beta",
    "alpha1", "alpha2", "alpha3", "alpha4",
    "gamma1", "gamma2", "gamma3", "gamma4",
    "delta1", "delta2", "delta3", "delta4",
)

# Substitution that collapses the generalised set onto the standard one.
GENERALISED_TO_STANDARD = {
    "alpha4": "alpha3",
    "delta4": "delta3",
    "gamma1": "gamma12",
    "gamma2": "gamma12",
    "gamma4": "gamma3",
}

#: total order used for canonical serialisation of monomials
PARAM_ORDER = {name: i for i, name in enumerate(sorted(set(STANDARD_PARAMS) | set(GENERALISED_PARAMS)))}


def check_params(names, generalised: bool) -> None:
    legal = GENERALISED_PARAMS if generalised else STANDARD_PARAMS
    for name in names:
        if name not in legal:
            mode = "generalised" if generalised else "standard"
            raise ValueError(f"{name!r} is not a legal parameter in {mode} mode")


class UnboundParameter(KeyError):
    """Raised when evaluating a polynomial against an incomplete binding."""


@dataclass(frozen=True)
class ParamBinding:
    """Complex values for the boundary/loop parameters.

    ``spectral`` optionally records the constant the loop weight was
    derived from: ``("lambda", value)`` with beta = 2 cos(lambda), or
    ``("phi", value)`` with beta = -2 cos(4 phi).
    """

    values: dict = field(default_factory=dict)
    spectral: tuple | None = None

    def __post_init__(self):
        if self.spectral is not None:
            kind, s = self.spectral
            beta = self.values.get("beta")
            if beta is None:
                raise ValueError("spectral constant set but beta unbound")
            expect = 2 * cmath.cos(s) if kind == "lambda" else -2 * cmath.cos(4 * s)
            if abs(beta - expect) > 1e-12:
                raise ValueError(f"beta={beta} inconsistent with {kind}={s}")

    def __getitem__(self, name: str) -> complex:
        try:
            return self.values[name]
        except KeyError:
            raise UnboundParameter(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self.values

    @staticmethod
    def dense(lam: complex, **values) -> "ParamBinding":
        vals = dict(values)
        vals["beta"] = 2 * cmath.cos(lam)
        return ParamBinding(vals, ("lambda", lam))

    @staticmethod
    def dilute(phi: complex, **values) -> "ParamBinding":
        vals = dict(values)
        vals["beta"] = -2 * cmath.cos(4 * phi)
        return ParamBinding(vals, ("phi", phi))

    @staticmethod
    def random(rng, generalised: bool = False, spectral: str | None = None) -> "ParamBinding":
        """Generic complex values, bounded away from zero, for falsification-free sampling."""
        names = GENERALISED_PARAMS if generalised else STANDARD_PARAMS

        def draw():
            r = 0.4 + rng.random()
            theta = 2 * math.pi * rng.random()
            return r * cmath.exp(1j * theta)

        vals = {name: draw() for name in names if name != "beta"}
        if spectral == "lambda":
            lam = 0.4 + 0.9 * rng.random() + 0.1j * (rng.random() - 0.5)
            vals["beta"] = 2 * cmath.cos(lam)
            return ParamBinding(vals, ("lambda", lam))
        if spectral == "phi":
            phi = 0.25 + 0.35 * rng.random() + 0.05j * (rng.random() - 0.5)
            vals["beta"] = -2 * cmath.cos(4 * phi)
            return ParamBinding(vals, ("phi", phi))
        vals["beta"] = draw()
        return ParamBinding(vals)

    @property
    def lam(self) -> complex:
        if self.spectral is None or self.spectral[0] != "lambda":
            raise ValueError("binding has no dense spectral constant")
        return self.spectral[1]

    @property
    def phi(self) -> complex:
        if self.spectral is None or self.spectral[0] != "phi":
            raise ValueError("binding has no dilute spectral constant")
        return self.spectral[1]
