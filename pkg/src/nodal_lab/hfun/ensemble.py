"""Seeded random ensembles of closed-form harmonic functions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from .expressions import LinComb, PlanarPower, SolidHarmonic3


@dataclass(frozen=True)
class EnsembleSpec:
    dim: int = 2
    max_degree: int = 8
    law: str = "gaussian"     # "gaussian" | "rademacher"


def random_ensemble(seed: int, spec: EnsembleSpec):
    """Random linear combination of homogeneous harmonic terms, degrees 1..D.

    In 2D the terms are Re/Im((x+iy)^d); in 3D they are solid harmonics
    r^l Y_lm with 1 <= l <= D.  Reproducible from the seed.
    """
    if spec.dim not in (2, 3):
        raise DomainError("ensembles are available for dim 2 and 3 only")
    if spec.max_degree < 1:
        raise DomainError("max_degree must be >= 1")
    rng = np.random.default_rng(seed)

    children = []
    if spec.dim == 2:
        for d in range(1, spec.max_degree + 1):
            children.append(PlanarPower(d, "re"))
            children.append(PlanarPower(d, "im"))
    else:
        for l in range(1, spec.max_degree + 1):
            for m in range(-l, l + 1):
                children.append(SolidHarmonic3(l, m))

    if spec.law == "gaussian":
        coeffs = rng.standard_normal(len(children))
    elif spec.law == "rademacher":
        coeffs = rng.choice([-1.0, 1.0], size=len(children))
    else:
        raise DomainError(f"unknown coefficient law {spec.law!r}")
    # guard against an (improbable) all-zero draw
    if not np.any(coeffs):
        coeffs[0] = 1.0
    return LinComb(tuple(coeffs), tuple(children))
