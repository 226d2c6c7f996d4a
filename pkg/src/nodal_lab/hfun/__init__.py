"""Closed-form harmonic function algebra, ensembles and complex extension."""

from .expressions import (
    AffinePullback,
    Constant,
    Coordinate,
    ExpTrig,
    HarmonicExpr,
    LinComb,
    PlanarPower,
    SolidHarmonic3,
    evaluate,
    from_json,
    gradient,
    laplacian_residual,
)
from .ensemble import EnsembleSpec, random_ensemble
from .poisson import (
    ComplexPoint,
    complex_poisson_kernel,
    extension_sup_ratio,
    kernel_denominator,
    omega_sample,
    poisson_extend,
)

__all__ = [
    "AffinePullback", "Constant", "Coordinate", "ExpTrig", "HarmonicExpr",
    "LinComb", "PlanarPower", "SolidHarmonic3", "evaluate", "from_json",
    "gradient", "laplacian_residual", "EnsembleSpec", "random_ensemble",
    "ComplexPoint", "complex_poisson_kernel", "extension_sup_ratio",
    "kernel_denominator", "omega_sample", "poisson_extend",
]
