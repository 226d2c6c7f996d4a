"""Holomorphic extension of harmonic functions via the complexified
Poisson kernel of the ball.

For a harmonic f on a neighbourhood of the closed ball B = B(0, R), the
boundary representation f(x) = integral over dB of P(x, zeta) f(zeta) dS
extends holomorphically to

    Omega = { x + iy : x in (1/5)B, y in (1/5)B } subset C^n,

because the complexified kernel denominator (sum_k (x_k + i y_k - zeta_k)^2)
stays at absolute value >= R^2/25 there, so the principal square-root branch
is valid (|1 - w| < 1 after rescaling to the unit ball).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, QuadratureError
from ..geom import Ball
from ..quadrature import QuadratureSpec, DEFAULT_QUAD, unit_sphere_rule


@dataclass(frozen=True)
class ComplexPoint:
    """A point z = x + iy in C^n, stored as two real vectors."""

    real: np.ndarray
    imag: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.real, dtype=float)
        y = np.asarray(self.imag, dtype=float)
        if x.shape != y.shape or x.ndim != 1:
            raise DomainError("real and imaginary parts must be equal-length vectors")
        object.__setattr__(self, "real", x)
        object.__setattr__(self, "imag", y)

    @property
    def dim(self):
        return self.real.size

    @property
    def z(self):
        return self.real + 1j * self.imag

    def in_omega(self, ball: Ball) -> bool:
        """Membership in Omega(B): x in center + (1/5)B, y in (1/5)B(0)."""
        fifth = ball.radius / 5.0
        return (float(np.linalg.norm(self.real - ball.center)) <= fifth
                and float(np.linalg.norm(self.imag)) <= fifth)


def surface_area(dim: int, radius: float = 1.0):
    # |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2)
    return 2.0 * math.pi ** (dim / 2.0) / math.gamma(dim / 2.0) * radius ** (dim - 1)


def complex_poisson_kernel(z, zeta, dim: int):
    """Complexified unit-ball Poisson kernel at complex z and real zeta.

    z: (dim,) complex; zeta: (P, dim) real unit vectors.  Uses the principal
    branch of the square root; the branch validity condition |1 - w| < 1 for
    w = sum_k (z_k - zeta_k)^2 is asserted at runtime.
    """
    z = np.asarray(z)
    zeta = np.asarray(zeta, dtype=float)
    w = np.sum((z[None, :] - zeta) ** 2, axis=-1)
    if np.any(np.abs(1.0 - w) >= 1.0):
        raise DomainError("square-root branch condition |1 - w| < 1 violated; "
                          "z is outside the guaranteed extension region")
    c_n = 1.0 / surface_area(dim)
    numer = 1.0 - np.sum(z ** 2)
    # principal branch: w^{n/2} = exp((n/2) Log w), valid since |1 - w| < 1
    denom = np.exp(0.5 * dim * np.log(w))
    return c_n * numer / denom


def kernel_denominator(z, zeta):
    """|sum_k (z_k - zeta_k)^2|, the quantity bounded below by 1/25 on Omega."""
    z = np.asarray(z)
    zeta = np.asarray(zeta, dtype=float)
    return np.abs(np.sum((z[None, :] - zeta) ** 2, axis=-1))


def poisson_extend(f, ball: Ball, point: ComplexPoint,
                   spec: QuadratureSpec = DEFAULT_QUAD) -> complex:
    """Value of the holomorphic extension of f at a point of Omega(ball).

    Computed as the boundary integral of the complexified Poisson kernel
    against f on the sphere; on the real slice it reproduces f within the
    quadrature tolerance.
    """
    if point.dim != ball.dim:
        raise DomainError("complex point dimension does not match the ball")
    if not point.in_omega(ball):
        raise DomainError("point is outside Omega = (1/5)B + i(1/5)B")
    # rescale to the unit ball: g(x) = f(center + R x) is harmonic on B(0,1)
    r = ball.radius
    z_unit = (point.z - ball.center) / r
    prev = None
    for order in spec.orders():
        dirs, w = unit_sphere_rule(ball.dim, order)
        kern = complex_poisson_kernel(z_unit, dirs, ball.dim)
        vals = f.value(ball.center + r * dirs)
        cur = complex(np.sum(w * kern * vals))
        if prev is not None:
            err = abs(cur - prev)
            if err <= spec.rtol * max(1e-30, abs(cur)) + spec.atol:
                return cur
        prev = cur
    raise QuadratureError("Poisson extension quadrature did not reach tolerance")


def omega_sample(ball: Ball, count: int, seed: int = 0):
    """Deterministic sample of points of Omega(ball), for sup-ratio surveys."""
    rng = np.random.default_rng(seed)
    n = ball.dim
    fifth = ball.radius / 5.0
    pts = []
    while len(pts) < count:
        x = rng.uniform(-fifth, fifth, size=n)
        y = rng.uniform(-fifth, fifth, size=n)
        if np.linalg.norm(x) <= fifth and np.linalg.norm(y) <= fifth:
            pts.append(ComplexPoint(ball.center + x, y))
    return pts


def extension_sup_ratio(f, ball: Ball, count: int = 128, seed: int = 0,
                        spec: QuadratureSpec = DEFAULT_QUAD):
    """Measured sup over sampled Omega of |f^C| divided by sup over B of |f|.

    The comparison constant is existential in theory; this records the ratio
    actually observed for one function on one ball.
    """
    from ..growth import sup_on_ball, SupSpec

    sup_b = sup_on_ball(f, ball, SupSpec()).value
    best = 0.0
    for pt in omega_sample(ball, count, seed):
        best = max(best, abs(poisson_extend(f, ball, pt, spec)))
    return best / sup_b
