"""Quadrature rules on circles and spheres, with order-doubling refinement.

2D boundary integrals use the composite trapezoid rule on the circle, which
is spectrally accurate for smooth periodic integrands (and exact for
trigonometric polynomials of degree below the point count).  3D uses a
product rule: Gauss-Legendre in cos(theta) times trapezoid in phi.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QuadratureError


@dataclass(frozen=True)
class QuadratureSpec:
    """Refinement policy: start at initial_order, double until stable."""

    initial_order: int = 32
    rtol: float = 1e-9
    atol: float = 1e-300
    max_refinements: int = 8

    def orders(self):
        return [self.initial_order * 2 ** k for k in range(self.max_refinements + 1)]


DEFAULT_QUAD = QuadratureSpec()


@lru_cache(maxsize=64)
def circle_rule(order: int):
    """Equispaced nodes on S^1 and weights summing to 2*pi."""
    theta = np.arange(order) * (2.0 * np.pi / order)
    dirs = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    weights = np.full(order, 2.0 * np.pi / order)
    return dirs, weights


@lru_cache(maxsize=64)
def sphere_rule(order: int):
    """Product Gauss-Legendre x trapezoid rule on S^2, weights sum to 4*pi."""
    mu, wmu = np.polynomial.legendre.leggauss(order)
    nphi = 2 * order
    phi = np.arange(nphi) * (2.0 * np.pi / nphi)
    s = np.sqrt(1.0 - mu ** 2)
    x = s[:, None] * np.cos(phi)[None, :]
    y = s[:, None] * np.sin(phi)[None, :]
    z = np.broadcast_to(mu[:, None], x.shape)
    dirs = np.stack([x.ravel(), y.ravel(), z.ravel()], axis=-1)
    weights = (wmu[:, None] * (2.0 * np.pi / nphi)).ravel()
    return dirs, weights


def unit_sphere_rule(dim: int, order: int):
    if dim == 2:
        return circle_rule(order)
    if dim == 3:
        return sphere_rule(order)
    raise QuadratureError(f"no sphere rule for dimension {dim}")


def sphere_area(dim: int, radius: float = 1.0):
    if dim == 2:
        return 2.0 * np.pi * radius
    if dim == 3:
        return 4.0 * np.pi * radius ** 2
    raise QuadratureError(f"unsupported dimension {dim}")


def boundary_integral(g, center, radius, dim, spec: QuadratureSpec = DEFAULT_QUAD):
    """Adaptive integral of g over the sphere |x - center| = radius.

    `g` maps an array of points (P, dim) to values (P,) (complex allowed).
    Returns (value, error_estimate, order_used); raises QuadratureError if
    the doubling sequence does not stabilize within the budget.
    """
    center = np.asarray(center, dtype=float)
    jac = radius ** (dim - 1)
    prev = None
    for order in spec.orders():
        dirs, w = unit_sphere_rule(dim, order)
        vals = g(center + radius * dirs)
        cur = jac * np.sum(w * vals)
        if prev is not None:
            err = abs(cur - prev)
            if err <= spec.rtol * abs(cur) + spec.atol:
                return cur, err, order
        prev = cur
    raise QuadratureError(
        f"boundary integral did not stabilize within {spec.max_refinements} "
        f"refinements (last order {order})")


@lru_cache(maxsize=64)
def _leggauss01(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def radial_shell_integral(shell, radius, spec: QuadratureSpec = DEFAULT_QUAD,
                          initial_order: int = 16):
    """Adaptive integral over [0, radius] of a smooth shell function.

    `shell` maps an array of radii (R,) to values (R,).  Used for volume
    integrals written as an integral of boundary integrals over shells.
    """
    prev = None
    order = initial_order
    for _ in range(spec.max_refinements + 1):
        x, w = _leggauss01(order)
        cur = radius * np.sum(w * shell(radius * x))
        if prev is not None and abs(cur - prev) <= spec.rtol * abs(cur) + spec.atol:
            return cur, abs(cur - prev), order
        prev = cur
        order *= 2
    raise QuadratureError("radial integral did not stabilize")
