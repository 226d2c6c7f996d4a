"""Closed-form harmonic functions as immutable expression trees.

Leaves: PlanarPower (Re/Im of (x_i + i x_j)^N), ExpTrig (exp(N x_i) trig(N x_j)),
SolidHarmonic3 (solid spherical harmonic r^l Y_lm in R^3), Coordinate, Constant.
Combinators: LinComb and AffinePullback (composition with a similarity of R^n).

Every node evaluates values and gradients exactly, vectorized over points:
``value(pts)`` takes an array of shape (..., n) and returns (...);
``gradient(pts)`` returns (..., n).  Expressions are immutable and pure, so
they are safe to evaluate concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError
from .solid import solid_harmonic_polynomial


class HarmonicExpr:
    """Base class; subclasses implement value/gradient and JSON dumping."""

    dim: int

    def value(self, pts):
        raise NotImplementedError

    def gradient(self, pts):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def __call__(self, pts):
        return self.value(pts)


def _check_pts(pts, dim):
    pts = np.asarray(pts, dtype=float)
    if pts.shape[-1] != dim:
        raise DomainError(f"points have dimension {pts.shape[-1]}, expected {dim}")
    return pts


@dataclass(frozen=True)
class PlanarPower(HarmonicExpr):
    """Re or Im of (x_axes[0] + i*x_axes[1])**degree; constant in other axes."""

    degree: int
    part: str = "re"          # "re" | "im"
    dim: int = 2
    axes: tuple = (0, 1)

    def __post_init__(self):
        if self.degree < 1 or int(self.degree) != self.degree:
            raise DomainError("degree must be a positive integer")
        if self.part not in ("re", "im"):
            raise DomainError("part must be 're' or 'im'")
        if len(self.axes) != 2 or self.axes[0] == self.axes[1]:
            raise DomainError("axes must be two distinct indices")
        if max(self.axes) >= self.dim:
            raise DomainError("axes exceed dimension")

    def _w_pow(self, pts, power):
        w = pts[..., self.axes[0]] + 1j * pts[..., self.axes[1]]
        return w ** power

    def value(self, pts):
        pts = _check_pts(pts, self.dim)
        wn = self._w_pow(pts, self.degree)
        return wn.real if self.part == "re" else wn.imag

    def gradient(self, pts):
        pts = _check_pts(pts, self.dim)
        d = self.degree * self._w_pow(pts, self.degree - 1)
        g = np.zeros(pts.shape)
        if self.part == "re":
            # d/dx Re w^N = Re(N w^{N-1}), d/dy Re w^N = -Im(N w^{N-1})
            g[..., self.axes[0]] = d.real
            g[..., self.axes[1]] = -d.imag
        else:
            g[..., self.axes[0]] = d.imag
            g[..., self.axes[1]] = d.real
        return g

    def to_json(self):
        return {"kind": "planar_power", "degree": self.degree, "part": self.part,
                "dim": self.dim, "axes": list(self.axes)}


@dataclass(frozen=True)
class ExpTrig(HarmonicExpr):
    """exp(rate * x_i) * trig(rate * x_j) on the axis pair (i, j)."""

    rate: float
    trig: str = "sin"         # "sin" | "cos"
    dim: int = 2
    axes: tuple = (0, 1)

    def __post_init__(self):
        if self.rate <= 0:
            raise DomainError("rate must be positive")
        if self.trig not in ("sin", "cos"):
            raise DomainError("trig must be 'sin' or 'cos'")
        if len(self.axes) != 2 or self.axes[0] == self.axes[1]:
            raise DomainError("axes must be two distinct indices")
        if max(self.axes) >= self.dim:
            raise DomainError("axes exceed dimension")

    def value(self, pts):
        pts = _check_pts(pts, self.dim)
        e = np.exp(self.rate * pts[..., self.axes[0]])
        t = self.rate * pts[..., self.axes[1]]
        return e * (np.sin(t) if self.trig == "sin" else np.cos(t))

    def gradient(self, pts):
        pts = _check_pts(pts, self.dim)
        e = np.exp(self.rate * pts[..., self.axes[0]])
        t = self.rate * pts[..., self.axes[1]]
        s, c = np.sin(t), np.cos(t)
        g = np.zeros(pts.shape)
        if self.trig == "sin":
            g[..., self.axes[0]] = self.rate * e * s
            g[..., self.axes[1]] = self.rate * e * c
        else:
            g[..., self.axes[0]] = self.rate * e * c
            g[..., self.axes[1]] = -self.rate * e * s
        return g

    def to_json(self):
        return {"kind": "exp_trig", "rate": self.rate, "trig": self.trig,
                "dim": self.dim, "axes": list(self.axes)}


@dataclass(frozen=True)
class SolidHarmonic3(HarmonicExpr):
    """Real solid harmonic r^l Y_lm(theta, phi) in R^3 (orthonormal Y_lm)."""

    l: int
    m: int
    dim: int = 3

    def __post_init__(self):
        if self.dim != 3:
            raise DomainError("solid harmonics are 3-dimensional")
        if self.l < 0 or abs(self.m) > self.l:
            raise DomainError("need l >= 0 and |m| <= l")
        object.__setattr__(self, "_poly", solid_harmonic_polynomial(self.l, self.m))

    def value(self, pts):
        pts = _check_pts(pts, 3)
        return self._poly.value(pts)

    def gradient(self, pts):
        pts = _check_pts(pts, 3)
        return self._poly.gradient(pts)

    def to_json(self):
        return {"kind": "solid_harmonic", "l": self.l, "m": self.m}


@dataclass(frozen=True)
class Coordinate(HarmonicExpr):
    axis: int
    dim: int = 2

    def __post_init__(self):
        if not 0 <= self.axis < self.dim:
            raise DomainError("axis out of range")

    def value(self, pts):
        pts = _check_pts(pts, self.dim)
        return pts[..., self.axis].copy()

    def gradient(self, pts):
        pts = _check_pts(pts, self.dim)
        g = np.zeros(pts.shape)
        g[..., self.axis] = 1.0
        return g

    def to_json(self):
        return {"kind": "coordinate", "axis": self.axis, "dim": self.dim}


@dataclass(frozen=True)
class Constant(HarmonicExpr):
    const: float
    dim: int = 2

    def value(self, pts):
        pts = _check_pts(pts, self.dim)
        return np.full(pts.shape[:-1], float(self.const))

    def gradient(self, pts):
        pts = _check_pts(pts, self.dim)
        return np.zeros(pts.shape)

    def to_json(self):
        return {"kind": "constant", "value": self.const, "dim": self.dim}


@dataclass(frozen=True)
class LinComb(HarmonicExpr):
    coefficients: tuple
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients",
                           tuple(float(c) for c in self.coefficients))
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.coefficients) != len(self.children) or not self.children:
            raise DomainError("need matching, nonempty coefficients and children")
        dims = {c.dim for c in self.children}
        if len(dims) != 1:
            raise DomainError("children must share one dimension")

    @property
    def dim(self):
        return self.children[0].dim

    def value(self, pts):
        out = self.coefficients[0] * self.children[0].value(pts)
        for c, ch in zip(self.coefficients[1:], self.children[1:]):
            out = out + c * ch.value(pts)
        return out

    def gradient(self, pts):
        out = self.coefficients[0] * self.children[0].gradient(pts)
        for c, ch in zip(self.coefficients[1:], self.children[1:]):
            out = out + c * ch.gradient(pts)
        return out

    def to_json(self):
        return {"kind": "lin_comb", "coefficients": list(self.coefficients),
                "children": [c.to_json() for c in self.children]}


@dataclass(frozen=True)
class AffinePullback(HarmonicExpr):
    """child(translation + dilation * rotation @ x) -- similarity pullback."""

    child: HarmonicExpr
    translation: np.ndarray = None
    dilation: float = 1.0
    rotation: np.ndarray = None

    def __post_init__(self):
        n = self.child.dim
        t = (np.zeros(n) if self.translation is None
             else np.asarray(self.translation, dtype=float))
        if t.shape != (n,):
            raise DomainError("translation has wrong dimension")
        if self.dilation <= 0:
            raise DomainError("dilation must be positive")
        if self.rotation is None:
            r = None
        else:
            r = np.asarray(self.rotation, dtype=float)
            if r.shape != (n, n) or not np.allclose(r @ r.T, np.eye(n), atol=1e-9):
                raise DomainError("rotation must be orthogonal n-by-n")
        object.__setattr__(self, "translation", t)
        object.__setattr__(self, "dilation", float(self.dilation))
        object.__setattr__(self, "rotation", r)

    @property
    def dim(self):
        return self.child.dim

    def _map(self, pts):
        y = pts if self.rotation is None else pts @ self.rotation.T
        return self.translation + self.dilation * y

    def value(self, pts):
        pts = _check_pts(pts, self.dim)
        return self.child.value(self._map(pts))

    def gradient(self, pts):
        pts = _check_pts(pts, self.dim)
        g = self.child.gradient(self._map(pts)) * self.dilation
        if self.rotation is not None:
            g = g @ self.rotation
        return g

    def to_json(self):
        d = {"kind": "affine", "child": self.child.to_json(),
             "translation": list(self.translation), "dilation": self.dilation}
        if self.rotation is not None:
            d["rotation"] = [list(r) for r in self.rotation]
        return d


# -- operations --------------------------------------------------------------

def evaluate(f: HarmonicExpr, x):
    """Exact closed-form value of f at x (scalar for a single point)."""
    v = f.value(np.asarray(x, dtype=float))
    return float(v) if np.ndim(v) == 0 else v


def gradient(f: HarmonicExpr, x):
    return f.gradient(np.asarray(x, dtype=float))


def laplacian_residual(f, x, h: float):
    """Central second-difference Laplacian of f at x with step h.

    Tends to 0 like O(h^2) for harmonic f; works for any object exposing
    ``value`` and ``dim`` (handy for non-harmonic test doubles).
    """
    if h <= 0:
        raise DomainError("step h must be positive")
    x = np.asarray(x, dtype=float)
    n = f.dim
    res = -2.0 * n * f.value(x)
    for i in range(n):
        e = np.zeros(n)
        e[i] = h
        res = res + f.value(x + e) + f.value(x - e)
    return float(res) / (h * h)


def from_json(d: dict) -> HarmonicExpr:
    """Parse the JSON function description used by the CLI."""
    kind = d.get("kind")
    if kind == "planar_power":
        return PlanarPower(d["degree"], d.get("part", "re"),
                           d.get("dim", 2), tuple(d.get("axes", (0, 1))))
    if kind == "exp_trig":
        return ExpTrig(d["rate"], d.get("trig", "sin"),
                       d.get("dim", 2), tuple(d.get("axes", (0, 1))))
    if kind == "solid_harmonic":
        return SolidHarmonic3(d["l"], d["m"])
    if kind == "coordinate":
        return Coordinate(d["axis"], d.get("dim", 2))
    if kind == "constant":
        return Constant(d["value"], d.get("dim", 2))
    if kind == "lin_comb":
        return LinComb(tuple(d["coefficients"]),
                       tuple(from_json(c) for c in d["children"]))
    if kind == "affine":
        return AffinePullback(from_json(d["child"]), d.get("translation"),
                              d.get("dilation", 1.0), d.get("rotation"))
    raise DomainError(f"unknown function kind {kind!r}")
