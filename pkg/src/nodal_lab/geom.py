"""Geometric regions: balls, cubes, spherical layers and tunnels.

All regions are closed sets.  Cubes are axis-aligned unless they carry an
explicit orthonormal frame (tunnel subcubes live in the tunnel's frame).
Every type serializes to/from a plain JSON dict mirroring its fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError, NonIntegralChopError


def _as_point(x, n=None):
    p = np.asarray(x, dtype=float)
    if p.ndim != 1:
        raise GeometryError(f"expected a point, got shape {p.shape}")
    if n is not None and p.size != n:
        raise GeometryError(f"expected a point in R^{n}, got R^{p.size}")
    return p


@dataclass(frozen=True)
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if self.radius <= 0:
            raise GeometryError("ball radius must be positive")

    @property
    def dim(self):
        return self.center.size

    def scale(self, k: float) -> "Ball":
        """Concentric ball with radius scaled by k > 0."""
        if k <= 0:
            raise GeometryError("scale factor must be positive")
        return Ball(self.center, k * self.radius)

    def contains(self, x, tol=0.0) -> bool:
        return float(np.linalg.norm(_as_point(x) - self.center)) <= self.radius + tol

    def contains_ball(self, other: "Ball", tol=1e-12) -> bool:
        d = float(np.linalg.norm(other.center - self.center))
        return d + other.radius <= self.radius + tol

    def distance(self, x) -> float:
        """Euclidean distance from x to the (closed) ball."""
        return max(0.0, float(np.linalg.norm(_as_point(x) - self.center)) - self.radius)

    def to_json(self):
        return {"kind": "ball", "center": list(self.center), "radius": self.radius}


@dataclass(frozen=True)
class Cube:
    """A (possibly rotated) cube: |frame @ (x - center)|_inf <= half_side."""

    center: np.ndarray
    half_side: float
    frame: np.ndarray | None = None  # rows are the cube's axes; None = identity

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        object.__setattr__(self, "half_side", float(self.half_side))
        if self.half_side <= 0:
            raise GeometryError("cube half_side must be positive")
        if self.frame is not None:
            fr = np.asarray(self.frame, dtype=float)
            n = self.center.size
            if fr.shape != (n, n):
                raise GeometryError("frame must be an n-by-n matrix")
            if not np.allclose(fr @ fr.T, np.eye(n), atol=1e-9):
                raise GeometryError("frame must be orthonormal")
            object.__setattr__(self, "frame", fr)

    @property
    def dim(self):
        return self.center.size

    @property
    def side(self):
        return 2.0 * self.half_side

    @property
    def diameter(self):
        return self.side * math.sqrt(self.dim)

    @property
    def volume(self):
        return self.side ** self.dim

    def to_local(self, pts):
        pts = np.asarray(pts, dtype=float)
        d = pts - self.center
        if self.frame is None:
            return d
        return d @ self.frame.T

    def from_local(self, loc):
        loc = np.asarray(loc, dtype=float)
        if self.frame is None:
            return loc + self.center
        return loc @ self.frame + self.center

    def scale(self, k: float) -> "Cube":
        """Homothetic copy about the center with coefficient k."""
        if k <= 0:
            raise GeometryError("scale factor must be positive")
        return Cube(self.center, k * self.half_side, self.frame)

    def contains(self, x, tol=0.0) -> bool:
        return bool(np.max(np.abs(self.to_local(_as_point(x)))) <= self.half_side + tol)

    def distance(self, x) -> float:
        loc = np.abs(self.to_local(_as_point(x)))
        out = np.maximum(loc - self.half_side, 0.0)
        return float(np.linalg.norm(out))

    def corners(self):
        n = self.dim
        signs = np.array(np.meshgrid(*([[-1.0, 1.0]] * n), indexing="ij"))
        signs = signs.reshape(n, -1).T
        return self.from_local(signs * self.half_side)

    def grid(self, per_side: int):
        """Inclusive tensor grid of per_side**n points covering the cube."""
        if per_side < 1:
            raise GeometryError("per_side must be >= 1")
        if per_side == 1:
            axes = [np.array([0.0])] * self.dim
        else:
            axes = [np.linspace(-self.half_side, self.half_side, per_side)] * self.dim
        mesh = np.meshgrid(*axes, indexing="ij")
        loc = np.stack([m.ravel() for m in mesh], axis=-1)
        return self.from_local(loc)

    def subdivide(self, a: int):
        """Exact tiling into a**n congruent subcubes, lexicographic grid order."""
        if a < 1 or int(a) != a:
            raise GeometryError("subdivision count must be a positive integer")
        a = int(a)
        h = self.half_side / a
        offsets = (2 * np.arange(a) + 1) * h - self.half_side
        mesh = np.meshgrid(*([offsets] * self.dim), indexing="ij")
        centers_loc = np.stack([m.ravel() for m in mesh], axis=-1)
        return [Cube(self.from_local(c), h, self.frame) for c in centers_loc]

    def to_json(self):
        d = {"kind": "cube", "center": list(self.center), "half_side": self.half_side}
        if self.frame is not None:
            d["frame"] = [list(row) for row in self.frame]
        return d


@dataclass(frozen=True)
class SphericalLayer:
    """Annulus rho - 10w <= |x - center| <= rho + 10w (total width 20w)."""

    center: np.ndarray
    rho: float
    w: float

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "w", float(self.w))
        if self.w <= 0 or 20.0 * self.w >= self.rho:
            raise GeometryError("layer needs 0 < 20w < rho")

    @property
    def dim(self):
        return self.center.size

    @property
    def inner(self):
        return self.rho - 10.0 * self.w

    @property
    def outer(self):
        return self.rho + 10.0 * self.w

    def contains(self, x, tol=0.0) -> bool:
        d = float(np.linalg.norm(_as_point(x) - self.center))
        return self.inner - tol <= d <= self.outer + tol

    def distance(self, x) -> float:
        d = float(np.linalg.norm(_as_point(x) - self.center))
        return max(0.0, self.inner - d, d - self.outer)

    def to_json(self):
        return {"kind": "layer", "center": list(self.center),
                "rho": self.rho, "w": self.w}


@dataclass(frozen=True)
class Tunnel:
    """Closed hyper-rectangle with one long side.

    `anchor` is the center of the beginning face, `direction` the unit vector
    along the long side, `length`/`width` the long/short side lengths and
    `frame` an orthonormal matrix whose row 0 is `direction` and whose
    remaining rows span the cross-section.  length/width must be an integer
    so the tunnel chops into a chain of cubes.
    """

    anchor: np.ndarray
    direction: np.ndarray
    length: float
    width: float
    frame: np.ndarray = field(default=None)

    def __post_init__(self):
        a = _as_point(self.anchor)
        v = _as_point(self.direction, a.size)
        nv = np.linalg.norm(v)
        if nv == 0:
            raise GeometryError("tunnel direction must be nonzero")
        v = v / nv
        object.__setattr__(self, "anchor", a)
        object.__setattr__(self, "direction", v)
        object.__setattr__(self, "length", float(self.length))
        object.__setattr__(self, "width", float(self.width))
        if self.length <= 0 or self.width <= 0:
            raise GeometryError("tunnel length and width must be positive")
        m = self.length / self.width
        if abs(m - round(m)) > 1e-9 * max(1.0, m):
            raise NonIntegralChopError(
                f"length/width = {m} is not an integer; cannot chop")
        if self.frame is None:
            object.__setattr__(self, "frame", _complete_frame(v))
        else:
            fr = np.asarray(self.frame, dtype=float)
            n = a.size
            if fr.shape != (n, n) or not np.allclose(fr @ fr.T, np.eye(n), atol=1e-9):
                raise GeometryError("tunnel frame must be orthonormal n-by-n")
            if not np.allclose(fr[0], v, atol=1e-9):
                raise GeometryError("frame row 0 must equal the direction")
            object.__setattr__(self, "frame", fr)

    @property
    def dim(self):
        return self.anchor.size

    @property
    def m(self) -> int:
        """Number of subcubes in the chain."""
        return int(round(self.length / self.width))

    @property
    def beginning_face_center(self):
        return self.anchor

    @property
    def end_face_center(self):
        return self.anchor + self.length * self.direction

    def to_local(self, pts):
        pts = np.asarray(pts, dtype=float)
        return (pts - self.anchor) @ self.frame.T

    def contains(self, x, tol=0.0) -> bool:
        loc = self.to_local(_as_point(x))
        if not (-tol <= loc[0] <= self.length + tol):
            return False
        return bool(np.max(np.abs(loc[1:])) <= self.width / 2.0 + tol)

    def distance(self, x) -> float:
        loc = self.to_local(_as_point(x))
        ax = max(0.0, -loc[0], loc[0] - self.length)
        cr = np.maximum(np.abs(loc[1:]) - self.width / 2.0, 0.0)
        return float(math.hypot(ax, float(np.linalg.norm(cr))))

    def subcubes(self):
        """The chain q_1..q_m from the beginning face to the end face."""
        h = self.width
        centers = [self.anchor + (k + 0.5) * h * self.direction
                   for k in range(self.m)]
        return [Cube(c, h / 2.0, self.frame) for c in centers]

    def split(self, k: int):
        """k**(n-1) parallel subtunnels of width width/k tiling this tunnel."""
        if k < 1 or int(k) != k:
            raise GeometryError("split count must be a positive integer")
        k = int(k)
        n = self.dim
        sub_w = self.width / k
        offsets = (2 * np.arange(k) + 1) * (sub_w / 2.0) - self.width / 2.0
        mesh = np.meshgrid(*([offsets] * (n - 1)), indexing="ij")
        loc = np.stack([m.ravel() for m in mesh], axis=-1)  # (k^(n-1), n-1)
        out = []
        for off in loc:
            anchor = self.anchor + off @ self.frame[1:]
            out.append(Tunnel(anchor, self.direction, self.length, sub_w,
                              self.frame))
        return out

    def to_json(self):
        return {"kind": "tunnel", "anchor": list(self.anchor),
                "direction": list(self.direction), "length": self.length,
                "width": self.width, "frame": [list(r) for r in self.frame]}


def _complete_frame(v):
    """Deterministic orthonormal frame with first row v (Householder)."""
    n = v.size
    e = np.zeros(n)
    e[0] = 1.0
    u = v - e if v[0] >= 0 else v + e
    nu = np.linalg.norm(u)
    if nu < 1e-14:
        h = np.eye(n)
    else:
        u = u / nu
        h = np.eye(n) - 2.0 * np.outer(u, u)
    # columns of the reflector map e_i to an orthonormal basis; row 0 is +-v
    fr = h.T.copy()
    if np.dot(fr[0], v) < 0:
        fr = -fr
    fr[0] = v
    return fr


# -- module-level operation names ------------------------------------------

def scale_ball(b: Ball, k: float) -> Ball:
    return b.scale(k)


def subdivide_cube(q: Cube, a: int):
    return q.subdivide(a)


def tunnel_subcubes(t: Tunnel):
    return t.subcubes()


def split_tunnel(r: Tunnel, k: int):
    return r.split(k)


def neighborhood_contains(region, ell: float, x) -> bool:
    """True iff dist(x, region) <= ell."""
    if ell < 0:
        raise GeometryError("neighborhood radius must be nonnegative")
    return region.distance(x) <= ell


def region_from_json(d: dict):
    kind = d.get("kind")
    if kind == "ball":
        return Ball(d["center"], d["radius"])
    if kind == "cube":
        return Cube(d["center"], d["half_side"], d.get("frame"))
    if kind == "layer":
        return SphericalLayer(d["center"], d["rho"], d["w"])
    if kind == "tunnel":
        return Tunnel(d["anchor"], d["direction"], d["length"], d["width"],
                      d.get("frame"))
    raise GeometryError(f"unknown region kind {kind!r}")
