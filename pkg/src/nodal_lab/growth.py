"""Growth quantities of harmonic functions.

Sup norms over balls (computed on the boundary sphere, by the maximum
principle), the boundary L^2 mass H, the Dirichlet energy G (volume form and
boundary-flux form), the frequency beta = r G / H (two independent routes),
doubling index, maximal doubling index over a cube, and the scaled doubling
index N(B) * radius^(n-1).

All heavy evaluation is vectorized over numpy point arrays; reductions use a
fixed order so results are deterministic for a given spec.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateError, PreconditionError
from .geom import Ball, Cube, SphericalLayer
from .quadrature import (
    DEFAULT_QUAD,
    QuadratureSpec,
    boundary_integral,
    radial_shell_integral,
    unit_sphere_rule,
)

SUP_FLOOR = 1e-300


# ---------------------------------------------------------------------------
# sup norms on balls
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SupSpec:
    """Boundary search policy for sup norms.

    The sphere is sampled densely (order doubling until the grid max is
    stable and the spacing rule is met), then the best candidates are
    polished by projected gradient ascent on the sphere.
    """

    initial_order: int = 64
    initial_order_3d: int = 12
    rtol: float = 1e-9
    max_refinements: int = 6
    polish_candidates: int = 4
    polish_iterations: int = 50
    signed: bool = False


DEFAULT_SUP = SupSpec()


@dataclass(frozen=True)
class SupResult:
    value: float
    witness: np.ndarray
    error_bound: float
    order: int


def _sphere_samples(center, radius, dim, order):
    dirs, _ = unit_sphere_rule(dim, order)
    return center + radius * dirs, dirs


def _mean_spacing(radius, dim, npts):
    if dim == 2:
        return 2.0 * math.pi * radius / npts
    return radius * math.sqrt(4.0 * math.pi / npts)


def _polish_on_sphere(f, center, radius, x0, sign, iterations):
    """Projected gradient ascent for sign*f on the sphere, with backtracking."""
    x = x0.copy()
    val = sign * float(f.value(x))
    step = 0.1 * radius
    for _ in range(iterations):
        g = sign * f.gradient(x)
        rad = (x - center) / radius
        tang = g - np.dot(g, rad) * rad
        tn = np.linalg.norm(tang)
        if tn * radius <= 1e-15 * max(abs(val), SUP_FLOOR):
            break
        improved = False
        for _ in range(30):
            y = x + step * tang / tn
            y = center + radius * (y - center) / np.linalg.norm(y - center)
            vy = sign * float(f.value(y))
            if vy > val:
                x, val = y, vy
                step = min(step * 1.5, 0.5 * radius)
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return val, x


def sup_on_ball(f, ball: Ball, spec: SupSpec = DEFAULT_SUP) -> SupResult:
    """sup over the closed ball of |f|, located on the boundary sphere.

    Returns a lower bound for the true sup together with a spacing-based
    error indicator delta * (sampled gradient bound) and the located witness.
    """
    center, radius, dim = ball.center, ball.radius, ball.dim
    order = spec.initial_order if dim == 2 else spec.initial_order_3d
    prev = None
    for _ in range(spec.max_refinements + 1):
        pts, _ = _sphere_samples(center, radius, dim, order)
        vals = np.abs(f.value(pts))
        cur = float(np.max(vals))
        if prev is not None and abs(cur - prev) <= spec.rtol * max(cur, SUP_FLOOR):
            break
        prev = cur
        order *= 2
    # polish the best few well-separated candidates
    k = min(spec.polish_candidates, vals.size)
    idx = np.argsort(vals)[::-1][: 4 * k]
    best_val, best_x = cur, pts[int(np.argmax(vals))]
    taken = []
    for i in idx:
        x = pts[int(i)]
        if any(np.linalg.norm(x - t) < 4.0 * _mean_spacing(radius, dim, vals.size)
               for t in taken):
            continue
        taken.append(x)
        s = 1.0 if float(f.value(x)) >= 0 else -1.0
        v, xs = _polish_on_sphere(f, center, radius, x, s, spec.polish_iterations)
        if v > best_val:
            best_val, best_x = v, xs
        if len(taken) >= k:
            break
    grad_bound = 2.0 * float(np.max(np.linalg.norm(f.gradient(pts), axis=-1)))
    delta = _mean_spacing(radius, dim, vals.size)
    return SupResult(best_val, best_x, delta * grad_bound, vals.size)


def sup_extremes(f, center, radius, spec: SupSpec = DEFAULT_SUP):
    """Signed extremes (max f, argmax, min f, argmin) on the sphere."""
    center = np.asarray(center, dtype=float)
    dim = center.size
    order = spec.initial_order if dim == 2 else spec.initial_order_3d
    prev = None
    for _ in range(spec.max_refinements + 1):
        pts, _ = _sphere_samples(center, radius, dim, order)
        vals = f.value(pts)
        cur = float(np.max(vals)) - float(np.min(vals))
        if prev is not None and abs(cur - prev) <= spec.rtol * max(abs(cur), SUP_FLOOR):
            break
        prev = cur
        order *= 2
    hi_i, lo_i = int(np.argmax(vals)), int(np.argmin(vals))
    hi, xhi = _polish_on_sphere(f, center, radius, pts[hi_i], 1.0,
                                spec.polish_iterations)
    lo, xlo = _polish_on_sphere(f, center, radius, pts[lo_i], -1.0,
                                spec.polish_iterations)
    return hi, xhi, -lo, xlo


def sphere_sup_batch(f, centers, radii, order: int):
    """Grid sups of |f| over spheres for all (center, radius) pairs.

    centers: (M, n); radii: (R,).  Returns (M, R) of boundary-grid maxima
    (lower bounds for the true sups).  Memory-chunked over centers.
    """
    centers = np.asarray(centers, dtype=float)
    radii = np.asarray(radii, dtype=float)
    m, n = centers.shape
    dirs, _ = unit_sphere_rule(n, order)
    p = dirs.shape[0]
    out = np.empty((m, len(radii)))
    chunk = max(1, int(4e6 // (len(radii) * p)))
    for s in range(0, m, chunk):
        c = centers[s:s + chunk]
        pts = (c[:, None, None, :]
               + radii[None, :, None, None] * dirs[None, None, :, :])
        out[s:s + chunk] = np.max(np.abs(f.value(pts)), axis=-1)
    return out


# ---------------------------------------------------------------------------
# H, G and the frequency
# ---------------------------------------------------------------------------

def compute_H(f, x, r, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Boundary L^2 mass: integral of f^2 over the sphere of radius r at x."""
    val, _, _ = boundary_integral(lambda p: f.value(p) ** 2,
                                  x, r, np.asarray(x).size, spec)
    return float(val)


def compute_G(f, x, r, spec: QuadratureSpec = DEFAULT_QUAD,
              method: str = "volume") -> float:
    """Dirichlet energy of f on B(x, r).

    method="volume" integrates |grad f|^2 over the ball by radial shells;
    method="boundary" evaluates the equivalent flux form
    integral of f * (grad f . n) over the boundary sphere.
    """
    x = np.asarray(x, dtype=float)
    dim = x.size
    if method == "boundary":
        def flux(p):
            nrm = (p - x) / r
            return f.value(p) * np.sum(f.gradient(p) * nrm, axis=-1)
        val, _, _ = boundary_integral(flux, x, r, dim, spec)
        return float(val)
    if method != "volume":
        raise ValueError("method must be 'volume' or 'boundary'")

    def shell(ts):
        out = np.empty_like(ts)
        for i, t in enumerate(ts):
            if t == 0.0:
                out[i] = 0.0
                continue
            v, _, _ = boundary_integral(
                lambda p: np.sum(f.gradient(p) ** 2, axis=-1), x, t, dim, spec)
            out[i] = v
        return out

    val, _, _ = radial_shell_integral(shell, r, spec)
    return float(val)


def frequency(f, x, r, spec: QuadratureSpec = DEFAULT_QUAD,
              method: str = "volume") -> float:
    """Frequency beta(x, r) = r * G / H."""
    h = compute_H(f, x, r, spec)
    if h < SUP_FLOOR:
        raise DegenerateError("boundary mass H below floor; frequency undefined")
    g = compute_G(f, x, r, spec, method=method)
    return r * g / h


def frequency_logderiv(f, x, r, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Frequency via the logarithmic derivative of H.

    H'(r) = (n-1) H / r + 2 * integral of f (grad f . n) over the sphere is an
    identity (not an approximation), so beta = r H' / 2H - (n-1)/2 reduces to
    r * flux / H with the boundary flux integral.
    """
    x = np.asarray(x, dtype=float)
    h = compute_H(f, x, r, spec)
    if h < SUP_FLOOR:
        raise DegenerateError("boundary mass H below floor; frequency undefined")
    flux = compute_G(f, x, r, spec, method="boundary")
    hprime = (x.size - 1) * h / r + 2.0 * flux
    return r * hprime / (2.0 * h) - (x.size - 1) / 2.0


class FrequencyEvaluator:
    """Memoized beta(r) for one function and center.

    Bisection on the (monotone) frequency re-queries neighbourhoods heavily,
    so values are cached per radius bucket.
    """

    def __init__(self, f, center, spec: QuadratureSpec = DEFAULT_QUAD,
                 method: str = "volume"):
        self.f = f
        self.center = np.asarray(center, dtype=float)
        self.spec = spec
        self.method = method
        self._cache = {}

    def __call__(self, r: float) -> float:
        key = round(float(r), 14)
        if key not in self._cache:
            self._cache[key] = frequency(self.f, self.center, r, self.spec,
                                         method=self.method)
        return self._cache[key]


# ---------------------------------------------------------------------------
# doubling indices
# ---------------------------------------------------------------------------

def doubling_index(f, ball: Ball, spec: SupSpec = DEFAULT_SUP) -> float:
    """N(B) = log2( sup_{2B}|f| / sup_B|f| )."""
    m1 = sup_on_ball(f, ball, spec).value
    if m1 < SUP_FLOOR:
        raise DegenerateError("sup on B below floor; doubling index undefined")
    m2 = sup_on_ball(f, ball.scale(2.0), spec).value
    return math.log2(m2 / m1)


def scaled_doubling_index(f, ball: Ball, spec: SupSpec = DEFAULT_SUP) -> float:
    """N(B) * radius(B)^(n-1); imitates the nodal volume at B's scale."""
    return doubling_index(f, ball, spec) * ball.radius ** (ball.dim - 1)


@dataclass(frozen=True)
class GridSpec:
    """Sampling grid for the maximal doubling index over a cube."""

    points_per_side: int = 17
    radii_per_decade: int = 8
    rho_min_factor: float = 1.0 / 64.0
    boundary_order: int = 64
    boundary_order_3d: int = 8


DEFAULT_GRID = GridSpec()


@dataclass(frozen=True)
class MaxIndexResult:
    value: float
    center: np.ndarray
    radius: float
    skipped: int
    grid: GridSpec

    def __float__(self):
        return self.value


def max_doubling_index(f, cube: Cube, grid: GridSpec = DEFAULT_GRID) -> MaxIndexResult:
    """Lower bound for sup of N(B(x, rho)) over x in Q, rho <= diam(Q).

    Centers run over an inclusive tensor grid in the cube, radii over a
    log-spaced grid in [diam * rho_min_factor, diam]; each doubling index is
    computed from boundary-grid sups at a fixed order (no polish), which
    keeps the sweep budget bounded.  Degenerate samples are skipped and
    counted.
    """
    diam = cube.diameter
    rho_min = diam * grid.rho_min_factor
    n_radii = int(math.ceil(math.log10(diam / rho_min) * grid.radii_per_decade)) + 1
    radii = np.exp(np.linspace(math.log(rho_min), math.log(diam), n_radii))
    centers = cube.grid(grid.points_per_side)
    order = grid.boundary_order if cube.dim == 2 else grid.boundary_order_3d
    sup1 = sphere_sup_batch(f, centers, radii, order)
    sup2 = sphere_sup_batch(f, centers, 2.0 * radii, order)
    ok = sup1 > SUP_FLOOR
    skipped = int(ok.size - np.count_nonzero(ok))
    if not np.any(ok):
        return MaxIndexResult(0.0, cube.center, rho_min, skipped, grid)
    ratios = np.where(ok, sup2 / np.where(ok, sup1, 1.0), 1.0)
    vals = np.log2(np.maximum(ratios, 1e-12))
    i = int(np.argmax(vals))
    ci, ri = divmod(i, len(radii))
    return MaxIndexResult(float(vals.flat[i]), centers[ci], float(radii[ri]),
                          skipped, grid)


# ---------------------------------------------------------------------------
# growth of sup norms across a spherical layer
# ---------------------------------------------------------------------------

def growth_ratio_bounds(f, layer: SphericalLayer, t1: float, t2: float,
                        level: float, spec: SupSpec = DEFAULT_SUP) -> dict:
    """Measured growth of M(t) = sup over the ball of radius t, on a layer.

    Requires t1 < t2 inside [rho - 3w, rho + 3w] with t2 - t1 >= w/2.
    Returns the ratio M(t2)/M(t1), the implied exponential rate
    log(ratio) / ((t2 - t1) * level), and fitted min/max rates over a grid of
    valid subintervals.
    """
    lo, hi = layer.rho - 3.0 * layer.w, layer.rho + 3.0 * layer.w
    if not (lo <= t1 < t2 <= hi):
        raise PreconditionError("t1, t2 must satisfy rho-3w <= t1 < t2 <= rho+3w")
    if t2 - t1 < layer.w / 2.0:
        raise PreconditionError("need t2 - t1 >= w/2")

    def m_of(t):
        return sup_on_ball(f, Ball(layer.center, t), spec).value

    m1, m2 = m_of(t1), m_of(t2)
    if m1 < SUP_FLOOR:
        raise DegenerateError("sup below floor in growth-ratio measurement")
    ratio = m2 / m1
    rate = math.log(ratio) / ((t2 - t1) * level)

    ts = np.linspace(t1, t2, 7)
    ms = [m_of(t) for t in ts]
    rates = []
    for i in range(len(ts)):
        for j in range(i + 1, len(ts)):
            if ts[j] - ts[i] >= layer.w / 2.0 and ms[i] > SUP_FLOOR:
                rates.append(math.log(ms[j] / ms[i]) / ((ts[j] - ts[i]) * level))
    return {"ratio": ratio, "rate": rate,
            "lam": min(rates) if rates else rate,
            "Lam": max(rates) if rates else rate}


# ---------------------------------------------------------------------------
# growth identity checks (used by invariants and the acceptance suite)
# ---------------------------------------------------------------------------

def h_identity_residual(f, x, r1: float, r2: float,
                        spec: QuadratureSpec = DEFAULT_QUAD,
                        beta_eval=None) -> float:
    """Relative residual of H(r2)/r2^(n-1) = H(r1)/r1^(n-1) exp(2 int beta/r).

    The integral of beta(r)/r is evaluated by Gauss-Legendre refinement on
    log r using the computed frequency.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    beta = beta_eval or FrequencyEvaluator(f, x, spec)
    h1, h2 = compute_H(f, x, r1, spec), compute_H(f, x, r2, spec)
    lhs = h2 / r2 ** (n - 1)
    # integral of beta(r)/r dr = integral of beta(e^s) ds over log-radii
    a, b = math.log(r1), math.log(r2)
    prev = None
    order = 8
    for _ in range(6):
        nodes, wts = np.polynomial.legendre.leggauss(order)
        s = 0.5 * (b - a) * nodes + 0.5 * (a + b)
        integral = 0.5 * (b - a) * sum(w * beta(math.exp(si))
                                       for w, si in zip(wts, s))
        if prev is not None and abs(integral - prev) <= 1e-7 * max(1.0, abs(integral)):
            break
        prev = integral
        order *= 2
    rhs = (h1 / r1 ** (n - 1)) * math.exp(2.0 * integral)
    return abs(lhs - rhs) / abs(lhs)


def h_sandwich_margins(f, x, r1: float, r2: float,
                       spec: QuadratureSpec = DEFAULT_QUAD, beta_eval=None):
    """Margins of (r2/r1)^(2 b(r1)+n-1) <= H(r2)/H(r1) <= (r2/r1)^(2 b(r2)+n-1).

    Returned as (lower/ratio - 1, upper/ratio - 1): the first should be <= 0
    and the second >= 0 up to tolerance.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    beta = beta_eval or FrequencyEvaluator(f, x, spec)
    ratio = compute_H(f, x, r2, spec) / compute_H(f, x, r1, spec)
    lower = (r2 / r1) ** (2.0 * beta(r1) + n - 1)
    upper = (r2 / r1) ** (2.0 * beta(r2) + n - 1)
    return lower / ratio - 1.0, upper / ratio - 1.0


# ---------------------------------------------------------------------------
# reporting
# ---------------------------------------------------------------------------

@dataclass
class GrowthReport:
    """All growth quantities at one (center, radius)."""

    center: list
    radius: float
    H: float
    G: float
    beta: float
    doubling_index: float
    sdi: float
    sup_value: float
    quadrature_error: float

    CSV_FIELDS = ("center", "radius", "H", "G", "beta", "doubling_index",
                  "sdi", "sup_value", "quadrature_error")

    def to_json(self):
        return {k: getattr(self, k) for k in self.CSV_FIELDS}

    def csv_row(self):
        vals = [";".join(f"{c!r}" for c in self.center)]
        vals += [repr(getattr(self, k)) for k in self.CSV_FIELDS[1:]]
        return vals


def growth_report(f, center, radius, qspec: QuadratureSpec = DEFAULT_QUAD,
                  sspec: SupSpec = DEFAULT_SUP) -> GrowthReport:
    center = np.asarray(center, dtype=float)
    n = center.size
    h = compute_H(f, center, radius, qspec)
    if h < SUP_FLOOR:
        raise DegenerateError("function vanishes on the sphere")
    g = compute_G(f, center, radius, qspec, method="volume")
    beta = radius * g / h
    ball = Ball(center, radius)
    nb = doubling_index(f, ball, sspec)
    sup = sup_on_ball(f, ball, sspec)
    return GrowthReport(list(center), float(radius), h, g, beta, nb,
                        nb * radius ** (n - 1), sup.value,
                        qspec.rtol * abs(h))
