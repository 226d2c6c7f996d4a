"""Real solid harmonics r^l Y_lm as exact polynomials in (x, y, z).

The polynomial coefficients are generated once per (l, m) with rational
arithmetic from the classical recursions and are checked to be exactly
harmonic (the symbolic Laplacian must vanish term by term).  Normalization
matches the orthonormal real spherical harmonics: for m > 0 the cosine form,
for m < 0 the sine form, so e.g. (l, m) = (1, 1) gives sqrt(3/4pi) * x.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np


def _poly_add(p, q, scale=1):
    out = dict(p)
    for mono, c in q.items():
        out[mono] = out.get(mono, Fraction(0)) + c * scale
        if out[mono] == 0:
            del out[mono]
    return out


def _poly_mul_mono(p, mono, scale=1):
    (a, b, c) = mono
    return {(i + a, j + b, k + c): coef * scale for (i, j, k), coef in p.items()}


def _poly_scale(p, s):
    return {m: c * s for m, c in p.items() if c * s != 0}


def _poly_mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for (i, j, k), c2 in q.items():
            mono = (m1[0] + i, m1[1] + j, m1[2] + k)
            out[mono] = out.get(mono, Fraction(0)) + c1 * c2
    return {m: c for m, c in out.items() if c != 0}


def _poly_laplacian(p):
    out = {}
    for (i, j, k), c in p.items():
        for axis, e in enumerate((i, j, k)):
            if e >= 2:
                mono = [i, j, k]
                mono[axis] -= 2
                mono = tuple(mono)
                out[mono] = out.get(mono, Fraction(0)) + c * e * (e - 1)
    return {m: c for m, c in out.items() if c != 0}


def _double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@lru_cache(maxsize=None)
def _sector(m):
    """(A_m, B_m) = (Re, Im) of (x + iy)^m as polynomial dicts."""
    a = {(0, 0, 0): Fraction(1)}
    b = {}
    for _ in range(m):
        a_new = _poly_add(_poly_mul_mono(a, (1, 0, 0)),
                          _poly_mul_mono(b, (0, 1, 0)), scale=-1)
        b_new = _poly_add(_poly_mul_mono(b, (1, 0, 0)),
                          _poly_mul_mono(a, (0, 1, 0)))
        a, b = a_new, b_new
    return a, b


@lru_cache(maxsize=None)
def _legendre_part(l, m):
    """Homogenized associated-Legendre factor Pi_l^m(z, r^2).

    Pi_m^m = (2m-1)!!, Pi_{m+1}^m = (2m+1)!! z, and
    (l-m) Pi_l^m = (2l-1) z Pi_{l-1}^m - (l-1+m) r^2 Pi_{l-2}^m.
    """
    if l == m:
        return {(0, 0, 0): Fraction(_double_factorial(2 * m - 1))}
    if l == m + 1:
        return {(0, 0, 1): Fraction(_double_factorial(2 * m + 1))}
    pm1 = _legendre_part(l - 1, m)
    pm2 = _legendre_part(l - 2, m)
    r2 = {(2, 0, 0): Fraction(1), (0, 2, 0): Fraction(1), (0, 0, 2): Fraction(1)}
    t1 = _poly_scale(_poly_mul_mono(pm1, (0, 0, 1)), Fraction(2 * l - 1))
    t2 = _poly_scale(_poly_mul(r2, pm2), Fraction(l - 1 + m))
    return _poly_scale(_poly_add(t1, t2, scale=-1), Fraction(1, l - m))


class Polynomial3:
    """Trivariate polynomial with vectorized value/gradient evaluation."""

    def __init__(self, coeffs: dict):
        monos = sorted(coeffs)
        self.exponents = np.array(monos, dtype=int).reshape(len(monos), 3)
        self.coefficients = np.array([float(coeffs[m]) for m in monos])

    def value(self, pts):
        pts = np.asarray(pts, dtype=float)
        out = np.zeros(pts.shape[:-1])
        for (i, j, k), c in zip(self.exponents, self.coefficients):
            out += c * pts[..., 0] ** i * pts[..., 1] ** j * pts[..., 2] ** k
        return out

    def gradient(self, pts):
        pts = np.asarray(pts, dtype=float)
        g = np.zeros(pts.shape)
        x, y, z = pts[..., 0], pts[..., 1], pts[..., 2]
        for (i, j, k), c in zip(self.exponents, self.coefficients):
            if i:
                g[..., 0] += c * i * x ** (i - 1) * y ** j * z ** k
            if j:
                g[..., 1] += c * j * x ** i * y ** (j - 1) * z ** k
            if k:
                g[..., 2] += c * k * x ** i * y ** j * z ** (k - 1)
        return g


@lru_cache(maxsize=None)
def solid_harmonic_polynomial(l: int, m: int) -> Polynomial3:
    am = abs(m)
    pi_lm = _legendre_part(l, am)
    if m > 0:
        sector = _sector(am)[0]
    elif m < 0:
        sector = _sector(am)[1]
    else:
        sector = {(0, 0, 0): Fraction(1)}
    poly = _poly_mul(pi_lm, sector)
    assert _poly_laplacian(poly) == {}, f"solid harmonic ({l},{m}) not harmonic"
    norm = math.sqrt((2 * l + 1) / (4.0 * math.pi)
                     * math.factorial(l - am) / math.factorial(l + am))
    if m != 0:
        norm *= math.sqrt(2.0)
    out = Polynomial3(poly)
    out.coefficients = out.coefficients * norm
    return out
