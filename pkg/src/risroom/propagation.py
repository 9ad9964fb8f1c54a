"""Free-space cylindrical-wave primitives and the exact single-wall reflection."""

import math
from typing import NamedTuple

import numpy as np

from risroom.materials import _reflection
from risroom.numerics import adaptive_quad, hankel1


class Point2D(NamedTuple):
    x: float
    z: float


def distance(a, b):
    return math.hypot(a[0] - b[0], a[1] - b[1])


def mirror(s):
    """Mirror image of ``s`` across the wall z = 0."""
    return Point2D(s[0], -s[1])


def _separation(r, s, carrier):
    d = distance(r, s)
    if d < 1e-6 * carrier.lambda_c:
        raise ValueError(f"points {tuple(r)} and {tuple(s)} are (nearly) coincident")
    return d


def green2d(r, s, carrier):
    """Outgoing 2D Green's function (j/4) H0(k |r - s|)."""
    d = _separation(r, s, carrier)
    return 0.25j * hankel1(0, carrier.k * d)


def incidence_cosine(u0, s):
    d = distance(u0, s)
    if d == 0.0:
        raise ValueError("incidence angle undefined for coincident points")
    return abs(s[1] - u0[1]) / d


def green2d_normal_derivative(u0, s, carrier):
    """z-derivative of the Green's function at a point u0 on the plane z = 0."""
    if u0[1] != 0:
        raise ValueError("u0 must lie on the plane z = 0")
    if s[1] == 0:
        raise ValueError("source must lie off the plane z = 0")
    d = _separation(u0, s, carrier)
    return 0.5j * math.pi / carrier.lambda_c * (abs(s[1]) / d) * hankel1(1, carrier.k * d)


def weyl_reflected_field(r, s, material, carrier, tol=None, evanescent=False):
    """Field at ``r`` reflected by a flat wall at z = 0 from a line source at ``s``.

    Plane-wave superposition of the source weighted by the Fresnel spectrum.
    With ``evanescent=False`` only |kx| <= k contributes, which leaves an
    absolute deficit close to 1/(2 pi k (r_z + s_z)) against the full field.
    ``evanescent=True`` adds the decaying tail, making the PEC limit exact.
    """
    if r[1] <= 0 or s[1] <= 0:
        raise ValueError("both points must lie in the half-space z > 0")
    k = carrier.k
    dx = r[0] - s[0]
    zz = r[1] + s[1]
    rho = math.hypot(dx, zz)
    if tol is None:
        # ~1e-7 relative to the cylindrical-wave amplitude at this range
        tol = 1e-7 * math.sqrt(2.0 / (math.pi * k * rho))

    # kx = k cos(phi): dkx / kz = -dphi removes the branch-point singularity
    def propagating(phi):
        c = np.cos(phi)
        return _reflection(c * c, material) * np.exp(1j * k * (dx * c + zz * np.sin(phi)))

    total = 0.25j / math.pi * adaptive_quad(propagating, 0.0, math.pi, tol=tol, omega=k * rho)
    if evanescent:
        total += _evanescent_tail(dx, zz, material, k, tol)
    return total


def _evanescent_tail(dx, zz, material, k, tol):
    # kx = k cosh(t), kz = j k sinh(t); the tail is even in kx
    t_max = math.asinh(40.0 / (k * zz))

    def f(t):
        ch = np.cosh(t)
        return _reflection(ch * ch, material) * np.cos(k * dx * ch) * np.exp(-k * zz * np.sinh(t))

    omega = k * abs(dx) * math.sinh(t_max) + 1.0
    return adaptive_quad(f, 0.0, t_max, tol=tol, omega=omega) / (2.0 * math.pi)
