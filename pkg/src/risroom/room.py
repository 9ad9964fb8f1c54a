"""Ambient channel of an empty rectangular room through the image lattice.

The room spans x in [-W/2, W/2] and z in [0, beta W]; wall W1 is z = 0.
Every image carries one Fresnel factor per bounce, evaluated at the
specular angle of its unfolded ray. The line-of-sight term never enters.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from risroom.materials import _reflection
from risroom.numerics import hankel01
from risroom.propagation import Point2D, distance


@dataclass(frozen=True)
class RoomGeometry:
    W: float
    beta: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.W) and self.W > 0):
            raise ValueError(f"room width must be positive, got {self.W}")
        if not 0 < self.beta <= 1:
            raise ValueError(f"aspect parameter beta must lie in (0, 1], got {self.beta}")

    @property
    def depth(self):
        return self.beta * self.W

    def contains(self, p, margin=0.0):
        """True when ``p`` is interior with at least ``margin`` to every wall."""
        x, z = p
        half = 0.5 * self.W
        return (-half + margin < x < half - margin) and (margin < z < self.depth - margin)


class ImageSource(NamedTuple):
    position: Point2D
    nx: int  # bounces on the x-normal walls (x = +-W/2)
    nz: int  # bounces on the z-normal walls (z = 0, z = beta W)

    @property
    def order(self):
        return self.nx + self.nz


@dataclass(frozen=True)
class ChannelSample:
    tx: Point2D
    rx: Point2D
    h_coherent: complex
    gain_power_sum: float
    M: int

    @property
    def gain_coherent(self):
        return abs(self.h_coherent) ** 2


def _lattice(room, s, M):
    """Image coordinates and bounce counts as arrays, ordered by (p, q)."""
    if M < 1:
        raise ValueError("truncation order M must be >= 1")
    if not room.contains(s):
        raise ValueError(f"source {tuple(s)} is not strictly inside the room")
    p, q = [], []
    for i in range(-M, M + 1):
        span = M - abs(i)
        for j in range(-span, span + 1):
            if i or j:
                p.append(i)
                q.append(j)
    p = np.array(p)
    q = np.array(q)
    W, D = room.W, room.depth
    sign_p = np.where(p % 2 == 0, 1.0, -1.0)
    sign_q = np.where(q % 2 == 0, 1.0, -1.0)
    x = p * W + sign_p * s[0]
    z = 0.5 * D + q * D + sign_q * (s[1] - 0.5 * D)
    return x, z, np.abs(p), np.abs(q)


def enumerate_images(room, s, M):
    """All lattice images of ``s`` with 1 <= order <= M."""
    x, z, nx, nz = _lattice(room, s, M)
    return [ImageSource(Point2D(float(a), float(b)), int(c), int(d)) for a, b, c, d in zip(x, z, nx, nz)]


def _contributions(r, x, z, nx, nz, material, carrier):
    dx = r[0] - x
    dz = r[1] - z
    d = np.hypot(dx, dz)
    if np.any(d < 1e-6 * carrier.lambda_c):
        raise ValueError("receiver coincides with an image source")
    h0, _ = hankel01(carrier.k * d)
    # tangential wavenumber fraction on z-normal walls is |dx|/d, on x-normal walls |dz|/d
    rz = _reflection((dx / d) ** 2, material)
    rx = _reflection((dz / d) ** 2, material)
    return 0.25j * h0 * rx**nx * rz**nz


def image_contribution(img, r, material, carrier):
    """G(r, image) times the Fresnel factor of each bounce."""
    h = _contributions(
        r, np.array([img.position.x]), np.array([img.position.z]),
        np.array([img.nx]), np.array([img.nz]), material, carrier,
    )
    return complex(h[0])


def image_contributions(r, s, room, material, carrier, M):
    """Per-image responses in lattice order, plus the bounce orders."""
    x, z, nx, nz = _lattice(room, s, M)
    return _contributions(r, x, z, nx, nz, material, carrier), nx + nz


def room_channel(r, s, room, material, carrier, M=3, standoff=None):
    """Coherent and power-sum ambient channels between ``s`` and ``r``.

    ``standoff`` (default one wavelength) is the required clearance of both
    points from every wall; the two points must also be a wavelength apart.
    """
    lam = carrier.lambda_c
    margin = lam if standoff is None else standoff
    for p, label in ((s, "transmitter"), (r, "receiver")):
        if not room.contains(p, margin):
            raise ValueError(f"{label} {tuple(p)} violates the wall standoff of {margin:g} m")
    if distance(r, s) < lam:
        raise ValueError("transmitter and receiver must be at least one wavelength apart")
    h, _ = image_contributions(r, s, room, material, carrier, M)
    return ChannelSample(
        tx=Point2D(*s),
        rx=Point2D(*r),
        h_coherent=complex(h.sum()),
        gain_power_sum=float(np.sum(h.real**2 + h.imag**2)),
        M=M,
    )
