"""Reflective intelligent surface on the plane z = 0 in free space.

Responses follow the physical-optics current of a perfectly conducting
strip, so they carry a 1/mu0 scale. Multiply by ``RIS_NORMALIZATION`` (or
use ``normalized=True``) before comparing against room channels, which use
unit image currents.
"""

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from risroom._backend import kernels
from risroom.materials import MU0
from risroom.numerics import adaptive_quad, hankel01
from risroom.propagation import Point2D, green2d, mirror

RIS_NORMALIZATION = -MU0
CALIBRATION_TOLERANCE = 0.05


class SmallApertureWarning(UserWarning):
    """Aperture under ten wavelengths: neglected edge diffraction may matter."""


class CalibrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class RisGeometry:
    """Aperture of length ``L`` centred at ``(center, 0)`` with element pitch ``spacing``."""

    L: float
    spacing: float
    center: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.L) and self.L > 0):
            raise ValueError(f"RIS length must be positive, got {self.L}")
        if not (math.isfinite(self.spacing) and self.spacing > 0):
            raise ValueError(f"element spacing must be positive, got {self.spacing}")

    @property
    def N(self):
        # ceil keeps every element no wider than the pitch
        return max(1, math.ceil(self.L / self.spacing - 1e-9))

    @property
    def element_width(self):
        return self.L / self.N

    @property
    def element_positions(self):
        """x-coordinates of the element centres."""
        n = np.arange(self.N)
        return self.center - 0.5 * self.L + (n + 0.5) * self.element_width


class RisChannelVectors(NamedTuple):
    h_ts: np.ndarray  # transmitter -> elements
    h_sr: np.ndarray  # elements -> receiver


def _check_geometry(r, s):
    if s[1] <= 0 or r[1] <= 0:
        raise ValueError("transmitter and receiver must lie above the RIS plane (z > 0)")


def _warn_small(L, carrier):
    if L < 10 * carrier.lambda_c:
        warnings.warn(
            f"RIS of {L / carrier.lambda_c:.1f} wavelengths: edge diffraction is neglected",
            SmallApertureWarning,
            stacklevel=3,
        )


def ris_channel_vectors(r, s, ris, carrier):
    _check_geometry(r, s)
    _warn_small(ris.L, carrier)
    u = ris.element_positions
    k = carrier.k
    ds = np.hypot(u - s[0], s[1])
    dr = np.hypot(r[0] - u, r[1])
    _, h1 = hankel01(k * ds)
    h0, _ = hankel01(k * dr)
    cos_i = abs(s[1]) / ds
    h_ts = -math.pi / (4 * MU0 * carrier.lambda_c) * cos_i * h1
    h_sr = ris.element_width * h0
    return RisChannelVectors(h_ts, h_sr)


def ris_channel(r, s, ris, phases, carrier):
    """h_sr^T diag(exp(j theta)) h_ts."""
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (ris.N,):
        raise ValueError(f"expected {ris.N} phases, got shape {phases.shape}")
    v = ris_channel_vectors(r, s, ris, carrier)
    return complex(np.sum(v.h_sr * np.exp(1j * phases) * v.h_ts))


def cophasing_phases(vectors):
    """Element phases aligning every term of the RIS sum to zero phase."""
    return np.mod(-(np.angle(vectors.h_sr) + np.angle(vectors.h_ts)), 2 * math.pi)


def ris_optimal_gain(r, s, ris, carrier):
    """Best phase-only gain ``(sum_n |h_sr,n| |h_ts,n|)^2`` and the phases attaining it.

    Cophasing makes every term of the sum real and positive, which by the
    triangle inequality maximizes the modulus over all phase profiles.
    """
    v = ris_channel_vectors(r, s, ris, carrier)
    gain = float(np.sum(np.abs(v.h_sr) * np.abs(v.h_ts)) ** 2)
    return gain, cophasing_phases(v)


def ris_gain_bound(r, s, ris, carrier):
    """Cauchy-Schwarz bound ``(||h_sr|| ||h_ts||)^2``.

    Reached only when amplitudes are shaped too (|h_sr| proportional to
    |h_ts|); a phase-only surface stays at or below it.
    """
    v = ris_channel_vectors(r, s, ris, carrier)
    return float(np.vdot(v.h_sr, v.h_sr).real * np.vdot(v.h_ts, v.h_ts).real)


def cophased_gain(r, s, ris, carrier, normalized=True, bound=False):
    """Magnitude-only evaluation of the optimal gain, on the compiled kernel when present.

    Matches :func:`ris_optimal_gain` (or :func:`ris_gain_bound` when
    ``bound`` is set); ``normalized`` applies ``|RIS_NORMALIZATION|^2``.
    """
    _check_geometry(r, s)
    ts, sr, cross = kernels.ris_norms(
        float(s[0]), float(s[1]), float(r[0]), float(r[1]), ris.element_positions, carrier.k
    )
    scale = (math.pi / (4 * carrier.lambda_c)) ** 2 * ris.element_width**2
    if not normalized:
        scale /= MU0**2
    return scale * (ts * sr if bound else cross * cross)


def quantize_phases(phases, bits):
    """Round phases to the nearest of ``2**bits`` uniform levels in [0, 2 pi)."""
    if bits < 1:
        raise ValueError("need at least one bit")
    step = 2 * math.pi / 2**bits
    return np.mod(np.round(np.asarray(phases) / step) * step, 2 * math.pi)


def ris_near_field_integral(r, s, L, carrier, theta_fn=None, tol=None, center=0.0):
    """Continuous-aperture response over [center - L/2, center + L/2].

    ``theta_fn`` maps element abscissae (arrays) to phase shifts; zero phase
    when omitted, which is a bounded perfectly conducting strip.
    """
    _check_geometry(r, s)
    _warn_small(L, carrier)
    k = carrier.k
    lam = carrier.lambda_c

    def integrand(u):
        ds = np.hypot(u - s[0], s[1])
        dr = np.hypot(r[0] - u, r[1])
        _, h1 = hankel01(k * ds)
        h0, _ = hankel01(k * dr)
        out = h0 * (abs(s[1]) / ds) * h1
        if theta_fn is not None:
            out = out * np.exp(1j * np.asarray(theta_fn(u), dtype=float))
        return out

    if tol is None:
        # the integral is of order L |H0 H1|; ask for ~1e-8 of a typical element
        d = min(math.hypot(center - s[0], s[1]), math.hypot(r[0] - center, r[1]))
        tol = 1e-8 * L * 2.0 / (math.pi * k * d)
    a, b = center - 0.5 * L, center + 0.5 * L
    value = adaptive_quad(integrand, a, b, tol=tol, omega=2.0 * k)
    return -math.pi / (4 * MU0 * lam) * value


def _far_angles(r, s):
    rn = math.hypot(*r)
    sn = math.hypot(*s)
    # signed so that specular reflection has theta_r == theta_i
    sin_i = -s[0] / sn
    sin_r = r[0] / rn
    cos_i = abs(s[1]) / sn
    return rn, sn, sin_i, sin_r, cos_i


def ris_far_field(r, s, L, carrier):
    """Far-zone response of a zero-phase strip centred at the origin."""
    _check_geometry(r, s)
    lam = carrier.lambda_c
    k = carrier.k
    rn, sn, sin_i, sin_r, cos_i = _far_angles(r, s)
    e_inc = lam / (2 * MU0) * np.exp(1j * k * sn) / math.sqrt(2 * math.pi * sn)
    prop = np.exp(1j * k * rn) / math.sqrt(2 * math.pi * rn)
    return complex(e_inc * cos_i * prop * (L / lam) * np.sinc((L / lam) * (sin_i - sin_r)))


def far_field_gain(r, s, L, carrier):
    """Power form of :func:`ris_far_field`."""
    _check_geometry(r, s)
    lam = carrier.lambda_c
    rn, sn, sin_i, sin_r, cos_i = _far_angles(r, s)
    e_inc_sq = (lam / (2 * MU0)) ** 2 / (2 * math.pi * sn)
    pattern = (L / lam) ** 2 * np.sinc((L / lam) * (sin_i - sin_r)) ** 2
    return float(e_inc_sq / (2 * math.pi * rn) * cos_i**2 * pattern)


def reference_geometries(carrier):
    """Specular ``(L, s, r)`` triples used to fit the normalization constant."""
    lam = carrier.lambda_c
    return [
        (80 * lam, Point2D(-10 * lam, 20 * lam), Point2D(10 * lam, 20 * lam)),
        (80 * lam, Point2D(-15 * lam, 30 * lam), Point2D(15 * lam, 30 * lam)),
        (80 * lam, Point2D(-5 * lam, 10 * lam), Point2D(20 * lam, 40 * lam)),
    ]


def fit_normalization(carrier, L, s, r):
    """kappa with kappa * h_L(r, s) equal to the mirror-image field -G(r, s')."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SmallApertureWarning)
        h = ris_near_field_integral(r, s, L, carrier)
    return complex(-green2d(r, mirror(s), carrier) / h)


def calibrate_ris_normalization(carrier, geometry=None):
    """Fit kappa at a specular reference geometry and check it against -mu0.

    Raises :class:`CalibrationError` when the fit strays more than 5% from
    the analytic value, which indicates a sign or scale bug.
    """
    L, s, r = geometry if geometry is not None else reference_geometries(carrier)[0]
    kappa = fit_normalization(carrier, L, s, r)
    deviation = abs(kappa / RIS_NORMALIZATION - 1)
    if deviation > CALIBRATION_TOLERANCE:
        raise CalibrationError(
            f"fitted kappa {kappa:.6g} deviates {deviation:.1%} from -mu0 = {RIS_NORMALIZATION:.6g}"
        )
    return kappa
