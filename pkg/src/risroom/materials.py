"""Wall materials and their plane-wave (Fresnel) reflection response.

Transverse-electric polarization throughout. Lossy materials carry a
negative imaginary part in ``eps_r`` and ``n``.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from risroom.numerics import adaptive_quad

SPEED_OF_LIGHT = 299_792_458.0
MU0 = 4e-7 * math.pi

# "paper": the recommendation's complex permittivity value is used directly
# as the refractive index, which is how the reference concrete index of
# 5.31 - 0.3106j at 28 GHz arises. "physical": n = sqrt(eps_r).
INDEX_CONVENTIONS = ("paper", "physical")


@dataclass(frozen=True)
class CarrierConfig:
    fc: float = 28e9

    def __post_init__(self):
        if not (math.isfinite(self.fc) and self.fc > 0):
            raise ValueError(f"carrier frequency must be positive, got {self.fc}")

    @property
    def c(self):
        return SPEED_OF_LIGHT

    @property
    def lambda_c(self):
        return SPEED_OF_LIGHT / self.fc

    @property
    def k(self):
        return 2.0 * math.pi / self.lambda_c


@dataclass(frozen=True)
class Material:
    name: str
    eps_r: complex
    mu_r: complex
    n: complex

    @classmethod
    def from_constitutive(cls, name, eps_r, mu_r=1.0):
        eps_r = complex(eps_r)
        mu_r = complex(mu_r)
        prod = eps_r * mu_r
        if prod.imag > 0:
            raise ValueError("active medium: Im(eps_r * mu_r) must be <= 0")
        return cls(name, eps_r, mu_r, cmath.sqrt(prod))

    @classmethod
    def from_index(cls, name, n, mu_r=1.0):
        n = complex(n)
        if n.imag > 0 or n.real <= 0:
            raise ValueError(f"refractive index needs Re(n) > 0 and Im(n) <= 0, got {n}")
        mu_r = complex(mu_r)
        return cls(name, n * n / mu_r, mu_r, n)


@dataclass(frozen=True)
class ItuConstants:
    a: float
    b: float
    c: float
    d: float
    fmin_ghz: float
    fmax_ghz: float


@lru_cache(maxsize=None)
def itu_table():
    """Material constants parsed from the bundled data file."""
    text = resources.files("risroom").joinpath("data/itu_p2040.txt").read_text()
    table = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, *vals = line.split()
        table[name] = ItuConstants(*map(float, vals))
    return table


def itu_permittivity(name, fc):
    """Complex relative permittivity eps' - j 17.98 sigma / f_GHz."""
    table = itu_table()
    if name not in table:
        raise ValueError(f"unknown material {name!r}; known: {sorted(table)}")
    p = table[name]
    f = fc / 1e9
    if not p.fmin_ghz <= f <= p.fmax_ghz:
        raise ValueError(f"{name}: {f:g} GHz outside validity range [{p.fmin_ghz:g}, {p.fmax_ghz:g}] GHz")
    eps = p.a * f**p.b
    sigma = p.c * f**p.d
    return complex(eps, -17.98 * sigma / f)


def material_from_itu(name, fc, *, index_convention="paper", eps_r=None, mu_r=1.0):
    """Build a :class:`Material` from the recommendation's power-law model.

    ``name="custom"`` takes ``eps_r`` and ``mu_r`` from the caller instead.
    """
    if index_convention not in INDEX_CONVENTIONS:
        raise ValueError(f"index_convention must be one of {INDEX_CONVENTIONS}")
    if name == "custom":
        if eps_r is None:
            raise ValueError("custom material needs eps_r")
        return Material.from_constitutive("custom", eps_r, mu_r)
    if not 1e9 <= fc <= 100e9:
        raise ValueError(f"fc={fc:g} Hz outside the 1-100 GHz model range")
    value = itu_permittivity(name, fc)
    if index_convention == "paper":
        return Material.from_index(name, value)
    return Material.from_constitutive(name, value)


def pec_surrogate(n=1e6):
    """Very high-index material standing in for a perfect conductor."""
    return Material.from_index("pec", complex(n))


def fresnel_spectrum(kx, material, carrier):
    """Reflection coefficient R(kx) for a propagating plane wave.

    ``kx`` is the wavenumber component tangential to the wall and may be an
    array. Square roots take the branch with nonnegative real part.
    """
    k = carrier.k
    kxa = np.asarray(kx, dtype=float)
    if np.any(np.abs(kxa) > k * (1 + 1e-12)):
        raise ValueError("|kx| exceeds 2*pi/lambda_c: evanescent components are excluded")
    s2 = np.minimum((kxa / k) ** 2, 1.0)
    out = _reflection(s2, material)
    return complex(out) if np.ndim(kx) == 0 else out


def _reflection(s2, material):
    # s2 = (kx/k)^2; negative sqrt arguments (evanescent) land on +j sqrt(.)
    cos_i = np.sqrt((1.0 - s2).astype(complex))
    root = np.sqrt(material.n**2 - s2 + 0j)
    mu = material.mu_r
    num = mu * cos_i - root
    den = mu * cos_i + root
    # den vanishes only for a matched medium at grazing, which reflects nothing
    safe = np.where(den == 0, 1.0, den)
    return np.where(den == 0, 0.0, num / safe)


def spatial_response(material, carrier, grid, tol=1e-10):
    """Band-limited spatial reflection kernel R(u_x) sampled on ``grid``.

    The spectrum is integrated over |kx| <= k with adaptive quadrature, one
    integral per grid point.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise ValueError("grid must be a 1-D array with at least two points")
    step = np.diff(grid)
    if np.any(step <= 0) or not np.allclose(step, step[0], rtol=1e-9):
        raise ValueError("grid must be uniform and increasing")
    if step[0] >= carrier.lambda_c / 4:
        raise ValueError("grid spacing must be below lambda_c / 4")
    k = carrier.k
    out = np.empty(grid.size, dtype=complex)
    for i, u in enumerate(grid):
        # substitute kx = k t; R depends on t^2 only
        def f(t, u=u):
            return _reflection(t * t, material) * np.exp(1j * k * u * t)

        out[i] = k / (2 * math.pi) * adaptive_quad(f, -1.0, 1.0, tol=tol, omega=k * abs(u) + 1.0)
    return out
