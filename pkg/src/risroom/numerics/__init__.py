"""Special functions, quadrature and empirical statistics."""

from risroom.numerics.quadrature import QuadratureError, adaptive_quad
from risroom.numerics.special import (
    bessel_j,
    bessel_y,
    hankel01,
    hankel1,
    hankel1_asymptotic,
)
from risroom.numerics.stats import CdfTable, empirical_cdf, quantile

__all__ = [
    "CdfTable",
    "QuadratureError",
    "adaptive_quad",
    "bessel_j",
    "bessel_y",
    "empirical_cdf",
    "hankel01",
    "hankel1",
    "hankel1_asymptotic",
    "quantile",
]
