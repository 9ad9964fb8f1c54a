"""Bessel and Hankel functions of orders 0 and 1 for positive real arguments."""

import math

import numpy as np

from risroom._backend import kernels


def _check_order(order):
    if order not in (0, 1):
        raise ValueError(f"order must be 0 or 1, got {order!r}")


def _check_arg(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("argument must be finite")
    if np.any(x <= 0.0):
        raise ValueError("argument must be positive")
    return x


def _unwrap(value, like):
    return float(value) if np.ndim(like) == 0 else value


def bessel_j(order, x):
    """Bessel function of the first kind J_order(x), x > 0 (scalar or array)."""
    _check_order(order)
    xa = _check_arg(x)
    j0, j1, _, _ = kernels.bessel01(xa)
    return _unwrap(j1 if order else j0, x)


def bessel_y(order, x):
    """Bessel function of the second kind Y_order(x), x > 0 (scalar or array)."""
    _check_order(order)
    xa = _check_arg(x)
    _, _, y0, y1 = kernels.bessel01(xa)
    return _unwrap(y1 if order else y0, x)


def hankel1(order, x):
    """Hankel function of the first kind, J_order(x) + j Y_order(x)."""
    _check_order(order)
    xa = _check_arg(x)
    h0, h1 = kernels.hankel01(xa)
    h = h1 if order else h0
    return complex(h) if np.ndim(x) == 0 else h


def hankel01(x):
    """Both ``(H0(x), H1(x))`` as complex arrays; skips the scalar wrappers."""
    return kernels.hankel01(_check_arg(x))


def hankel1_asymptotic(order, x):
    """Leading large-argument form sqrt(2/(pi x)) exp(j(x - order pi/2 - pi/4))."""
    _check_order(order)
    xa = _check_arg(x)
    h = np.sqrt(2.0 / (math.pi * xa)) * np.exp(1j * (xa - order * math.pi / 2 - math.pi / 4))
    return complex(h) if np.ndim(x) == 0 else h
