"""Vectorized numpy kernels; the fallback used when the compiled core is absent.

The public surface mirrors ``risroom._kernels`` exactly: ``bessel01``,
``hankel01`` and ``ris_norms``.
"""

import numpy as np

EULER_GAMMA = 0.57721566490153286061
TWO_OVER_PI = 0.63661977236758134308
SERIES_LIMIT = 12.0
_SERIES_TERMS = 48
_ASYM_TERMS = 30


def _series(x):
    x = np.asarray(x, dtype=float)
    q = 0.25 * x * x
    half = 0.5 * x
    lg = np.log(half) + EULER_GAMMA

    t0 = np.ones_like(x)  # (q^k) / (k!)^2
    t1 = np.ones_like(x)  # (q^k) / (k! (k+1)!)
    j0 = t0.copy()
    j1 = t1.copy()
    harm = 0.0
    s0 = np.zeros_like(x)
    s1 = t1.copy()  # sum (H_k + H_{k+1}) t1, k = 0 term is 1 * t1
    for k in range(1, _SERIES_TERMS):
        t0 = -t0 * q / (k * k)
        t1 = -t1 * q / (k * (k + 1))
        j0 += t0
        j1 += t1
        harm += 1.0 / k
        s0 -= harm * t0
        s1 += (2.0 * harm + 1.0 / (k + 1)) * t1
        if max(np.max(np.abs(t0)), np.max(np.abs(t1))) * (1.0 + harm) < 1e-17:
            break
    j1 *= half
    y0 = TWO_OVER_PI * (lg * j0 + s0)
    y1 = TWO_OVER_PI * (lg * j1 - 1.0 / x) - (half / np.pi) * s1
    return j0, j1, y0, y1


def _pq(x, mu):
    # Hankel asymptotic P, Q truncated before the smallest term.
    inv8x = 1.0 / (8.0 * x)
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    live = np.ones(x.shape, dtype=bool)
    prev = np.full_like(x, np.inf)
    for m in range(1, _ASYM_TERMS):
        term = term * (mu - (2 * m - 1) ** 2) * inv8x / m
        mag = np.abs(term)
        live &= (mag < prev) & (mag >= 1e-17)
        prev = mag
        if not live.any():
            break
        contrib = np.where(live, term, 0.0)
        # a_m/x^m enters P with sign (-1)^(m/2) for even m, Q with (-1)^((m-1)/2)
        if m % 2 == 0:
            p += contrib if (m // 2) % 2 == 0 else -contrib
        else:
            q += contrib if ((m - 1) // 2) % 2 == 0 else -contrib
    return p, q


def _asymptotic(x):
    x = np.asarray(x, dtype=float)
    amp = np.sqrt(TWO_OVER_PI / x)
    c = np.cos(x)
    s = np.sin(x)
    # chi0 = x - pi/4, chi1 = x - 3pi/4
    r = np.sqrt(0.5)
    c0 = r * (c + s)
    s0 = r * (s - c)
    c1 = s0
    s1 = -c0
    p0, q0 = _pq(x, 0.0)
    p1, q1 = _pq(x, 4.0)
    j0 = amp * (p0 * c0 - q0 * s0)
    y0 = amp * (p0 * s0 + q0 * c0)
    j1 = amp * (p1 * c1 - q1 * s1)
    y1 = amp * (p1 * s1 + q1 * c1)
    return j0, j1, y0, y1


def bessel01(x):
    """Return ``(J0, J1, Y0, Y1)`` evaluated elementwise at ``x > 0``."""
    x = np.asarray(x, dtype=float)
    shape = x.shape
    x = x.ravel()
    out = [np.empty_like(x) for _ in range(4)]
    small = x <= SERIES_LIMIT
    if small.any():
        for o, v in zip(out, _series(x[small])):
            o[small] = v
    big = ~small
    if big.any():
        for o, v in zip(out, _asymptotic(x[big])):
            o[big] = v
    return tuple(o.reshape(shape) for o in out)


def hankel01(x):
    """Return ``(H0, H1)`` of the first kind as complex arrays."""
    j0, j1, y0, y1 = bessel01(x)
    return j0 + 1j * y0, j1 + 1j * y1


def ris_norms(sx, sz, rx, rz, positions, k):
    """Squared norms feeding the cophased RIS gain.

    Returns ``(sum_n c_n^2 |H1_n|^2, sum_n |H0_n|^2, sum_n c_n |H1_n| |H0_n|)``
    with ``c_n`` the incidence cosine, ``H1_n = H1(k d_sn)`` and
    ``H0_n = H0(k d_rn)``, for elements at ``(positions[n], 0)``.
    """
    u = np.asarray(positions, dtype=float)
    ds = np.hypot(u - sx, sz)
    dr = np.hypot(rx - u, rz)
    j0, _, y0, _ = bessel01(k * dr)
    _, j1, _, y1 = bessel01(k * ds)
    m1 = abs(sz) / ds * np.hypot(j1, y1)
    m0 = np.hypot(j0, y0)
    return float(np.sum(m1 * m1)), float(np.sum(m0 * m0)), float(np.sum(m1 * m0))
