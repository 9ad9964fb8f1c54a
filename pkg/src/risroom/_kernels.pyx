# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Bessel/Hankel of orders 0 and 1 and RIS norm sums.

Same algorithm as ``risroom._kernels_py`` (ascending series up to x = 12,
Hankel asymptotic expansion beyond), evaluated point by point in C.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, log, cos, sin, fabs, hypot, INFINITY

cnp.import_array()

cdef double EULER_GAMMA = 0.57721566490153286061
cdef double TWO_OVER_PI = 0.63661977236758134308
cdef double PI = 3.14159265358979323846
cdef double SERIES_LIMIT = 12.0
cdef int SERIES_TERMS = 48
cdef int ASYM_TERMS = 30


cdef inline void _series(double x, double* j0, double* j1, double* y0, double* y1) noexcept nogil:
    cdef double q = 0.25 * x * x
    cdef double half = 0.5 * x
    cdef double lg = log(half) + EULER_GAMMA
    cdef double t0 = 1.0, t1 = 1.0
    cdef double sj0 = 1.0, sj1 = 1.0
    cdef double harm = 0.0
    cdef double s0 = 0.0, s1 = 1.0
    cdef int k
    for k in range(1, SERIES_TERMS):
        t0 = -t0 * q / (k * k)
        t1 = -t1 * q / (k * (k + 1.0))
        sj0 += t0
        sj1 += t1
        harm += 1.0 / k
        s0 -= harm * t0
        s1 += (2.0 * harm + 1.0 / (k + 1.0)) * t1
        if fabs(t0) * (1.0 + harm) < 1e-17 and fabs(t1) * (1.0 + harm) < 1e-17:
            break
    sj1 *= half
    j0[0] = sj0
    j1[0] = sj1
    y0[0] = TWO_OVER_PI * (lg * sj0 + s0)
    y1[0] = TWO_OVER_PI * (lg * sj1 - 1.0 / x) - (half / PI) * s1


cdef inline void _pq(double x, double mu, double* p, double* q) noexcept nogil:
    cdef double inv8x = 1.0 / (8.0 * x)
    cdef double term = 1.0, mag, prev = INFINITY
    cdef int m
    p[0] = 1.0
    q[0] = 0.0
    for m in range(1, ASYM_TERMS):
        term = term * (mu - (2 * m - 1) * (2 * m - 1)) * inv8x / m
        mag = fabs(term)
        if mag >= prev or mag < 1e-17:
            break
        prev = mag
        if m % 2 == 0:
            if (m // 2) % 2 == 0:
                p[0] += term
            else:
                p[0] -= term
        else:
            if ((m - 1) // 2) % 2 == 0:
                q[0] += term
            else:
                q[0] -= term


cdef inline void _asymptotic(double x, double* j0, double* j1, double* y0, double* y1) noexcept nogil:
    cdef double amp = sqrt(TWO_OVER_PI / x)
    cdef double c = cos(x), s = sin(x)
    cdef double r = sqrt(0.5)
    cdef double c0 = r * (c + s), s0 = r * (s - c)
    cdef double c1 = s0, s1 = -c0
    cdef double p0, q0, p1, q1
    _pq(x, 0.0, &p0, &q0)
    _pq(x, 4.0, &p1, &q1)
    j0[0] = amp * (p0 * c0 - q0 * s0)
    y0[0] = amp * (p0 * s0 + q0 * c0)
    j1[0] = amp * (p1 * c1 - q1 * s1)
    y1[0] = amp * (p1 * s1 + q1 * c1)


cdef inline void _bessel01(double x, double* j0, double* j1, double* y0, double* y1) noexcept nogil:
    if x <= SERIES_LIMIT:
        _series(x, j0, j1, y0, y1)
    else:
        _asymptotic(x, j0, j1, y0, y1)


def bessel01(x):
    """Return ``(J0, J1, Y0, Y1)`` evaluated elementwise at ``x > 0``."""
    arr = np.ascontiguousarray(x, dtype=np.float64)
    shape = np.shape(x)
    cdef double[::1] xv = arr.ravel()
    cdef Py_ssize_t n = xv.shape[0], i
    oj0 = np.empty(n)
    oj1 = np.empty(n)
    oy0 = np.empty(n)
    oy1 = np.empty(n)
    cdef double[::1] a = oj0, b = oj1, c = oy0, d = oy1
    with nogil:
        for i in range(n):
            _bessel01(xv[i], &a[i], &b[i], &c[i], &d[i])
    return (oj0.reshape(shape), oj1.reshape(shape), oy0.reshape(shape), oy1.reshape(shape))


def hankel01(x):
    """Return ``(H0, H1)`` of the first kind as complex arrays."""
    j0, j1, y0, y1 = bessel01(x)
    return j0 + 1j * y0, j1 + 1j * y1


def ris_norms(double sx, double sz, double rx, double rz, positions, double k):
    """Squared norms feeding the cophased RIS gain.

    Returns ``(sum_n c_n^2 |H1_n|^2, sum_n |H0_n|^2, sum_n c_n |H1_n| |H0_n|)``
    with ``c_n`` the incidence cosine, ``H1_n = H1(k d_sn)`` and
    ``H0_n = H0(k d_rn)``, for elements at ``(positions[n], 0)``.
    """
    cdef double[::1] u = np.ascontiguousarray(positions, dtype=np.float64)
    cdef Py_ssize_t n = u.shape[0], i
    cdef double ts = 0.0, sr = 0.0, cross = 0.0, ds, dr, cs, m1, m0
    cdef double j0, j1, y0, y1, a0, a1, b0, b1
    with nogil:
        for i in range(n):
            ds = hypot(u[i] - sx, sz)
            dr = hypot(rx - u[i], rz)
            _bessel01(k * ds, &a0, &j1, &b0, &y1)
            _bessel01(k * dr, &j0, &a1, &y0, &b1)
            cs = fabs(sz) / ds
            m1 = cs * sqrt(j1 * j1 + y1 * y1)
            m0 = sqrt(j0 * j0 + y0 * y0)
            ts += m1 * m1
            sr += m0 * m0
            cross += m1 * m0
    return ts, sr, cross
