# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled phased character sum, the hot inner loop of the sum oracle."""

from array import array

from libc.math cimport cos, sin

cdef double TAU = 6.283185307179586476925287

# root-of-unity tables cached per order; sweeps reuse the same few orders
cdef dict _cos_cache = {}
cdef dict _sin_cache = {}


cdef _tables(long long order):
    cdef object c = _cos_cache.get(order)
    if c is not None:
        return c, _sin_cache[order]
    cdef Py_ssize_t k, n = <Py_ssize_t> order
    c = array("d", bytes(8 * n))
    s = array("d", bytes(8 * n))
    cdef double[::1] cv = c
    cdef double[::1] sv = s
    cdef double angle
    for k in range(n):
        angle = TAU * k / order
        cv[k] = cos(angle)
        sv[k] = sin(angle)
    _cos_cache[order] = c
    _sin_cache[order] = s
    return c, s


def phased_sum(char_exps, long long char_order, phase_exps, long long phase_order):
    """Sum of exp(2*pi*i*(a/char_order + b/phase_order)) over paired exponents."""
    if char_order < 1 or phase_order < 1:
        raise ValueError("orders must be positive")
    if not isinstance(char_exps, array) or char_exps.typecode != "q":
        char_exps = array("q", char_exps)
    if not isinstance(phase_exps, array) or phase_exps.typecode != "q":
        phase_exps = array("q", phase_exps)
    cdef long long[::1] a = char_exps
    cdef long long[::1] b = phase_exps
    if a.shape[0] != b.shape[0]:
        raise ValueError("exponent sequences must have equal length")
    ca_obj, sa_obj = _tables(char_order)
    cb_obj, sb_obj = _tables(phase_order)
    cdef double[::1] ca = ca_obj
    cdef double[::1] sa = sa_obj
    cdef double[::1] cb = cb_obj
    cdef double[::1] sb = sb_obj
    cdef Py_ssize_t i, n = a.shape[0]
    cdef double re = 0.0, im = 0.0
    cdef double xr, xi, yr, yi
    cdef long long ea, eb
    for i in range(n):
        ea = a[i] % char_order
        if ea < 0:
            ea += char_order
        eb = b[i] % phase_order
        if eb < 0:
            eb += phase_order
        xr = ca[ea]
        xi = sa[ea]
        yr = cb[eb]
        yi = sb[eb]
        re += xr * yr - xi * yi
        im += xr * yi + xi * yr
    return complex(re, im)
