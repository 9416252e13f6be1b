# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for potential evaluation and gradients.

Same contracts as ``_kernels_py``; values are accumulated with Neumaier
compensated summation.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


cdef inline void _acc(double x, double* s, double* comp) noexcept nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        comp[0] += (s[0] - t) + x
    else:
        comp[0] += (x - t) + s[0]
    s[0] = t


cdef inline double _horner(const double[::1] c, double x) noexcept nogil:
    cdef Py_ssize_t i
    cdef double r = 0.0
    for i in range(c.shape[0] - 1, -1, -1):
        r = r * x + c[i]
    return r


cdef inline void _horner_d(const double[::1] c, double x, double* val, double* der) noexcept nogil:
    cdef Py_ssize_t i
    cdef double r = 0.0, dr = 0.0
    for i in range(c.shape[0] - 1, -1, -1):
        dr = dr * x + r
        r = r * x + c[i]
    val[0] = r
    der[0] = dr


cdef inline void _horner2(const double[:, ::1] C, double complex z,
                          double complex* val, double complex* dz,
                          double complex* dzb, bint want_d) noexcept nogil:
    # P(z) = sum_a z^a h_a(zbar), h_a(y) = sum_b C[a, b] y^b
    cdef Py_ssize_t a, b
    cdef Py_ssize_t na = C.shape[0], nb = C.shape[1]
    cdef double complex zb = z.conjugate()
    cdef double complex h, hd, r = 0, rz = 0, rzb = 0
    for a in range(na - 1, -1, -1):
        h = 0
        hd = 0
        for b in range(nb - 1, -1, -1):
            hd = hd * zb + h
            h = h * zb + C[a, b]
        rz = rz * z + r
        r = r * z + h
        rzb = rzb * z + hd
    val[0] = r
    if want_d:
        dz[0] = rz
        dzb[0] = rzb


def poly_sum_real(G, c, w):
    cdef const double[:, ::1] g = np.ascontiguousarray(G, dtype=np.float64)
    cdef const double[::1] cc = np.ascontiguousarray(c, dtype=np.float64)
    cdef const double[::1] ww = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t n = g.shape[0], j, k
    cdef double s = 0.0, comp = 0.0
    with nogil:
        for j in range(n):
            for k in range(n):
                _acc(ww[j] * ww[k] * _horner(cc, g[j, k]), &s, &comp)
    return s + comp


def poly_sum_complex(G, C, w):
    cdef const double complex[:, ::1] g = np.ascontiguousarray(G, dtype=np.complex128)
    cdef const double[:, ::1] cc = np.ascontiguousarray(C, dtype=np.float64)
    cdef const double[::1] ww = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t n = g.shape[0], j, k
    cdef double s = 0.0, comp = 0.0
    cdef double complex v, dummy
    with nogil:
        for j in range(n):
            _horner2(cc, g[j, j], &v, &dummy, &dummy, False)
            _acc(ww[j] * ww[j] * v.real, &s, &comp)
            for k in range(j + 1, n):
                _horner2(cc, g[j, k], &v, &dummy, &dummy, False)
                _acc(2.0 * ww[j] * ww[k] * v.real, &s, &comp)
    return s + comp


def value_grad_real(V, c, w):
    cdef const double[:, ::1] v = np.ascontiguousarray(V, dtype=np.float64)
    cdef const double[::1] cc = np.ascontiguousarray(c, dtype=np.float64)
    cdef const double[::1] ww = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0], d = v.shape[1], j, k, i
    grad_arr = np.zeros((n, d))
    cdef double[:, ::1] grad = grad_arr
    cdef double s = 0.0, comp = 0.0, gjk, val, der, f
    with nogil:
        for j in range(n):
            for k in range(j, n):
                gjk = 0.0
                for i in range(d):
                    gjk = gjk + v[j, i] * v[k, i]
                _horner_d(cc, gjk, &val, &der)
                f = ww[j] * ww[k]
                if k == j:
                    _acc(f * val, &s, &comp)
                    for i in range(d):
                        grad[j, i] += 2.0 * f * der * v[j, i]
                else:
                    _acc(2.0 * f * val, &s, &comp)
                    for i in range(d):
                        grad[j, i] += 2.0 * f * der * v[k, i]
                        grad[k, i] += 2.0 * f * der * v[j, i]
    return s + comp, grad_arr


def value_grad_complex(V, C, w):
    cdef const double complex[:, ::1] v = np.ascontiguousarray(V, dtype=np.complex128)
    cdef const double[:, ::1] cc = np.ascontiguousarray(C, dtype=np.float64)
    cdef const double[::1] ww = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0], d = v.shape[1], j, k, i
    grad_arr = np.zeros((n, d), dtype=np.complex128)
    cdef double complex[:, ::1] grad = grad_arr
    cdef double s = 0.0, comp = 0.0, f
    cdef double complex gjk, gkj, val, dz, dzb, dz2, dzb2, dummy
    with nogil:
        for j in range(n):
            for k in range(j, n):
                gjk = 0
                for i in range(d):
                    gjk = gjk + v[j, i] * v[k, i].conjugate()
                if k == j:
                    gjk = gjk.real
                f = ww[j] * ww[k]
                _horner2(cc, gjk, &val, &dz, &dzb, True)
                if k == j:
                    _acc(f * val.real, &s, &comp)
                    for i in range(d):
                        grad[j, i] += 2.0 * f * (dz + dzb) * v[j, i]
                else:
                    _acc(2.0 * f * val.real, &s, &comp)
                    gkj = gjk.conjugate()
                    _horner2(cc, gkj, &dummy, &dz2, &dzb2, True)
                    # term (a=j, b=k): Dz[j,k] feeds grad_k, Dzb[j,k] feeds grad_j
                    # term (a=k, b=j): Dz[k,j] feeds grad_j, Dzb[k,j] feeds grad_k
                    for i in range(d):
                        grad[k, i] += 2.0 * f * (dz * v[j, i] + dzb2 * v[j, i])
                        grad[j, i] += 2.0 * f * (dzb * v[k, i] + dz2 * v[k, i])
    return s + comp, grad_arr
