"""Compiled twin of _kernels: same signatures, typed per-step loops."""

import numpy as np

cimport cython
cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

BACKEND = "compiled"


@cython.boundscheck(False)
@cython.wraparound(False)
def frenet_integrate(kappa_half, tau_half, y0, double h, int n_steps):
    """See _kernels.frenet_integrate."""
    cdef const double[::1] kh = np.ascontiguousarray(kappa_half, dtype=np.float64)
    cdef const double[::1] qh = np.ascontiguousarray(tau_half, dtype=np.float64)
    y_arr = np.array(y0, dtype=np.float64)
    if y_arr.shape != (4, 3):
        raise ValueError("state must be (4, 3): alpha, t, n, b")
    out_arr = np.empty((n_steps + 1, 4, 3), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr
    cdef double[12] y, s1, s2, s3, d1, d2, d3, d4
    cdef double k0, km, k1, q0, qm, q1, nt, nn, nb, dtn, dbt, dbn
    cdef int i, j
    cdef double[:, ::1] y0v = y_arr
    for j in range(4):
        for i in range(3):
            y[3 * j + i] = y0v[j, i]
            out[0, j, i] = y0v[j, i]

    for i in range(n_steps):
        k0 = kh[2 * i]; km = kh[2 * i + 1]; k1 = kh[2 * i + 2]
        q0 = qh[2 * i]; qm = qh[2 * i + 1]; q1 = qh[2 * i + 2]
        _rhs(k0, q0, y, d1)
        for j in range(12):
            s1[j] = y[j] + 0.5 * h * d1[j]
        _rhs(km, qm, s1, d2)
        for j in range(12):
            s2[j] = y[j] + 0.5 * h * d2[j]
        _rhs(km, qm, s2, d3)
        for j in range(12):
            s3[j] = y[j] + h * d3[j]
        _rhs(k1, q1, s3, d4)
        for j in range(12):
            y[j] = y[j] + (h / 6.0) * (d1[j] + 2.0 * d2[j] + 2.0 * d3[j] + d4[j])
        # modified Gram-Schmidt on rows t, n, b
        nt = sqrt(y[3] * y[3] + y[4] * y[4] + y[5] * y[5])
        for j in range(3):
            y[3 + j] /= nt
        dtn = y[6] * y[3] + y[7] * y[4] + y[8] * y[5]
        for j in range(3):
            y[6 + j] -= dtn * y[3 + j]
        nn = sqrt(y[6] * y[6] + y[7] * y[7] + y[8] * y[8])
        for j in range(3):
            y[6 + j] /= nn
        dbt = y[9] * y[3] + y[10] * y[4] + y[11] * y[5]
        dbn = y[9] * y[6] + y[10] * y[7] + y[11] * y[8]
        for j in range(3):
            y[9 + j] -= dbt * y[3 + j] + dbn * y[6 + j]
        nb = sqrt(y[9] * y[9] + y[10] * y[10] + y[11] * y[11])
        for j in range(3):
            y[9 + j] /= nb
        for j in range(4):
            out[i + 1, j, 0] = y[3 * j]
            out[i + 1, j, 1] = y[3 * j + 1]
            out[i + 1, j, 2] = y[3 * j + 2]
    return out_arr


@cython.boundscheck(False)
@cython.wraparound(False)
cdef inline void _rhs(double k, double q, double* y, double* d) nogil:
    cdef int j
    for j in range(3):
        d[j] = y[3 + j]                       # alpha' = t
        d[3 + j] = k * y[6 + j]               # t' = kappa n
        d[6 + j] = -k * y[3 + j] + q * y[9 + j]
        d[9 + j] = -q * y[6 + j]


@cython.boundscheck(False)
@cython.wraparound(False)
def double_reflection(points, tangents, normals0, eta, bint project_position=False):
    """See _kernels.double_reflection."""
    cdef const double[:, ::1] pts = np.ascontiguousarray(points, dtype=np.float64)
    cdef const double[:, ::1] tg = np.ascontiguousarray(tangents, dtype=np.float64)
    cdef const double[::1] et = np.ascontiguousarray(eta, dtype=np.float64)
    nrm_arr = np.atleast_2d(np.array(normals0, dtype=np.float64))
    cdef double[:, ::1] nrm = np.ascontiguousarray(nrm_arr)
    cdef Py_ssize_t n_samp = pts.shape[0]
    cdef Py_ssize_t m = pts.shape[1]
    cdef Py_ssize_t k = nrm.shape[0]
    out_arr = np.empty((n_samp, k, m), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr
    v1_arr = np.empty(m, dtype=np.float64)
    th_arr = np.empty(m, dtype=np.float64)
    v2_arr = np.empty(m, dtype=np.float64)
    vv_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] v1 = v1_arr, th = th_arr, v2 = v2_arr, v = vv_arr
    cdef double c1, c2, e1, e2, cf, cq, ct, nn
    cdef bint ok1, ok2
    cdef Py_ssize_t i, j, a

    for j in range(k):
        for a in range(m):
            out[0, j, a] = nrm[j, a]

    for i in range(n_samp - 1):
        c1 = 0.0; e1 = 0.0
        for a in range(m):
            v1[a] = pts[i + 1, a] - pts[i, a]
            c1 += et[a] * v1[a] * v1[a]
            e1 += v1[a] * v1[a]
        ok1 = fabs(c1) > 1e-14 * (e1 + 1e-300)
        if ok1:
            cf = 0.0
            for a in range(m):
                cf += et[a] * tg[i, a] * v1[a]
            cf = 2.0 * cf / c1
            for a in range(m):
                th[a] = tg[i, a] - cf * v1[a]
        else:
            for a in range(m):
                th[a] = tg[i, a]
        c2 = 0.0; e2 = 0.0
        for a in range(m):
            v2[a] = tg[i + 1, a] - th[a]
            c2 += et[a] * v2[a] * v2[a]
            e2 += v2[a] * v2[a]
        ok2 = fabs(c2) > 1e-14 * (e2 + 1e-300)
        for j in range(k):
            for a in range(m):
                v[a] = nrm[j, a]
            if ok1:
                cf = 0.0
                for a in range(m):
                    cf += et[a] * v[a] * v1[a]
                cf = 2.0 * cf / c1
                for a in range(m):
                    v[a] -= cf * v1[a]
            if ok2:
                cf = 0.0
                for a in range(m):
                    cf += et[a] * v[a] * v2[a]
                cf = 2.0 * cf / c2
                for a in range(m):
                    v[a] -= cf * v2[a]
            if project_position:
                cq = 0.0; cf = 0.0
                for a in range(m):
                    cq += et[a] * pts[i + 1, a] * pts[i + 1, a]
                    cf += et[a] * v[a] * pts[i + 1, a]
                if fabs(cq) > 1e-300:
                    cf = cf / cq
                    for a in range(m):
                        v[a] -= cf * pts[i + 1, a]
            ct = 0.0; cf = 0.0
            for a in range(m):
                ct += et[a] * tg[i + 1, a] * tg[i + 1, a]
                cf += et[a] * v[a] * tg[i + 1, a]
            if fabs(ct) > 1e-300:
                cf = cf / ct
                for a in range(m):
                    v[a] -= cf * tg[i + 1, a]
            nn = 0.0
            for a in range(m):
                nn += et[a] * v[a] * v[a]
            if fabs(nn) > 1e-300:
                nn = sqrt(fabs(nn))
                for a in range(m):
                    v[a] /= nn
            for a in range(m):
                nrm[j, a] = v[a]
                out[i + 1, j, a] = v[a]
    return out_arr
