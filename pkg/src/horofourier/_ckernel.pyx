# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled tensor exponential sum; same contract as ``_pykernel.tensor_sum``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, cos, sin

cnp.import_array()


def tensor_sum(double[::1] base, double[::1] d, double[:, ::1] W,
               double complex[::1] s_rows, double complex[::1] s_cols,
               double[::1] shift):
    cdef Py_ssize_t N = base.shape[0], R = s_rows.shape[0]
    cdef Py_ssize_t C = s_cols.shape[0], K = W.shape[0]
    cdef Py_ssize_t j, r, c, k, off
    acc_re = np.zeros(R * C * K)
    acc_im = np.zeros(R * C * K)
    M_arr = np.zeros((R, C))
    cdef double[::1] Sre = acc_re, Sim = acc_im
    cdef double[:, ::1] M = M_arr
    cdef double[::1] are = np.empty(R), aim = np.empty(R), amag = np.empty(R)
    cdef double[::1] bre = np.empty(C), bim = np.empty(C), bmag = np.empty(C)
    cdef double[::1] wk = np.empty(K)
    cdef double[::1] pre_c = np.empty(C), pim_c = np.empty(C)
    cdef double w
    cdef double mag, ph, ar, ai
    cdef bint unit_cols = True
    for c in range(C):
        if s_cols[c].real != 0.0:
            unit_cols = False
    for j in range(N):
        for r in range(R):
            mag = exp(base[j] - shift[r] + s_rows[r].real * d[j])
            ph = s_rows[r].imag * d[j]
            are[r] = mag * cos(ph)
            aim[r] = mag * sin(ph)
            amag[r] = mag
        for c in range(C):
            mag = exp(s_cols[c].real * d[j])
            ph = s_cols[c].imag * d[j]
            bre[c] = mag * cos(ph)
            bim[c] = mag * sin(ph)
            bmag[c] = mag
        for k in range(K):
            wk[k] = W[k, j]
        for r in range(R):
            ar = are[r]
            ai = aim[r]
            if unit_cols:
                M[r, 0] += amag[r]
            else:
                for c in range(C):
                    M[r, c] += amag[r] * bmag[c]
            for c in range(C):
                pre_c[c] = ar * bre[c] - ai * bim[c]
                pim_c[c] = ar * bim[c] + ai * bre[c]
            for k in range(K):
                w = wk[k]
                off = (r * K + k) * C
                for c in range(C):
                    Sre[off + c] += pre_c[c] * w
                    Sim[off + c] += pim_c[c] * w
    if unit_cols:
        M_arr[:, 1:] = M_arr[:, :1]
    S = (acc_re + 1j * acc_im).reshape(R, K, C).transpose(0, 2, 1).copy()
    return S, M_arr
