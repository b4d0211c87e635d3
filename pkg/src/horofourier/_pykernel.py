"""Reference numpy implementation of the tensor exponential sum.

For nodes ``j`` with log-weights ``base[j]``, exponent slopes ``d[j]`` and
mode weights ``W[k, j]``, and spectral parameters ``s = s_rows[r] + s_cols[c]``::

    S[r, c, k] = sum_j exp(base[j] - shift[r] + s * d[j]) * W[k, j]
    M[r, c]    = sum_j |exp(base[j] - shift[r] + s * d[j])|

The exponential factorizes, so only ``R + C`` exponentials per node are needed
and the contraction is a few matrix products.
"""
import numpy as np


def tensor_sum(base, d, W, s_rows, s_cols, shift):
    A = np.exp((base[None, :] - shift[:, None]) + s_rows[:, None] * d[None, :])
    B = np.exp(s_cols[:, None] * d[None, :])
    Bt = B.T
    S = np.empty((A.shape[0], B.shape[0], W.shape[0]), dtype=complex)
    for k in range(W.shape[0]):
        S[:, :, k] = (A * W[k][None, :]) @ Bt
    if np.all(s_cols.real == 0):
        # |B| == 1: the modulus sum depends on the row only
        M = np.repeat(np.abs(A).sum(axis=1)[:, None], B.shape[0], axis=1)
    else:
        M = np.abs(A) @ np.abs(Bt)
    return S, M
