# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled single-pass kernel for reverse run lengths."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def beta_parts_seq(y, ell, plus, minus, long m):
    cdef cnp.int64_t[::1] yv = np.ascontiguousarray(y, dtype=np.int64)
    cdef cnp.int64_t[::1] lv = np.ascontiguousarray(ell, dtype=np.int64)
    cdef cnp.uint8_t[::1] pv = np.ascontiguousarray(plus, dtype=np.uint8)
    cdef cnp.uint8_t[::1] mv = np.ascontiguousarray(minus, dtype=np.uint8)
    cdef Py_ssize_t K = lv.shape[0] - 1
    cdef Py_ssize_t L = lv[K]
    if yv.shape[0] < L:
        raise ValueError("y word shorter than ell(K)")
    b0_arr = np.zeros(K + 1, dtype=np.int64)
    bT_arr = np.zeros(K + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] b0 = b0_arr
    cdef cnp.int64_t[::1] bT = bT_arr
    cdef Py_ssize_t k, h = 0, l
    cdef Py_ssize_t last0 = 0, lastT = 0
    cdef cnp.int64_t v, top = m - 1
    for k in range(1, K + 1):
        l = lv[k]
        while h < l:
            h += 1
            v = yv[h - 1]
            if v != 0:
                last0 = h
            if v != top:
                lastT = h
        if last0 > 0 and pv[yv[last0 - 1]]:
            b0[k] = l - (k if k > last0 else last0)
        if lastT > 0 and mv[yv[lastT - 1]]:
            bT[k] = l - (k if k > lastT else lastT)
    return b0_arr, bT_arr
