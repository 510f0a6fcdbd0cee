"""Numpy implementations of the hot loops (used when the compiled module is absent)."""

import numpy as np


def beta_parts_seq(y, ell, plus, minus, m):
    """Reverse run-length parts for every rank ``k = 0..K``.

    ``y`` holds ``y_1 .. y_L`` (L >= ell[K]); ``ell`` is indexed by rank;
    ``plus[v]`` / ``minus[v]`` flag digits whose row below / above is occupied.
    Returns ``(beta_zero, beta_top)`` int64 arrays of length ``K + 1``.
    """
    y = np.asarray(y, dtype=np.int64)
    ell = np.asarray(ell, dtype=np.int64)
    K = ell.shape[0] - 1
    L = int(ell[-1])
    if y.shape[0] < L:
        raise ValueError("y word shorter than ell(K)")
    yy = np.empty(L + 1, dtype=np.int64)
    yy[0] = 0
    yy[1:] = y[:L]
    pos = np.arange(L + 1, dtype=np.int64)
    last0 = np.maximum.accumulate(np.where(yy != 0, pos, 0))
    lastT = np.maximum.accumulate(np.where(yy != m - 1, pos, 0))
    last0[0] = 0
    lastT[0] = 0
    ks = np.arange(K + 1, dtype=np.int64)
    plus = np.asarray(plus, dtype=bool)
    minus = np.asarray(minus, dtype=bool)
    h0 = last0[ell]
    hT = lastT[ell]
    ok0 = (h0 > 0) & plus[yy[h0]]
    okT = (hT > 0) & minus[yy[hT]]
    b0 = np.where(ok0, ell - np.maximum(ks, h0), 0)
    bT = np.where(okT, ell - np.maximum(ks, hT), 0)
    b0[0] = 0
    bT[0] = 0
    return b0, bT
