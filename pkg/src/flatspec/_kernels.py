"""Bit-sliced flat counting for exhaustive searches over functions with n <= 6.

Truth tables live in one uint64. Flatness under an assignment is decided by the
balance criterion: for every fixing of the I-variables, and every nonzero shift
d over the free variables, f(x) + f(x+d) + <d & R_N, x> must be balanced.
"""

from __future__ import annotations

import numba as nb
import numpy as np


@nb.njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


def tables_for(n: int):
    """Constant bit masks used by the kernel."""
    size = 1 << n
    x = np.arange(size)
    low = np.zeros(n, dtype=np.uint64)
    for i in range(n):
        low[i] = sum(1 << int(p) for p in x[(x >> i) & 1 == 0])
    linear = np.zeros(size, dtype=np.uint64)
    for v in range(size):
        par = np.array([bin(p & v).count("1") & 1 for p in x])
        linear[v] = sum(1 << int(p) for p in x[par == 1])
    fibers = np.zeros(size * size, dtype=np.uint64)
    for s in range(size):
        for c in range(size):
            if c & ~s == 0:
                fibers[s * size + c] = sum(1 << int(p) for p in x[(x & s) == c])
    return low, linear, fibers


@nb.njit(cache=True)
def _count_one(t, n, low, linear, fibers, i_masks, n_masks, deriv):
    size = 1 << n
    full = size - 1
    shifted = np.empty(size, dtype=np.uint64)
    shifted[0] = t
    for d in range(1, size):
        i = 0
        while not (d >> i) & 1:
            i += 1
        prev = shifted[d & (d - 1)]
        s = np.uint64(1 << i)
        m = low[i]
        shifted[d] = ((prev & m) << s) | ((prev >> s) & m)
        deriv[d] = t ^ shifted[d]
    count = 0
    for a in range(i_masks.shape[0]):
        sm = i_masks[a]
        nm = n_masks[a]
        free = full & ~sm
        if free == 0:
            count += 1
            continue
        k = 0
        for i in range(n):
            k += (free >> i) & 1
        half = np.uint64(1 << (k - 1))
        ok = True
        d = free
        while d != 0 and ok:
            g = deriv[d] ^ linear[d & nm]
            c = sm
            while True:
                if _popcount(g & fibers[sm * size + c]) != half:
                    ok = False
                    break
                if c == 0:
                    break
                c = (c - 1) & sm
            d = (d - 1) & free
        if ok:
            count += 1
    return count


@nb.njit(cache=True)
def count_tables(tables, n, low, linear, fibers, i_masks, n_masks):
    out = np.empty(tables.shape[0], dtype=np.int64)
    deriv = np.zeros(1 << n, dtype=np.uint64)
    for j in range(tables.shape[0]):
        out[j] = _count_one(tables[j], n, low, linear, fibers, i_masks, n_masks, deriv)
    return out


@nb.njit(cache=True)
def scan_gray(base, monos, lo, hi, n, low, linear, fibers, i_masks, n_masks, keep):
    """Flat counts of base ^ XOR(monos[k] for set bits k of gray(code)), lo <= code < hi.

    Returns (max count, number of maximizers, histogram of counts, up to ``keep``
    maximizing codes in increasing order of gray code position).
    """
    deriv = np.zeros(1 << n, dtype=np.uint64)
    hist = np.zeros(i_masks.shape[0] + 1, dtype=np.int64)
    best = -1
    nbest = 0
    found = np.empty(keep, dtype=np.int64)
    nfound = 0
    g = lo ^ (lo >> 1)
    t = base
    for k in range(monos.shape[0]):
        if (g >> k) & 1:
            t ^= monos[k]
    for code in range(lo, hi):
        if code != lo:
            # gray(code) differs from gray(code-1) in the lowest set bit of code
            b = 0
            while not (code >> b) & 1:
                b += 1
            t ^= monos[b]
            g ^= 1 << b
        c = _count_one(t, n, low, linear, fibers, i_masks, n_masks, deriv)
        hist[c] += 1
        if c > best:
            best = c
            nbest = 0
            nfound = 0
        if c == best:
            nbest += 1
            if nfound < keep:
                found[nfound] = g
                nfound += 1
    return best, nbest, hist, found[:nfound]
