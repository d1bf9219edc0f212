# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled elimination kernel for bit-packed GF(2) matrices.

Same contract as ``_kernel_py.stripe_rref``: reduce one column block to
reduced-row-echelon shape across all rows of a (nrows, nwords) uint64
array, bits little-endian within words.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.uint64_t u64


def stripe_rref(cnp.ndarray[u64, ndim=2, mode="c"] arr,
                Py_ssize_t row0, Py_ssize_t c0, int kk):
    cdef Py_ssize_t nrows = arr.shape[0]
    cdef Py_ssize_t nwords = arr.shape[1]
    if nrows == 0 or kk <= 0:
        return []
    cdef u64[:, ::1] d = arr

    cdef cnp.ndarray[u64, ndim=1] s_arr = np.zeros(nrows, dtype=np.uint64)
    cdef u64[::1] s = s_arr
    cdef Py_ssize_t i, j, w, a, r, c, target, src, later
    cdef u64 t, bit, tmp

    for i in range(nrows):
        t = 0
        for j in range(kk):
            c = c0 + j
            t |= ((d[i, c >> 6] >> (c & 63)) & 1) << j
        s[i] = t

    cdef cnp.ndarray[cnp.uint8_t, ndim=1] chosen_arr = np.zeros(nrows, dtype=np.uint8)
    cdef cnp.uint8_t[::1] chosen = chosen_arr
    piv_cols = []
    piv_rows = []
    cdef Py_ssize_t found
    for j in range(kk):
        found = -1
        for i in range(row0, nrows):
            if not chosen[i] and ((s[i] >> j) & 1):
                found = i
                break
        if found < 0:
            continue
        t = s[found]
        for i in range(nrows):
            if (s[i] >> j) & 1:
                s[i] ^= t
        chosen[found] = 1
        piv_cols.append(c0 + j)
        piv_rows.append(found)

    cdef Py_ssize_t p = len(piv_cols)
    if p == 0:
        return []

    cdef cnp.ndarray[cnp.intp_t, ndim=1] prow_arr = np.array(piv_rows, dtype=np.intp)
    cdef cnp.intp_t[::1] prow = prow_arr
    cdef cnp.ndarray[cnp.intp_t, ndim=1] pcol_arr = np.array(piv_cols, dtype=np.intp)
    cdef cnp.intp_t[::1] pcol = pcol_arr

    # Swap pivot rows into positions row0..row0+p-1.
    for a in range(p):
        target = row0 + a
        src = prow[a]
        if src != target:
            for w in range(nwords):
                tmp = d[target, w]
                d[target, w] = d[src, w]
                d[src, w] = tmp
            for later in range(a + 1, p):
                if prow[later] == target:
                    prow[later] = src

    # Gauss-Jordan among pivot rows.
    for a in range(p):
        c = pcol[a]
        for r in range(p):
            if r != a and ((d[row0 + r, c >> 6] >> (c & 63)) & 1):
                for w in range(nwords):
                    d[row0 + r, w] ^= d[row0 + a, w]

    # Combination table over the pivot rows.
    cdef cnp.ndarray[u64, ndim=2, mode="c"] table_arr = \
        np.zeros((1 << p, nwords), dtype=np.uint64)
    cdef u64[:, ::1] table = table_arr
    cdef Py_ssize_t m, half
    for j in range(p):
        half = 1 << j
        for m in range(half):
            for w in range(nwords):
                table[half + m, w] = table[m, w] ^ d[row0 + j, w]

    # Clear the pivot columns of every non-pivot row.
    cdef Py_ssize_t idx
    for i in range(nrows):
        if row0 <= i < row0 + p:
            continue
        idx = 0
        for j in range(p):
            c = pcol[j]
            idx |= ((d[i, c >> 6] >> (c & 63)) & 1) << j
        if idx:
            for w in range(nwords):
                d[i, w] ^= table[idx, w]
    return piv_cols
