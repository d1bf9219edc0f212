"""Pure-numpy elimination kernel for bit-packed GF(2) matrices.

Matrices are stored as C-contiguous ``uint64`` arrays of shape
``(nrows, nwords)`` with bits packed little-endian inside each word.
The single entry point, :func:`stripe_rref`, reduces one block of
columns to reduced-row-echelon shape across all rows.  Blocks of width
``k > 1`` use a table of the 2^p pivot-row combinations ("four
Russians" style); width 1 degenerates to plain Gaussian elimination.
Both widths produce the canonical RREF, so results are bit-identical.
"""

from __future__ import annotations

import numpy as np

_U1 = np.uint64(1)


def stripe_rref(data: np.ndarray, row0: int, c0: int, kk: int) -> list[int]:
    """Process columns [c0, c0+kk) in place; return the pivot columns found.

    On return the pivot rows occupy ``row0 .. row0+p-1`` (in column
    order), every other row has zeros in the pivot columns, and the
    pivot rows form an identity pattern on those columns.
    """
    nrows, nwords = data.shape
    if nrows == 0 or kk <= 0:
        return []

    # Gather the stripe bits of every row into one word per row.
    s = np.zeros(nrows, dtype=np.uint64)
    for j in range(kk):
        c = c0 + j
        bits = (data[:, c >> 6] >> np.uint64(c & 63)) & _U1
        s |= bits << np.uint64(j)

    # Identify pivots on the cheap k-bit residuals.  The residual of a
    # row is its stripe pattern reduced by the pivots chosen so far;
    # the pivot for column j is the lowest eligible row whose residual
    # has bit j set.
    eligible = np.zeros(nrows, dtype=bool)
    eligible[row0:] = True
    piv_cols: list[int] = []
    piv_rows: list[int] = []
    for j in range(kk):
        has = ((s >> np.uint64(j)) & _U1).astype(bool)
        cand = np.nonzero(has & eligible)[0]
        if cand.size == 0:
            continue
        i = int(cand[0])
        t = s[i]
        s[has] ^= t
        eligible[i] = False
        piv_cols.append(c0 + j)
        piv_rows.append(i)

    p = len(piv_cols)
    if p == 0:
        return []

    # Move pivot rows to the top of the unreduced block, column order.
    for idx in range(p):
        target = row0 + idx
        src = piv_rows[idx]
        if src != target:
            tmp = data[target].copy()
            data[target] = data[src]
            data[src] = tmp
            for later in range(idx + 1, p):
                if piv_rows[later] == target:
                    piv_rows[later] = src

    # Gauss-Jordan among the pivot rows: identity on the pivot columns.
    for a in range(p):
        ca = piv_cols[a]
        w, b = ca >> 6, np.uint64(ca & 63)
        for r in range(p):
            if r != a and (int(data[row0 + r, w]) >> (ca & 63)) & 1:
                data[row0 + r] ^= data[row0 + a]

    # Table of all 2^p combinations of the pivot rows.
    table = np.zeros((1 << p, nwords), dtype=np.uint64)
    for j in range(p):
        table[1 << j : 2 << j] = table[: 1 << j] ^ data[row0 + j]

    # One lookup-XOR clears all pivot-column bits of every other row.
    idx = np.zeros(nrows, dtype=np.intp)
    for j, c in enumerate(piv_cols):
        bits = ((data[:, c >> 6] >> np.uint64(c & 63)) & _U1).astype(np.intp)
        idx |= bits << j
    idx[row0 : row0 + p] = 0
    data ^= table[idx]
    return piv_cols
