"""Bit-packed linear algebra over GF(2) and small extension fields.

The elimination kernel has two interchangeable backends: a compiled
Cython extension and a pure-numpy fallback, selected at import time.
Both produce the canonical reduced row echelon form, so their outputs
are bit-identical; ``BACKEND`` records which one is active.
"""

from __future__ import annotations

try:
    from . import _core as _kernel

    BACKEND = "cython"
except ImportError:  # extension not built; vectorized numpy fallback
    from . import _kernel_py as _kernel

    BACKEND = "python"

from . import _kernel_py

DEFAULT_BLOCK = 8  # column-block width of the accelerated path


def get_kernel(name: str):
    """Return a kernel module by name ('cython' or 'python')."""
    if name == "python":
        return _kernel_py
    if name == "cython":
        if BACKEND != "cython":
            raise ValueError("cython kernel is not built")
        return _kernel
    raise ValueError(f"unknown kernel {name!r}")


def rref_inplace(data, ncols, block=DEFAULT_BLOCK, progress=None, kernel=None):
    """Reduce packed rows to reduced row echelon form in place.

    Args:
        data: uint64 array (nrows, nwords), C-contiguous.
        ncols: number of valid bit columns.
        block: column-block width; 1 selects the plain elimination
            path, larger values the table-lookup accelerated path.
        progress: optional callable(cols_done, ncols, rank_so_far),
            invoked after every block.
        kernel: kernel module override (defaults to active backend).

    Returns:
        (rank, pivot_cols)
    """
    kern = _kernel if kernel is None else kernel
    nrows = data.shape[0]
    piv_cols: list[int] = []
    r0 = 0
    c0 = 0
    while c0 < ncols and r0 < nrows:
        kk = min(block, ncols - c0)
        piv = kern.stripe_rref(data, r0, c0, kk)
        piv_cols.extend(piv)
        r0 += len(piv)
        c0 += kk
        if progress is not None:
            progress(c0, ncols, r0)
    return r0, piv_cols


from .matrix import Gf2Matrix, Gf2Vector, mat_mul, rank, kernel_basis, kernel_dimension
from .field import Gf2sField, gf2s_mul

__all__ = [
    "BACKEND",
    "DEFAULT_BLOCK",
    "Gf2Matrix",
    "Gf2Vector",
    "Gf2sField",
    "gf2s_mul",
    "get_kernel",
    "kernel_basis",
    "kernel_dimension",
    "mat_mul",
    "rank",
    "rref_inplace",
]
