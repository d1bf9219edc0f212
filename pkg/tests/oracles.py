"""Independent reference implementations used to cross-check the
bit-packed fast paths.  Everything here is deliberately naive: dense
uint8 arrays, explicit loops, brute-force search."""

from __future__ import annotations

import itertools

import numpy as np


def naive_rank(bits: np.ndarray) -> int:
    """GF(2) rank by textbook Gaussian elimination on a uint8 matrix."""
    a = np.array(bits, dtype=np.uint8) & 1
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        piv = None
        for row in range(rank, nrows):
            if a[row, col]:
                piv = row
                break
        if piv is None:
            continue
        a[[rank, piv]] = a[[piv, rank]]
        for row in range(nrows):
            if row != rank and a[row, col]:
                a[row] ^= a[rank]
        rank += 1
        if rank == nrows:
            break
    return rank


def naive_rref(bits: np.ndarray) -> np.ndarray:
    """Reduced row echelon form over GF(2), dense uint8."""
    a = np.array(bits, dtype=np.uint8) & 1
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        piv = None
        for row in range(rank, nrows):
            if a[row, col]:
                piv = row
                break
        if piv is None:
            continue
        a[[rank, piv]] = a[[piv, rank]]
        for row in range(nrows):
            if row != rank and a[row, col]:
                a[row] ^= a[rank]
        rank += 1
    return a


def naive_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """GF(2) matrix product on dense uint8 arrays."""
    return (np.array(a, dtype=np.uint8) @ np.array(b, dtype=np.uint8)) & 1


def naive_kernel_dim(bits: np.ndarray) -> int:
    return bits.shape[1] - naive_rank(bits)


def enumerate_kernel(bits: np.ndarray) -> list[np.ndarray]:
    """All kernel vectors of a uint8 matrix, brute force (ncols <= 20)."""
    a = np.array(bits, dtype=np.uint8) & 1
    ncols = a.shape[1]
    assert ncols <= 20
    out = []
    for x in range(1 << ncols):
        v = np.array([(x >> i) & 1 for i in range(ncols)], dtype=np.uint8)
        if not ((a @ v) & 1).any():
            out.append(v)
    return out


def brute_min_distance(bits: np.ndarray) -> int:
    """Minimum nonzero weight in the kernel of a parity-check matrix."""
    best = None
    for v in enumerate_kernel(bits):
        w = int(v.sum())
        if w and (best is None or w < best):
            best = w
    assert best is not None
    return best


def brute_independent_set(n: int, edges) -> int:
    """alpha(G) by checking all vertex subsets (n <= 20)."""
    assert n <= 20
    adj = [[False] * n for _ in range(n)]
    for u, v in edges:
        adj[u][v] = adj[v][u] = True
    best = 0
    for mask in range(1 << n):
        verts = [v for v in range(n) if (mask >> v) & 1]
        if len(verts) <= best:
            continue
        if all(not adj[u][v] for u, v in itertools.combinations(verts, 2)):
            best = len(verts)
    return best


def brute_matching(n: int, edges) -> int:
    """Maximum matching size by memoized recursion over vertex subsets."""
    assert n <= 20
    nbrs = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    memo = {}

    def rec(mask: int) -> int:
        if not mask:
            return 0
        if mask in memo:
            return memo[mask]
        v = (mask & -mask).bit_length() - 1
        best = rec(mask & ~(1 << v))
        for u in nbrs[v]:
            if (mask >> u) & 1:
                best = max(best, 1 + rec(mask & ~(1 << v) & ~(1 << u)))
        memo[mask] = best
        return best

    return rec((1 << n) - 1)


def dense_spectrum(n: int, edges) -> np.ndarray:
    """Adjacency eigenvalues (ascending) via the symmetric eigensolver."""
    a = np.zeros((n, n))
    for u, v in edges:
        a[u, v] = a[v, u] = 1.0
    return np.linalg.eigvalsh(a)


def cayley_adjacency_bits(r: int, eff) -> np.ndarray:
    """Dense uint8 operator of a Cayley graph over F_2^r."""
    N = 1 << r
    a = np.zeros((N, N), dtype=np.uint8)
    for x in range(N):
        for s in eff:
            a[x, x ^ s] ^= 1
    return a
