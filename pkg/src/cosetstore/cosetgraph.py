"""Cayley graphs over F_2^r and the storage operator I + A.

The storage code of a coset graph is the GF(2) kernel of the adjacency
matrix with self-loops added.  This module computes its exact rank and
rate, the integer spectrum, the structural-condition checks, the CSS
code dimension, and the kernel-decomposition identity used for the
augmented extended-Hamming family.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import codes as codes_mod
from .codes import BinaryCode, CodeFamilyId, build_code
from .errors import CapacityError
from .gf2 import BACKEND, Gf2Matrix, Gf2Vector

MAX_R = 26  # beyond this even O(N) spectral work is infeasible

_U1 = np.uint64(1)


def effective_set(gens, include_zero: bool = False) -> frozenset[int]:
    """Elements of odd multiplicity; duplicate pairs cancel mod 2."""
    counts = Counter(gens)
    if include_zero:
        counts[0] += 1
    return frozenset(g for g, c in counts.items() if c & 1)


@dataclass(frozen=True)
class GeneratorSet:
    """Multiset of r-bit generators, optionally with 0 adjoined."""

    r: int
    gens: tuple[int, ...]
    include_zero: bool = False

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("negative dimension")
        for g in self.gens:
            if not 0 <= g < (1 << self.r):
                raise ValueError(f"generator {g} has more than {self.r} bits")
        object.__setattr__(self, "gens", tuple(self.gens))

    def effective(self) -> frozenset[int]:
        return effective_set(self.gens, self.include_zero)


@dataclass(frozen=True)
class CosetGraphHandle:
    """Cayley graph handle; vertex count N = 2^r is derived."""

    gens: GeneratorSet
    code: BinaryCode | None = None
    label: str = ""

    @property
    def r(self) -> int:
        return self.gens.r

    @property
    def N(self) -> int:
        return 1 << self.gens.r

    def effective(self) -> frozenset[int]:
        return self.gens.effective()

    def nonzero_effective(self) -> frozenset[int]:
        return self.effective() - {0}

    @property
    def degree(self) -> int:
        """Graph degree ignoring loops."""
        return len(self.nonzero_effective())

    @property
    def has_loop(self) -> bool:
        return 0 in self.effective()


def from_code(code: BinaryCode) -> CosetGraphHandle:
    """Coset-graph handle with generators = columns of H plus 0."""
    if code.r > MAX_R:
        raise CapacityError(f"r = {code.r} exceeds operator capacity {MAX_R}")
    gens = GeneratorSet(code.r, tuple(code.column_ints()), include_zero=True)
    return CosetGraphHandle(gens, code=code, label=code.label)


def from_family(fam: CodeFamilyId) -> CosetGraphHandle:
    return from_code(build_code(fam))


def loopless(graph: CosetGraphHandle) -> CosetGraphHandle:
    """Same graph with the self-loop stripped (0 removed from the set)."""
    if not graph.has_loop:
        return graph
    gens = GeneratorSet(graph.r, tuple(sorted(graph.nonzero_effective())))
    return CosetGraphHandle(gens, code=graph.code, label=graph.label)


def adjacency_row(graph: CosetGraphHandle, x: int) -> Gf2Vector:
    """Row x of the operator: 1s at x + s over the effective generators."""
    if not 0 <= x < graph.N:
        raise ValueError("vertex out of range")
    v = Gf2Vector(graph.N)
    for s in graph.effective():
        y = x ^ s
        v.data[y >> 6] ^= _U1 << np.uint64(y & 63)
    return v


def operator_matrix(r: int, eff) -> Gf2Matrix:
    """Packed N x N operator of the Cayley graph with generator set eff."""
    N = 1 << r
    m = Gf2Matrix(N, N)
    x = np.arange(N)
    for s in eff:
        y = x ^ s
        m.data[x, y >> 6] ^= _U1 << (y & 63).astype(np.uint64)
    return m


@dataclass
class StorageReport:
    """Exact storage-code parameters of one coset graph."""

    label: str
    n: int  # graph degree counting the loop convention of the source
    r: int
    N: int
    rank_tilde: int
    K: int
    rate: Fraction
    triangle_free: bool
    elapsed: float
    backend: str = BACKEND
    accelerated: bool = True
    conditions: dict | None = None

    def rate_unreduced(self) -> str:
        return f"{self.K}/{self.N}"

    def rate_reduced(self) -> str:
        return f"{self.rate.numerator}/{self.rate.denominator}"

    def to_json_obj(self) -> dict:
        obj = {
            "label": self.label,
            "n": self.n,
            "r": self.r,
            "N": self.N,
            "rank": self.rank_tilde,
            "K": self.K,
            "rate": self.rate_unreduced(),
            "rate_reduced": self.rate_reduced(),
            "triangle_free": self.triangle_free,
            "elapsed_s": round(self.elapsed, 6),
            "backend": self.backend,
            "accelerated": self.accelerated,
        }
        if self.conditions is not None:
            obj["conditions"] = self.conditions
        return obj

    def to_text(self) -> str:
        lines = [
            f"label: {self.label}",
            f"n: {self.n}",
            f"r: {self.r}",
            f"N: {self.N}",
            f"rank: {self.rank_tilde}",
            f"K: {self.K}",
            f"rate: {self.rate_unreduced()} (= {self.rate_reduced()})",
            f"triangle_free: {self.triangle_free}",
            f"elapsed_s: {self.elapsed:.3f}",
            f"backend: {self.backend}",
        ]
        return "\n".join(lines) + "\n"


def triangle_free(graph: CosetGraphHandle) -> bool:
    if graph.code is not None:
        return codes_mod.distance_at_least_4(graph.code)
    gens = sorted(graph.nonzero_effective())
    gset = set(gens)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if gens[i] ^ gens[j] in gset:
                return False
    return True


def storage_report(
    graph: CosetGraphHandle,
    accelerated: bool = True,
    progress=None,
    kernel=None,
) -> StorageReport:
    t0 = time.perf_counter()
    eff = graph.effective()
    mat = operator_matrix(graph.r, eff)
    rank = mat.rank(accelerated=accelerated, progress=progress, kernel=kernel)
    del mat
    N = graph.N
    K = N - rank
    elapsed = time.perf_counter() - t0
    n = graph.code.n if graph.code is not None else graph.degree
    return StorageReport(
        label=graph.label or f"cayley(r={graph.r})",
        n=n,
        r=graph.r,
        N=N,
        rank_tilde=rank,
        K=K,
        rate=Fraction(K, N),
        triangle_free=triangle_free(graph),
        elapsed=elapsed,
        accelerated=accelerated,
    )


# -- spectrum ---------------------------------------------------------------


def _fwht(a: np.ndarray) -> np.ndarray:
    """In-place Walsh-Hadamard transform (natural/XOR ordering)."""
    n = a.size
    h = 1
    while h < n:
        a = a.reshape(-1, 2 * h)
        x = a[:, :h].copy()
        y = a[:, h:].copy()
        a[:, :h] = x + y
        a[:, h:] = x - y
        a = a.reshape(-1)
        h *= 2
    return a


def spectrum_values(graph: CosetGraphHandle) -> np.ndarray:
    """Eigenvalue at x is the signed sum over the effective generators;
    returned indexed by x (character order), not sorted."""
    if graph.r > MAX_R:
        raise CapacityError(f"r = {graph.r} exceeds capacity {MAX_R}")
    a = np.zeros(graph.N, dtype=np.int64)
    for s in graph.effective():
        a[s] = 1
    return _fwht(a)


def spectrum(graph: CosetGraphHandle) -> list[int]:
    """All N integer eigenvalues, sorted descending."""
    vals = np.sort(spectrum_values(graph))[::-1]
    return [int(v) for v in vals]


def second_eigenvalue(graph: CosetGraphHandle) -> int:
    """max |eigenvalue| excluding the trivial one at the zero character."""
    vals = spectrum_values(graph)
    if vals.size < 2:
        return 0
    return int(np.abs(vals[1:]).max())


# -- structural checks ------------------------------------------------------


def check_rate_conditions(code: BinaryCode, report: StorageReport, k_max: int = 3) -> dict:
    """Necessary high-rate conditions: parity of H rows and dual containment."""
    result: dict = {"rate": report.rate_unreduced(), "parts": []}
    ok = True
    if report.rate > Fraction(1, 2):
        n_odd = code.n % 2 == 1
        rows_even = all(code.H.row(i).weight() % 2 == 0 for i in range(code.r))
        part_ok = n_odd and rows_even
        ok = ok and part_ok
        result["parts"].append(
            {"part": "a", "threshold": "1/2", "applicable": True,
             "n_odd": n_odd, "rows_even_weight": rows_even, "pass": part_ok}
        )
    else:
        result["parts"].append(
            {"part": "a", "threshold": "1/2", "applicable": False, "pass": None}
        )
    for k in range(2, k_max + 1):
        threshold = Fraction((1 << k) - 1, 1 << k)
        if report.rate > threshold:
            contains = codes_mod.contains_dual_power(code, k)
            ok = ok and contains
            result["parts"].append(
                {"part": "b", "k": k,
                 "threshold": f"{threshold.numerator}/{threshold.denominator}",
                 "applicable": True, "contains_dual_power": contains,
                 "pass": contains}
            )
        else:
            result["parts"].append(
                {"part": "b", "k": k,
                 "threshold": f"{threshold.numerator}/{threshold.denominator}",
                 "applicable": False, "pass": None}
            )
    result["pass"] = ok
    return result


def rank_lower_bound(graph: CosetGraphHandle) -> int:
    """Best bound 2^{|B|} over coordinate subsets B whose span holds an
    odd number of effective generators (superset-parity dynamic program)."""
    r = graph.r
    if r > MAX_R:
        raise CapacityError(f"r = {r} exceeds capacity {MAX_R}")
    par = np.zeros(1 << r, dtype=np.uint8)
    for s in graph.effective():
        par[s] ^= 1
    # Subset-sum parity: par[mask] becomes parity of generators inside mask.
    view = par
    for i in range(r):
        view = view.reshape(-1, 2, 1 << i)
        view[:, 1, :] ^= view[:, 0, :]
        view = view.reshape(-1)
    best = -1
    chunk = 1 << 20
    for start in range(0, 1 << r, chunk):
        idx = np.nonzero(view[start : start + chunk])[0]
        if idx.size:
            masks = idx + start
            pc = np.zeros(masks.size, dtype=np.int64)
            m = masks.astype(np.int64)
            while m.any():
                pc += m & 1
                m >>= 1
            best = max(best, int(pc.max()))
    return 0 if best < 0 else 1 << best


@dataclass
class CssDimension:
    N: int
    rank: int
    k_quantum: int


def css_dimension(graph: CosetGraphHandle, sample_pairs: int = 64, seed: int = 0) -> CssDimension:
    """Quantum code dimension N - 2 rank(A) for a self-orthogonal operator."""
    eff = graph.effective()
    if len(eff) % 2 != 0:
        raise ValueError("not self-orthogonal: effective generator set has odd size")
    # Row inner products: <row_x, row_y> = |(x+S) ∩ (y+S)| mod 2.
    effset = set(eff)
    rng = np.random.default_rng(seed)
    N = graph.N
    for _ in range(sample_pairs):
        x = int(rng.integers(N))
        y = int(rng.integers(N))
        if x == y:
            continue
        z = x ^ y
        overlap = sum(1 for s in effset if (s ^ z) in effset)
        if overlap % 2 != 0:
            raise AssertionError("self-orthogonality sample check failed")
    # Diagonal entries are |S| mod 2 = 0 by the parity test above.
    mat = operator_matrix(graph.r, eff)
    rank = mat.rank()
    return CssDimension(N=N, rank=rank, k_quantum=N - 2 * rank)


# -- kernel decomposition ---------------------------------------------------


@dataclass
class KernelDecomposition:
    dim_ker_A: int
    dim_kerA1_cap_kerA: int
    dim_imA_cap_imA0_ker: int
    total: int
    dim_ker_full: int
    equal: bool
    duplicate_semantics_differ: bool


def verify_kernel_decomposition(gens: GeneratorSet) -> KernelDecomposition:
    """Split the last coordinate off the generators and verify that the
    three half-size kernel/image terms add up to the full kernel dimension."""
    r1 = gens.r
    if r1 > 14:
        raise CapacityError("decomposition check limited to r+1 <= 14")
    if r1 < 1:
        raise ValueError("need at least one coordinate")
    r = r1 - 1
    half_mask = (1 << r) - 1
    multiset = list(gens.gens) + ([0] if gens.include_zero else [])
    s0 = [g & half_mask for g in multiset if not (g >> r) & 1]
    s1 = [g & half_mask for g in multiset if (g >> r) & 1]
    eff0 = effective_set(s0)
    eff1 = effective_set(s1)
    eff_sum = eff0 ^ eff1  # A = A0 + A1 over GF(2)

    counts = Counter(s0 + s1)
    dup_differ = any(c >= 2 and c % 2 == 0 for c in counts.values())

    N = 1 << r
    A = operator_matrix(r, eff_sum)
    A1 = operator_matrix(r, eff1)
    A0 = operator_matrix(r, eff0)

    rank_A = A.rank()
    dim_ker_A = N - rank_A
    stacked = A.vstack(A1)
    dim_int = N - stacked.rank()

    ker_basis = A.kernel_basis()
    W = ker_basis @ A0  # rows: A0 applied to kernel basis (A0 symmetric)
    rank_W = W.rank()
    rank_union = A.vstack(W).rank()
    dim_im_int = rank_A + rank_W - rank_union

    total = dim_ker_A + dim_int + dim_im_int

    full = operator_matrix(r1, gens.effective())
    dim_ker_full = (1 << r1) - full.rank()

    return KernelDecomposition(
        dim_ker_A=dim_ker_A,
        dim_kerA1_cap_kerA=dim_int,
        dim_imA_cap_imA0_ker=dim_im_int,
        total=total,
        dim_ker_full=dim_ker_full,
        equal=total == dim_ker_full,
        duplicate_semantics_differ=dup_differ,
    )


# -- closed forms -----------------------------------------------------------


@dataclass
class ClosedFormCheck:
    family: str
    N: int
    predicted_K: int
    computed_K: int
    match: bool


def closed_form_check(fam: CodeFamilyId, report: StorageReport | None = None) -> ClosedFormCheck:
    """Compare the computed kernel dimension to the family's closed form."""
    if fam.kind == "repetition":
        n = fam.param
        if n < 5 or n % 2 == 0:
            raise ValueError("closed form needs odd repetition length >= 5")
        predicted = (1 << (n - 2)) + (1 << ((n - 3) // 2))
    elif fam.kind == "augmented_hr":
        r = fam.param
        if r < 4:
            raise ValueError("closed form needs r >= 4")
        N = 1 << (r + 1)
        predicted = 3 * N // 4 - N // (1 << r)
    else:
        raise ValueError(f"no closed form for family {fam.kind!r}")
    if report is None:
        report = storage_report(from_family(fam))
    return ClosedFormCheck(
        family=str(fam),
        N=report.N,
        predicted_K=predicted,
        computed_K=report.K,
        match=predicted == report.K,
    )
