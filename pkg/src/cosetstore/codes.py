"""Binary linear codes given by parity-check matrices.

Covers the named constructor families, duals, Schur products of the
dual, and the distance tests needed for triangle-freeness of the
associated coset graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DimensionError
from .gf2 import Gf2Matrix, Gf2sField

SCHUR_PENDING_CAP = 4096  # interleave reduction to bound product blow-up


@dataclass(frozen=True)
class BinaryCode:
    """[n, k] binary code defined by an r x n parity-check matrix H."""

    n: int
    r: int
    H: Gf2Matrix
    label: str = ""

    def __post_init__(self):
        if self.H.nrows != self.r or self.H.ncols != self.n:
            raise DimensionError("H shape does not match (r, n)")

    @property
    def k(self) -> int:
        return self.n - self.H.rank()

    def column_ints(self) -> list[int]:
        return self.H.column_ints()


@dataclass(frozen=True)
class CodeFamilyId:
    """Tag naming one of the built-in constructors (or a file)."""

    kind: str
    param: int | None = None
    path: str | None = None

    KINDS = ("repetition", "ext_hamming", "augmented_hr", "golay23", "bch2",
             "rm_quadratic", "from_file")

    @classmethod
    def parse(cls, text: str) -> "CodeFamilyId":
        """Parse CLI-style specs like 'repetition:5' or 'golay'."""
        name, _, arg = text.partition(":")
        name = name.strip().lower()
        aliases = {
            "repetition": "repetition",
            "rep": "repetition",
            "exthamming": "ext_hamming",
            "ext_hamming": "ext_hamming",
            "augmented": "augmented_hr",
            "augmented_hr": "augmented_hr",
            "golay": "golay23",
            "golay23": "golay23",
            "bch2": "bch2",
            "rm2": "rm_quadratic",
            "rm_quadratic": "rm_quadratic",
        }
        if name not in aliases:
            raise ValueError(f"unknown code family {name!r}")
        kind = aliases[name]
        if kind == "golay23":
            return cls(kind)
        if not arg:
            raise ValueError(f"family {name!r} needs an integer parameter")
        return cls(kind, int(arg))

    def __str__(self):
        if self.kind == "golay23":
            return "golay23"
        if self.kind == "from_file":
            return f"file:{self.path}"
        return f"{self.kind}:{self.param}"


def _matrix_from_columns(cols: list[int], nrows: int) -> Gf2Matrix:
    """Columns given as ints with bit i = entry of row i."""
    m = Gf2Matrix(nrows, len(cols))
    for j, c in enumerate(cols):
        for i in range(nrows):
            if (c >> i) & 1:
                m.set_(i, j, 1)
    return m


def repetition_code(n: int) -> BinaryCode:
    """[n, 1] repetition code, H = [I_{n-1} | all-ones column]."""
    if n < 1:
        raise ValueError("repetition length must be >= 1")
    r = n - 1
    cols = [1 << i for i in range(r)] + ([(1 << r) - 1] if r else [])
    if r == 0:
        cols = [0]
    return BinaryCode(n, r, _matrix_from_columns(cols, r), f"repetition[{n},1]")


def ext_hamming_code(m: int) -> BinaryCode:
    """Extended Hamming code of length 2^m: columns are all (v, 1)."""
    if m < 2:
        raise ValueError("extended Hamming needs m >= 2")
    n = 1 << m
    cols = []
    for v in range(n):
        c = 0
        for i in range(m):
            # row i displays bit (m-1-i) of the label, most significant first
            if (v >> (m - 1 - i)) & 1:
                c |= 1 << i
        c |= 1 << m
        cols.append(c)
    return BinaryCode(n, m + 1, _matrix_from_columns(cols, m + 1),
                      f"ext-hamming[{n},{n - m - 1}]")


def augmented_hr_code(r: int, weight2_col: int | None = None) -> BinaryCode:
    """Extended-Hamming parity check plus a zero column and a weight-2 row.

    The extra row has its 1s in the appended zero column and, by
    default, in the column whose extended-Hamming label is all-ones;
    `weight2_col` overrides that column index for experimentation.
    """
    if r < 3:
        raise ValueError("augmented family needs r >= 3")
    base = ext_hamming_code(r - 1)
    half = 1 << (r - 1)
    if weight2_col is None:
        weight2_col = half - 1  # label (1,...,1)
    if not 0 <= weight2_col < half:
        raise ValueError("weight-2 column index out of range")
    cols = base.column_ints() + [0]
    cols = [c | ((1 << r) if j in (weight2_col, half) else 0)
            for j, c in enumerate(cols)]
    return BinaryCode(half + 1, r + 1, _matrix_from_columns(cols, r + 1),
                      f"augmented-H{r}[{half + 1},{half - r}]")


GOLAY_GENPOLY = 0b110001110101  # x^11+x^10+x^6+x^5+x^4+x^2+1


def golay23_code() -> BinaryCode:
    """[23, 12, 7] binary Golay code; H derived from the cyclic generator.

    The quadratic-residue generator polynomial has degree 11, so the
    parity-check matrix has 11 rows and the coset graph lives on 2^11
    vertices.
    """
    n, k = 23, 12
    gen_rows = [GOLAY_GENPOLY << i for i in range(k)]
    G = Gf2Matrix.from_rows(gen_rows, n)
    H = G.kernel_basis()
    return BinaryCode(n, H.nrows, H, "golay[23,12]")


def bch2_code(s: int) -> BinaryCode:
    """2-error-correcting BCH code of length 2^s - 1 via GF(2^s) columns.

    Column i stacks the expansions of a^i and a^{3i} for the primitive
    element a, giving a 2s x (2^s - 1) parity-check matrix.
    """
    if s < 3:
        raise ValueError("bch2 needs s >= 3")
    field = Gf2sField(s)
    n = (1 << s) - 1
    powers = field.powers_of_generator(n)
    cols = []
    for a in powers:
        cube = field.mul(field.mul(a, a), a)
        cols.append(a | (cube << s))
    return BinaryCode(n, 2 * s, _matrix_from_columns(cols, 2 * s),
                      f"bch2[{n},{n - 2 * s}]")


def rm_quadratic_code(m: int) -> BinaryCode:
    """Code whose H rows evaluate v_i and v_i v_j at nonzero points of F_2^m."""
    if m < 3:
        raise ValueError("quadratic Reed-Muller family needs m >= 3")
    n = (1 << m) - 1
    pts = np.arange(1, 1 << m)
    rows = []
    for i in range(m):
        rows.append((pts >> i) & 1)
    for i in range(m):
        for j in range(i + 1, m):
            rows.append(((pts >> i) & 1) & ((pts >> j) & 1))
    H = Gf2Matrix.from_bits(np.array(rows, dtype=np.uint8))
    r = m * (m + 1) // 2
    return BinaryCode(n, r, H, f"rm2-dual[m={m}]")


def build_code(fam: CodeFamilyId) -> BinaryCode:
    if fam.kind == "repetition":
        return repetition_code(fam.param)
    if fam.kind == "ext_hamming":
        return ext_hamming_code(fam.param)
    if fam.kind == "augmented_hr":
        return augmented_hr_code(fam.param)
    if fam.kind == "golay23":
        return golay23_code()
    if fam.kind == "bch2":
        return bch2_code(fam.param)
    if fam.kind == "rm_quadratic":
        return rm_quadratic_code(fam.param)
    if fam.kind == "from_file":
        with open(fam.path, "r", encoding="utf-8") as fh:
            return code_from_text(fh.read(), label=str(fam.path))
    raise ValueError(f"unknown family kind {fam.kind!r}")


# -- parity-check text format ---------------------------------------------


def parse_parity_check(text: str) -> Gf2Matrix:
    """Parse the shared text format: header 'n r', then r bit rows."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty parity-check file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("header must be 'n r'")
    n, r = int(header[0]), int(header[1])
    if len(lines) - 1 != r:
        raise ValueError(f"expected {r} rows, got {len(lines) - 1}")
    m = Gf2Matrix(r, n)
    for i, ln in enumerate(lines[1:]):
        bits = [ch for ch in ln if not ch.isspace()]
        if len(bits) != n:
            raise ValueError(f"row {i} has {len(bits)} entries, expected {n}")
        for j, ch in enumerate(bits):
            if ch not in "01":
                raise ValueError(f"bad character {ch!r} in row {i}")
            if ch == "1":
                m.set_(i, j, 1)
    return m


def format_parity_check(H: Gf2Matrix) -> str:
    lines = [f"{H.ncols} {H.nrows}"]
    for i in range(H.nrows):
        lines.append("".join(str(H.get(i, j)) for j in range(H.ncols)))
    return "\n".join(lines) + "\n"


def code_from_text(text: str, label: str = "") -> BinaryCode:
    H = parse_parity_check(text)
    return BinaryCode(H.ncols, H.nrows, H, label or "from-file")


# -- operations -------------------------------------------------------------


def dual_generators(code: BinaryCode) -> Gf2Matrix:
    """Row-reduced basis of the dual code (row space of H)."""
    return code.H.row_basis()


def _schur_span(A: Gf2Matrix, B: Gf2Matrix) -> Gf2Matrix:
    """Basis of the span of all coordinatewise products of rows."""
    acc: Gf2Matrix | None = None
    pending: list[np.ndarray] = []

    def flush(acc, pending):
        block = Gf2Matrix(len(pending), A.ncols, np.array(pending))
        stacked = block if acc is None else acc.vstack(block)
        return stacked.row_basis()

    for i in range(A.nrows):
        for j in range(B.nrows):
            pending.append(A.data[i] & B.data[j])
            if len(pending) >= SCHUR_PENDING_CAP:
                acc = flush(acc, pending)
                pending = []
    if pending:
        acc = flush(acc, pending)
    return acc if acc is not None else Gf2Matrix(0, A.ncols)


def schur_power_dual(code: BinaryCode, k: int) -> Gf2Matrix:
    """Basis of (C-dual)^{*(k-1)}; k = 2 returns the dual itself."""
    if k < 2:
        raise ValueError("k must be >= 2")
    base = dual_generators(code)
    cur = base
    for _ in range(k - 2):
        cur = _schur_span(cur, base)
    return cur


def contains_dual_power(code: BinaryCode, k: int) -> bool:
    """True iff every basis vector of (C-dual)^{*(k-1)} lies in ker H."""
    basis = schur_power_dual(code, k)
    if basis.nrows == 0:
        return True
    return (code.H @ basis.transpose()).is_zero()


def distance_at_least_4(code: BinaryCode) -> bool:
    """d(C) >= 4: columns nonzero, distinct, and no two sum to a third."""
    cols = code.column_ints()
    colset = set(cols)
    if 0 in colset or len(colset) != len(cols):
        return False
    for a_idx in range(len(cols)):
        for b_idx in range(a_idx + 1, len(cols)):
            x = cols[a_idx] ^ cols[b_idx]
            if x in colset:
                return False
    return True


def min_distance_exhaustive(code: BinaryCode, max_dim: int = 24) -> int:
    """Minimum weight over all nonzero codewords (Gray-code sweep)."""
    G = code.H.kernel_basis()
    k = G.nrows
    if k > max_dim:
        raise CapacityError(f"dimension {k} exceeds exhaustion budget {max_dim}")
    if k == 0:
        raise ValueError("trivial code has no nonzero codeword")
    rows = [G.row(i).to_int() for i in range(k)]
    best = code.n + 1
    word = 0
    prev_gray = 0
    for i in range(1, 1 << k):
        gray = i ^ (i >> 1)
        word ^= rows[(gray ^ prev_gray).bit_length() - 1]
        prev_gray = gray
        w = word.bit_count()
        if w < best:
            best = w
    return best
