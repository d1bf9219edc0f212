"""Dense bit-packed vectors and matrices over GF(2).

Values are immutable from the caller's perspective: every operation
returns a fresh object and elimination always runs on a private copy.
Storage is little-endian bit packing in uint64 words (assumes a
little-endian host, which covers all supported platforms).
"""

from __future__ import annotations

import numpy as np

from ..config import mem_budget
from ..errors import CapacityError, DimensionError
from . import DEFAULT_BLOCK, rref_inplace

_U1 = np.uint64(1)

if hasattr(np, "bitwise_count"):

    def _popcount(arr: np.ndarray) -> np.ndarray:
        return np.bitwise_count(arr)

else:
    _POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)

    def _popcount(arr: np.ndarray) -> np.ndarray:
        return _POP8[arr.view(np.uint8)].reshape(*arr.shape, 8).sum(axis=-1)


def _nwords(nbits: int) -> int:
    return (nbits + 63) >> 6


def _tail_mask(nbits: int) -> np.uint64:
    rem = nbits & 63
    if rem == 0:
        return np.uint64(0xFFFFFFFFFFFFFFFF)
    return np.uint64((1 << rem) - 1)


class Gf2Vector:
    """A fixed-length bit vector; unused high bits are kept at zero."""

    __slots__ = ("length", "data")

    def __init__(self, length: int, data: np.ndarray | None = None):
        if length < 0:
            raise ValueError("negative length")
        self.length = length
        if data is None:
            data = np.zeros(_nwords(length), dtype=np.uint64)
        else:
            data = np.ascontiguousarray(data, dtype=np.uint64)
            if data.shape != (_nwords(length),):
                raise DimensionError("payload does not match length")
            data = data.copy()
            if length:
                data[-1] &= _tail_mask(length)
        self.data = data

    @classmethod
    def from_int(cls, length: int, value: int) -> "Gf2Vector":
        v = cls(length)
        for w in range(v.data.shape[0]):
            v.data[w] = np.uint64((value >> (64 * w)) & 0xFFFFFFFFFFFFFFFF)
        if length:
            v.data[-1] &= _tail_mask(length)
        return v

    @classmethod
    def from_bits(cls, bits) -> "Gf2Vector":
        bits = list(bits)
        v = cls(len(bits))
        for i, b in enumerate(bits):
            if b:
                v.data[i >> 6] |= _U1 << np.uint64(i & 63)
        return v

    def to_int(self) -> int:
        out = 0
        for w in range(self.data.shape[0] - 1, -1, -1):
            out = (out << 64) | int(self.data[w])
        return out

    def get(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return int((self.data[i >> 6] >> np.uint64(i & 63)) & _U1)

    def __getitem__(self, i: int) -> int:
        return self.get(i)

    def weight(self) -> int:
        return int(_popcount(self.data).sum())

    def support(self) -> list[int]:
        return [i for i in range(self.length) if self.get(i)]

    def is_zero(self) -> bool:
        return not self.data.any()

    def __xor__(self, other: "Gf2Vector") -> "Gf2Vector":
        if self.length != other.length:
            raise DimensionError("length mismatch")
        return Gf2Vector(self.length, self.data ^ other.data)

    def dot(self, other: "Gf2Vector") -> int:
        if self.length != other.length:
            raise DimensionError("length mismatch")
        return int(_popcount(self.data & other.data).sum()) & 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Gf2Vector)
            and self.length == other.length
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.length, self.data.tobytes()))

    def __repr__(self):
        if self.length <= 80:
            bits = "".join(str(self.get(i)) for i in range(self.length))
            return f"Gf2Vector({bits!r})"
        return f"Gf2Vector(length={self.length}, weight={self.weight()})"


class Gf2Matrix:
    """Dense GF(2) matrix; rows bit-packed into uint64 words."""

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, nrows: int, ncols: int, data: np.ndarray | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative dimension")
        nbytes = nrows * _nwords(ncols) * 8
        if nbytes > mem_budget():
            raise CapacityError(
                f"{nrows}x{ncols} bit matrix needs {nbytes} bytes, "
                f"budget is {mem_budget()}"
            )
        self.nrows = nrows
        self.ncols = ncols
        if data is None:
            data = np.zeros((nrows, _nwords(ncols)), dtype=np.uint64)
        else:
            data = np.ascontiguousarray(data, dtype=np.uint64)
            if data.shape != (nrows, _nwords(ncols)):
                raise DimensionError("payload shape mismatch")
            if ncols and nrows:
                data = data.copy()
                data[:, -1] &= _tail_mask(ncols)
        self.data = data

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Gf2Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        m = cls(n, n)
        for i in range(n):
            m.data[i, i >> 6] = _U1 << np.uint64(i & 63)
        return m

    @classmethod
    def from_rows(cls, rows, ncols: int) -> "Gf2Matrix":
        """Rows given as ints (bit i = column i) or Gf2Vectors."""
        m = cls(len(rows), ncols)
        for i, r in enumerate(rows):
            if isinstance(r, Gf2Vector):
                if r.length != ncols:
                    raise DimensionError("row length mismatch")
                m.data[i] = r.data
            else:
                m.data[i] = Gf2Vector.from_int(ncols, r).data
        return m

    @classmethod
    def from_bits(cls, bits) -> "Gf2Matrix":
        arr = np.atleast_2d(np.asarray(bits, dtype=np.uint8) & 1)
        nrows, ncols = arr.shape
        packed = np.packbits(arr, axis=1, bitorder="little")
        nbytes = _nwords(ncols) * 8
        padded = np.zeros((nrows, nbytes), dtype=np.uint8)
        padded[:, : packed.shape[1]] = packed
        return cls(nrows, ncols, padded.view(np.uint64))

    @classmethod
    def random(cls, nrows: int, ncols: int, rng) -> "Gf2Matrix":
        return cls.from_bits(rng.integers(0, 2, size=(nrows, ncols), dtype=np.uint8))

    # -- element access ----------------------------------------------------

    def get(self, i: int, j: int) -> int:
        return int((self.data[i, j >> 6] >> np.uint64(j & 63)) & _U1)

    def set_(self, i: int, j: int, value: int) -> None:
        bit = _U1 << np.uint64(j & 63)
        if value & 1:
            self.data[i, j >> 6] |= bit
        else:
            self.data[i, j >> 6] &= ~bit

    def row(self, i: int) -> Gf2Vector:
        return Gf2Vector(self.ncols, self.data[i])

    def rows(self):
        return [self.row(i) for i in range(self.nrows)]

    def column_ints(self) -> list[int]:
        """Columns read as integers with bit i taken from row i."""
        out = [0] * self.ncols
        for i in range(self.nrows):
            for j in range(self.ncols):
                if self.get(i, j):
                    out[j] |= 1 << i
        return out

    def to_bits(self) -> np.ndarray:
        if self.ncols == 0 or self.nrows == 0:
            return np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        raw = np.unpackbits(
            self.data.view(np.uint8).reshape(self.nrows, -1),
            axis=1,
            bitorder="little",
        )
        return raw[:, : self.ncols]

    def copy(self) -> "Gf2Matrix":
        return Gf2Matrix(self.nrows, self.ncols, self.data)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Gf2Matrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.data.tobytes()))

    def __repr__(self):
        return f"Gf2Matrix({self.nrows}x{self.ncols})"

    # -- linear algebra ----------------------------------------------------

    def rref(self, accelerated: bool = True, progress=None, kernel=None):
        """Return (reduced matrix, pivot column list); self unchanged."""
        work = self.data.copy()
        block = DEFAULT_BLOCK if accelerated else 1
        _, piv = rref_inplace(work, self.ncols, block=block, progress=progress, kernel=kernel)
        return Gf2Matrix(self.nrows, self.ncols, work), piv

    def rank(self, accelerated: bool = True, progress=None, kernel=None) -> int:
        work = self.data.copy()
        block = DEFAULT_BLOCK if accelerated else 1
        r, _ = rref_inplace(work, self.ncols, block=block, progress=progress, kernel=kernel)
        return r

    def kernel_dimension(self, **kw) -> int:
        return self.ncols - self.rank(**kw)

    def kernel_basis(self, accelerated: bool = True) -> "Gf2Matrix":
        """Rows form a basis of {x : self @ x = 0}."""
        red, piv = self.rref(accelerated=accelerated)
        rank = len(piv)
        piv_set = set(piv)
        free = [c for c in range(self.ncols) if c not in piv_set]
        out = Gf2Matrix(len(free), self.ncols)
        piv_arr = np.asarray(piv, dtype=np.intp)
        for bi, f in enumerate(free):
            if rank:
                bits = (red.data[:rank, f >> 6] >> np.uint64(f & 63)) & _U1
                cols = piv_arr[np.nonzero(bits)[0]]
            else:
                cols = np.empty(0, dtype=np.intp)
            cols = np.append(cols, f)
            np.bitwise_or.at(
                out.data[bi], cols >> 6, _U1 << (cols & 63).astype(np.uint64)
            )
        return out

    def row_basis(self, accelerated: bool = True) -> "Gf2Matrix":
        """Row-reduced basis of the row space (nonzero RREF rows)."""
        red, piv = self.rref(accelerated=accelerated)
        return Gf2Matrix(len(piv), self.ncols, red.data[: len(piv)])

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix.from_bits(self.to_bits().T) if self.nrows and self.ncols else Gf2Matrix(self.ncols, self.nrows)

    def vstack(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.ncols != other.ncols:
            raise DimensionError("column mismatch")
        return Gf2Matrix(
            self.nrows + other.nrows,
            self.ncols,
            np.vstack([self.data, other.data]),
        )

    def mat_vec(self, v: Gf2Vector) -> Gf2Vector:
        """self @ v (length-nrows result)."""
        if v.length != self.ncols:
            raise DimensionError("length mismatch")
        par = _popcount(self.data & v.data).sum(axis=1) & 1
        return Gf2Vector.from_bits(par.astype(np.uint8))

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.ncols != other.nrows:
            raise DimensionError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        out = Gf2Matrix(self.nrows, other.ncols)
        bits = self.to_bits()
        for i in range(self.nrows):
            sel = np.nonzero(bits[i])[0]
            if sel.size:
                out.data[i] = np.bitwise_xor.reduce(other.data[sel], axis=0)
        return out

    def is_zero(self) -> bool:
        return not self.data.any()

    def row_space_equals(self, other: "Gf2Matrix") -> bool:
        if self.ncols != other.ncols:
            return False
        ra = self.rank()
        rb = other.rank()
        return ra == rb and self.vstack(other).rank() == ra

    def row_space_contains(self, other: "Gf2Matrix") -> bool:
        """True iff the row space of `other` lies inside ours."""
        if self.ncols != other.ncols:
            return False
        return self.vstack(other).rank() == self.rank()


# Operation-style aliases matching the module's public vocabulary.


def rank(m: Gf2Matrix, **kw) -> int:
    return m.rank(**kw)


def kernel_dimension(m: Gf2Matrix, **kw) -> int:
    return m.kernel_dimension(**kw)


def kernel_basis(m: Gf2Matrix, **kw) -> Gf2Matrix:
    return m.kernel_basis(**kw)


def mat_mul(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    return a @ b
