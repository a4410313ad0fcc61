"""Bit-exact linear algebra over F_2.

Vectors and matrix columns are packed into Python ints: bit ``i - 1`` holds
coordinate ``i`` (coordinates are 1-based everywhere in the public API).
Popcount is ``int.bit_count``.  The column space of a matrix is held as a
reduced row-echelon basis, which is canonical: two matrices have the same
column space iff their ``SpanBasis`` values compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_DIM = 1024

# below this rank the Gray-code loop beats building a numpy array
_NUMPY_MIN_RANK = 12


class DimensionError(ValueError):
    """Operands have incompatible lengths."""


def _check_dim(n: int, what: str = "length") -> None:
    if n < 0 or n > MAX_DIM:
        raise DimensionError(f"{what} {n} outside supported range 0..{MAX_DIM}")


@dataclass(frozen=True)
class BitVec:
    length: int
    bits: int = 0

    def __post_init__(self):
        _check_dim(self.length)
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits do not fit in the declared length")

    @classmethod
    def zeros(cls, n: int) -> "BitVec":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "BitVec":
        return cls(n, (1 << n) - 1)

    @classmethod
    def from_str(cls, s: str) -> "BitVec":
        """Parse ``"0110"``; the first character is coordinate 1."""
        if any(ch not in "01" for ch in s):
            raise ValueError(f"not a bitstring: {s!r}")
        bits = 0
        for i, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << i
        return cls(len(s), bits)

    @classmethod
    def from_list(cls, values: Sequence[int]) -> "BitVec":
        return cls.from_str("".join("1" if v else "0" for v in values))

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> "BitVec":
        bits = 0
        for i in support:
            if not 1 <= i <= n:
                raise IndexError(f"coordinate {i} outside 1..{n}")
            bits |= 1 << (i - 1)
        return cls(n, bits)

    def bit(self, i: int) -> int:
        if not 1 <= i <= self.length:
            raise IndexError(f"coordinate {i} outside 1..{self.length}")
        return (self.bits >> (i - 1)) & 1

    def support(self) -> list[int]:
        return [i + 1 for i in range(self.length) if self.bits >> i & 1]

    def weight(self) -> int:
        return self.bits.bit_count()

    def __add__(self, other: "BitVec") -> "BitVec":
        if not isinstance(other, BitVec):
            return NotImplemented
        if other.length != self.length:
            raise DimensionError(f"cannot add vectors of length {self.length} and {other.length}")
        return BitVec(self.length, self.bits ^ other.bits)

    def __iter__(self) -> Iterator[int]:
        for i in range(self.length):
            yield self.bits >> i & 1

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return "".join(str(b) for b in self)


def weight(v: BitVec) -> int:
    """Hamming norm: the number of 1 entries."""
    return v.bits.bit_count()


@dataclass(frozen=True)
class BitMat:
    """An ``rows x cols`` matrix over F_2 stored column-wise.

    ``columns[j - 1]`` packs column ``j``; its bit ``i - 1`` is entry ``(i, j)``.
    """

    rows: int
    cols: int
    columns: tuple[int, ...]

    def __post_init__(self):
        _check_dim(self.rows, "row count")
        _check_dim(self.cols, "column count")
        if len(self.columns) != self.cols:
            raise DimensionError(f"expected {self.cols} columns, got {len(self.columns)}")
        for c in self.columns:
            if c < 0 or c >> self.rows:
                raise ValueError("column does not fit in the row count")

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[int]) -> "BitMat":
        cols = tuple(columns)
        return cls(rows, len(cols), cols)

    @classmethod
    def from_rows(cls, rows: Sequence[str | Sequence[int]]) -> "BitMat":
        """Build from row strings like ``"0110"`` (or 0/1 lists)."""
        strs = ["".join(str(int(v)) for v in r) if not isinstance(r, str) else r for r in rows]
        if not strs:
            return cls(0, 0, ())
        width = len(strs[0])
        if any(len(s) != width for s in strs):
            raise DimensionError("ragged rows")
        columns = [0] * width
        for i, s in enumerate(strs):
            for j, ch in enumerate(s):
                if ch == "1":
                    columns[j] |= 1 << i
                elif ch != "0":
                    raise ValueError(f"bad entry {ch!r} at row {i + 1}")
        return cls(len(strs), width, tuple(columns))

    @classmethod
    def identity(cls, n: int) -> "BitMat":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def ones(cls, p: int, q: int | None = None) -> "BitMat":
        q = p if q is None else q
        return cls(p, q, ((1 << p) - 1,) * q)

    @classmethod
    def zeros(cls, p: int, q: int | None = None) -> "BitMat":
        q = p if q is None else q
        return cls(p, q, (0,) * q)

    def entry(self, i: int, j: int) -> int:
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
        return (self.columns[j - 1] >> (i - 1)) & 1

    def column(self, j: int) -> BitVec:
        if not 1 <= j <= self.cols:
            raise IndexError(f"column {j} outside 1..{self.cols}")
        return BitVec(self.rows, self.columns[j - 1])

    def row_bits(self, i: int) -> int:
        """Row ``i`` packed the same way (bit ``j - 1`` is entry ``(i, j)``)."""
        r = 0
        for j, c in enumerate(self.columns):
            if c >> (i - 1) & 1:
                r |= 1 << j
        return r

    def row_strings(self) -> list[str]:
        return [
            "".join("1" if c >> i & 1 else "0" for c in self.columns) for i in range(self.rows)
        ]

    def to_array(self) -> np.ndarray:
        return np.array(
            [[c >> i & 1 for c in self.columns] for i in range(self.rows)], dtype=np.uint8
        ).reshape(self.rows, self.cols)

    def __str__(self) -> str:
        return "\n".join(self.row_strings())


def mat_vec(W: BitMat, x: BitVec) -> BitVec:
    """XOR of the columns ``j`` of ``W`` with ``x_j = 1``."""
    if x.length != W.cols:
        raise DimensionError(f"vector length {x.length} != column count {W.cols}")
    acc = 0
    bits = x.bits
    j = 0
    while bits:
        if bits & 1:
            acc ^= W.columns[j]
        bits >>= 1
        j += 1
    return BitVec(W.rows, acc)


def _spread(c: int, mprime: int, block: int) -> int:
    """Replace every bit of ``c`` by a run of ``mprime`` copies."""
    out = 0
    i = 0
    while c:
        if c & 1:
            out |= block << (i * mprime)
        c >>= 1
        i += 1
    return out


def kron_ones(W: BitMat, mprime: int) -> BitMat:
    """Kronecker product ``W (x) 1_{m' x m'}``."""
    if mprime < 1:
        raise ValueError("mprime must be >= 1")
    if mprime == 1:
        return W
    block = (1 << mprime) - 1
    cols = []
    for c in W.columns:
        spread = _spread(c, mprime, block)
        cols.extend([spread] * mprime)
    return BitMat(W.rows * mprime, W.cols * mprime, tuple(cols))


def block_diag(blocks: Sequence[BitMat]) -> BitMat:
    if not blocks:
        raise ValueError("block_diag needs at least one block")
    cols: list[int] = []
    offset = 0
    for b in blocks:
        if b.rows != b.cols:
            raise DimensionError(f"block {b.rows}x{b.cols} is not square")
        cols.extend(c << offset for c in b.columns)
        offset += b.rows
    return BitMat(offset, offset, tuple(cols))


@dataclass(frozen=True)
class SpanBasis:
    """Reduced row-echelon basis of a column space.

    ``vectors`` is sorted by decreasing pivot, where the pivot of a vector is
    its highest set bit; no vector has a set bit at another vector's pivot.
    """

    n: int
    vectors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.vectors)

    @property
    def pivot_mask(self) -> int:
        m = 0
        for v in self.vectors:
            m |= 1 << (v.bit_length() - 1)
        return m

    def reduce(self, v: int) -> int:
        """Reduce ``v`` modulo the span; zero iff ``v`` lies in it."""
        for b in self.vectors:
            if v ^ b < v:
                v ^= b
        return v

    def contains(self, v: BitVec | int) -> bool:
        bits = v.bits if isinstance(v, BitVec) else v
        return self.reduce(bits) == 0

    def extend(self, v: int) -> "SpanBasis":
        return SpanBasis(self.n, extend_basis(self.vectors, v))

    def elements(self, order: str = "gray") -> Iterator[int]:
        """All ``2**rank`` subset-sums, as packed ints."""
        if order == "gray":
            return _gray_elements(self.vectors)
        if order == "naive":
            return _naive_elements(self.vectors)
        raise ValueError(f"unknown order {order!r}")


def extend_basis(basis: tuple[int, ...], v: int) -> tuple[int, ...]:
    """Insert ``v`` into a reduced echelon basis tuple, keeping it canonical."""
    for b in basis:
        if v ^ b < v:
            v ^= b
    if not v:
        return basis
    top = 1 << (v.bit_length() - 1)
    new = [b ^ v if b & top else b for b in basis]
    new.append(v)
    new.sort(reverse=True)
    return tuple(new)


def span_basis(W: BitMat) -> SpanBasis:
    basis: tuple[int, ...] = ()
    for c in W.columns:
        basis = extend_basis(basis, c)
    return SpanBasis(W.rows, basis)


def _gray_elements(vectors: Sequence[int]) -> Iterator[int]:
    s = 0
    yield s
    for step in range(1, 1 << len(vectors)):
        # bit flipped between consecutive Gray codes = lowest set bit of step
        s ^= vectors[(step & -step).bit_length() - 1]
        yield s


def _naive_elements(vectors: Sequence[int]) -> Iterator[int]:
    for mask in range(1 << len(vectors)):
        s = 0
        j = 0
        while mask:
            if mask & 1:
                s ^= vectors[j]
            mask >>= 1
            j += 1
        yield s


def _span_array(vectors: Sequence[int]) -> np.ndarray:
    arr = np.zeros(1, dtype=np.uint64)
    for v in vectors:
        arr = np.concatenate((arr, arr ^ np.uint64(v)))
    return arr


def _check_coset_args(B: SpanBasis, c: BitVec) -> None:
    if c.length != B.n:
        raise DimensionError(f"vector length {c.length} != ambient length {B.n}")


def max_coset_weight(B: SpanBasis, c: BitVec, method: str = "auto") -> int:
    """``max |s + c|`` over the span: the evaluator ``M(W, c)``.

    ``method`` is ``"gray"`` (one XOR and one popcount per element),
    ``"naive"`` (each subset-sum rebuilt from scratch), ``"numpy"`` (single
    word, ``n <= 64``) or ``"auto"``.
    """
    _check_coset_args(B, c)
    if method == "auto":
        method = "numpy" if B.n <= 64 and B.rank >= _NUMPY_MIN_RANK else "gray"
    if method == "numpy":
        if B.n > 64:
            raise DimensionError("numpy path needs n <= 64")
        arr = _span_array(B.vectors) ^ np.uint64(c.bits)
        return int(np.bitwise_count(arr).max())
    cb = c.bits
    best = 0
    for s in B.elements(method):
        w = (s ^ cb).bit_count()
        if w > best:
            best = w
    return best


def coset_weight_sum(B: SpanBasis, c: BitVec) -> int:
    """Sum of ``|s + c|`` over all ``2**rank`` span elements."""
    _check_coset_args(B, c)
    if B.n <= 64 and B.rank >= _NUMPY_MIN_RANK:
        arr = _span_array(B.vectors) ^ np.uint64(c.bits)
        return int(np.bitwise_count(arr).sum(dtype=np.int64))
    cb = c.bits
    return sum((s ^ cb).bit_count() for s in B.elements("gray"))


def mean_coset_weight(B: SpanBasis, c: BitVec) -> Fraction:
    """Mean of ``|Wx + c|`` over all ``x``.

    Every span element is hit by exactly ``2**(cols - rank)`` choices of
    ``x``, so the multiplicity-weighted mean equals the plain coset mean.
    """
    return Fraction(coset_weight_sum(B, c), 1 << B.rank)
