"""Wirings: square F_2 matrices read as button-to-bulb digraphs.

Column ``j`` lists the bulbs toggled by button ``j``; ``w[i, j] = 1`` is the
edge ``j -> i``.  Vertices are 1-based.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .gf2 import (
    BitMat,
    BitVec,
    DimensionError,
    SpanBasis,
    max_coset_weight,
    mean_coset_weight,
    span_basis,
)

FORWARD_SCAN_LIMIT = 24


class Membership(enum.Enum):
    NOT_ADMISSIBLE = "not_admissible"
    # admissible but some column is heavier than m
    DEGREE_EXCEEDS = "degree_exceeds"
    IN_A = "in_A"
    IN_A_STAR = "in_A_star"


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def _members(mask: int) -> frozenset[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


@dataclass(frozen=True)
class Wiring:
    matrix: BitMat

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise DimensionError(f"wiring must be square, got {self.matrix.rows}x{self.matrix.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[str | Sequence[int]]) -> "Wiring":
        return cls(BitMat.from_rows(rows))

    @classmethod
    def from_columns(cls, n: int, columns: Iterable[int]) -> "Wiring":
        return cls(BitMat.from_columns(n, columns))

    @classmethod
    def identity(cls, n: int) -> "Wiring":
        return cls(BitMat.identity(n))

    @classmethod
    def clique(cls, r: int) -> "Wiring":
        """The augmented complete graph on ``r`` vertices (all-ones matrix)."""
        return cls(BitMat.ones(r))

    @property
    def n(self) -> int:
        return self.matrix.rows

    @property
    def columns(self) -> tuple[int, ...]:
        return self.matrix.columns

    @cached_property
    def basis(self) -> SpanBasis:
        return span_basis(self.matrix)

    @property
    def rank(self) -> int:
        return self.basis.rank

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(c.bit_count() for c in self.columns)

    @property
    def deg(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def is_admissible(self) -> bool:
        return all(c >> i & 1 for i, c in enumerate(self.columns))

    def entry(self, i: int, j: int) -> int:
        return self.matrix.entry(i, j)

    def row_strings(self) -> list[str]:
        return self.matrix.row_strings()

    def permute_columns(self, order: Sequence[int]) -> "Wiring":
        """New wiring whose column ``i`` is old column ``order[i - 1]``."""
        if sorted(order) != list(range(1, self.n + 1)):
            raise ValueError("order must be a permutation of 1..n")
        return Wiring.from_columns(self.n, (self.columns[j - 1] for j in order))

    def relabel(self, perm: Sequence[int]) -> "Wiring":
        """Simultaneous row/column relabelling: vertex ``v`` becomes ``perm[v - 1]``."""
        if sorted(perm) != list(range(1, self.n + 1)):
            raise ValueError("perm must be a permutation of 1..n")
        cols = [0] * self.n
        for j, c in enumerate(self.columns):
            new = 0
            for i in range(self.n):
                if c >> i & 1:
                    new |= 1 << (perm[i] - 1)
            cols[perm[j] - 1] = new
        return Wiring.from_columns(self.n, cols)

    def subwiring(self, vertices: Sequence[int]) -> "Wiring":
        """Principal submatrix on ``vertices`` (in the given order)."""
        cols = []
        for j in vertices:
            c = self.columns[j - 1]
            cols.append(sum(1 << k for k, i in enumerate(vertices) if c >> (i - 1) & 1))
        return Wiring.from_columns(len(vertices), cols)

    def __str__(self) -> str:
        return str(self.matrix)


def _check_vertex(W: Wiring, i: int) -> None:
    if not 1 <= i <= W.n:
        raise IndexError(f"vertex {i} outside 1..{W.n}")


def degree(W: Wiring, i: int) -> int:
    """Associated degree of vertex ``i``: the weight of column ``i``."""
    _check_vertex(W, i)
    return W.columns[i - 1].bit_count()


def class_membership(W: Wiring, m: int) -> Membership:
    if not W.is_admissible:
        return Membership.NOT_ADMISSIBLE
    if W.deg > m:
        return Membership.DEGREE_EXCEEDS
    if W.n >= m and all(d == m for d in W.degrees):
        return Membership.IN_A_STAR
    return Membership.IN_A


def in_class(W: Wiring, m: int, exact_degree: bool = False) -> bool:
    """Membership in ``A(n, m)``, or in ``A*(n, m)`` when ``exact_degree``."""
    got = class_membership(W, m)
    if exact_degree:
        return got is Membership.IN_A_STAR
    return got in (Membership.IN_A, Membership.IN_A_STAR)


class EdgeFunction:
    """Forward and backward edge maps of a wiring, extended to vertex sets."""

    def __init__(self, W: Wiring):
        self.n = W.n
        self._fwd = W.columns
        self._bwd = tuple(W.matrix.row_bits(i) for i in range(1, W.n + 1))

    def forward(self, i: int) -> frozenset[int]:
        return _members(self._fwd[i - 1])

    def backward(self, i: int) -> frozenset[int]:
        return _members(self._bwd[i - 1])

    def forward_mask(self, T: Iterable[int]) -> int:
        m = 0
        for i in T:
            m |= self._fwd[i - 1]
        return m

    def forward_set(self, T: Iterable[int]) -> frozenset[int]:
        return _members(self.forward_mask(T))

    def backward_set(self, T: Iterable[int]) -> frozenset[int]:
        m = 0
        for i in T:
            m |= self._bwd[i - 1]
        return _members(m)

    def is_forward_invariant(self, T: Iterable[int]) -> bool:
        T = list(T)
        return self.forward_mask(T) & ~_mask(T) == 0

    def is_backward_invariant(self, T: Iterable[int]) -> bool:
        T = set(T)
        return self.backward_set(T) <= T


def evaluate_M(W: Wiring, c: BitVec | None = None) -> int:
    """``M(W, c)``: most bulbs that can be lit from state ``c`` (default 0).

    Works for inadmissible wirings too; check ``W.is_admissible`` when that
    matters.
    """
    if c is None:
        c = BitVec.zeros(W.n)
    return max_coset_weight(W.basis, c)


def mean_weight(W: Wiring, c: BitVec | None = None) -> Fraction:
    """Exact mean of ``|Wx + c|`` over all ``x`` in F_2^n."""
    if c is None:
        c = BitVec.zeros(W.n)
    return mean_coset_weight(W.basis, c)


def pivot(W: Wiring, i: int, T: Iterable[int] = ()) -> Wiring:
    """Pivot about ``i`` relative to ``T``.

    Column ``j`` is replaced by column ``i`` for every ``j`` in ``F(i) \\ T``.
    An empty ``T`` is a full pivot.
    """
    _check_vertex(W, i)
    T = set(T)
    for t in T:
        _check_vertex(W, t)
    ci = W.columns[i - 1]
    cols = list(W.columns)
    for j in _members(ci):
        if j not in T:
            cols[j - 1] = ci
    return Wiring.from_columns(W.n, cols)


def forward_invariant_sets(W: Wiring) -> list[frozenset[int]]:
    """All nonempty proper forward-invariant vertex sets.

    This is an honest scan over all ``2**n`` subsets, so ``n`` is capped at
    24.  Sorted by size, then lexicographically by sorted members.
    """
    n = W.n
    if n > FORWARD_SCAN_LIMIT:
        raise ValueError(f"exhaustive subset scan needs n <= {FORWARD_SCAN_LIMIT}, got {n}")
    if n == 0:
        return []
    lo_bits = min(n, 12)
    hi_bits = n - lo_bits
    cols = W.columns

    def image_table(offset: int, bits: int) -> np.ndarray:
        table = np.zeros(1 << bits, dtype=np.int64)
        for b in range(bits):
            half = 1 << b
            table[half : 2 * half] = table[:half] | cols[offset + b]
        return table

    lo_img = image_table(0, lo_bits)
    hi_img = image_table(lo_bits, hi_bits)
    lows = np.arange(1 << lo_bits, dtype=np.int64)
    full = (1 << n) - 1
    found: list[int] = []
    for h in range(1 << hi_bits):
        T = lows | (h << lo_bits)
        ok = ((lo_img | hi_img[h]) & ~T) == 0
        found.extend(int(t) for t in T[ok])
    sets = [_members(t) for t in found if t != 0 and t != full]
    sets.sort(key=lambda s: (len(s), sorted(s)))
    return sets


def find_F_r(W: Wiring, r: int) -> list[frozenset[int]]:
    """Forward-invariant augmented complete subgraphs on ``r`` vertices.

    Such a ``T`` has every column ``j`` in ``T`` equal to ``T`` itself, so only
    columns of weight ``r`` need checking.
    """
    if r < 1:
        raise ValueError("r must be positive")
    seen = set()
    out = []
    for j, c in enumerate(W.columns, start=1):
        if c.bit_count() != r or c in seen or not c >> (j - 1) & 1:
            continue
        members = _members(c)
        if all(W.columns[i - 1] == c for i in members):
            seen.add(c)
            out.append(members)
    out.sort(key=sorted)
    return out


def clique_blocks(W: Wiring) -> list[frozenset[int]]:
    """Partition vertices into augmented complete blocks.

    Vertices with identical columns that all lie inside that column form one
    block; every other vertex is a singleton.  Ordered by smallest member.
    """
    groups: dict[int, list[int]] = {}
    for j, c in enumerate(W.columns, start=1):
        groups.setdefault(c, []).append(j)
    blocks = []
    for c, members in groups.items():
        inside = [j for j in members if c >> (j - 1) & 1]
        if inside:
            blocks.append(frozenset(inside))
        blocks.extend(frozenset([j]) for j in members if not c >> (j - 1) & 1)
    blocks.sort(key=min)
    return blocks


def same_span(W1: Wiring, W2: Wiring) -> bool:
    return W1.basis == W2.basis


def spans_equivalent(W1: Wiring, W2: Wiring) -> bool:
    """Whether the column spaces agree after some relabelling of bulbs.

    Brute force over row permutations; meant for ``n <= 8``.
    """
    from itertools import permutations

    if W1.n != W2.n or W1.rank != W2.rank:
        return False
    n = W1.n
    target = W1.basis
    for perm in permutations(range(n)):
        cols = []
        for v in W2.basis.vectors:
            cols.append(sum(1 << perm[i] for i in range(n) if v >> i & 1))
        if span_basis(BitMat.from_columns(n, cols)) == target:
            return True
    return False


def complete_subsets(W: Wiring, r: int) -> list[frozenset[int]]:
    """All ``r``-sets inducing an all-ones principal submatrix (not necessarily invariant)."""
    out = []
    for T in combinations(range(1, W.n + 1), r):
        m = _mask(T)
        if all(W.columns[j - 1] & m == m for j in T):
            out.append(frozenset(T))
    return out
