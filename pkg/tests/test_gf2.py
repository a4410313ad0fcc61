from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from bulbs.gf2 import (
    BitMat,
    BitVec,
    DimensionError,
    block_diag,
    extend_basis,
    kron_ones,
    mat_vec,
    max_coset_weight,
    mean_coset_weight,
    span_basis,
    weight,
)


def matrices(max_rows=10, max_cols=10):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.lists(st.integers(0, (1 << r) - 1), min_size=1, max_size=max_cols).map(lambda cs: BitMat.from_columns(r, cs))
    )


def brute_M(W: BitMat, c: BitVec) -> int:
    # every press vector x, no span machinery
    return max(weight(mat_vec(W, BitVec.from_list(x)) + c) for x in product((0, 1), repeat=W.cols))


def test_bitvec_roundtrip_and_coordinates():
    v = BitVec.from_str("0110")
    assert str(v) == "0110"
    assert v.support() == [2, 3]
    assert v.bit(1) == 0 and v.bit(2) == 1
    assert BitVec.from_support(4, [2, 3]) == v
    assert weight(v) == 2


def test_bitvec_length_mismatch():
    with pytest.raises(DimensionError):
        BitVec.zeros(3) + BitVec.zeros(4)


def test_bitmat_rows_columns_agree():
    W = BitMat.from_rows(["110", "011", "001"])
    assert W.entry(1, 2) == 1 and W.entry(2, 1) == 0
    assert W.row_strings() == ["110", "011", "001"]
    assert BitMat.from_columns(3, W.columns) == W


def test_mat_vec_small():
    W = BitMat.from_rows(["11", "01"])
    assert str(mat_vec(W, BitVec.from_str("11"))) == "01"


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_M_matches_brute_force(W, data):
    c = BitVec(W.rows, data.draw(st.integers(0, (1 << W.rows) - 1)))
    assert max_coset_weight(span_basis(W), c) == brute_M(W, c)


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=16, max_cols=14), st.data())
def test_enumeration_paths_agree(W, data):
    B = span_basis(W)
    c = BitVec(W.rows, data.draw(st.integers(0, (1 << W.rows) - 1)))
    vals = {max_coset_weight(B, c, m) for m in ("gray", "naive", "numpy")}
    assert len(vals) == 1
    assert sorted(B.elements("gray")) == sorted(B.elements("naive"))


@settings(max_examples=80, deadline=None)
@given(matrices(max_rows=12, max_cols=12))
def test_basis_is_canonical(W):
    B = span_basis(W)
    # invariant under column order and duplicates
    assert span_basis(BitMat.from_columns(W.rows, W.columns[::-1] + W.columns)) == B
    pivots = [v.bit_length() - 1 for v in B.vectors]
    assert pivots == sorted(pivots, reverse=True)
    for v in B.vectors:
        for p in pivots:
            if p != v.bit_length() - 1:
                assert not v >> p & 1
    assert all(B.contains(c) for c in W.columns)
    assert len(set(B.elements())) == 1 << B.rank


def test_rank_of_identity_and_ones():
    assert span_basis(BitMat.identity(5)).rank == 5
    assert span_basis(BitMat.ones(5)).rank == 1


def test_extend_basis_dependent_vector_is_noop():
    b = extend_basis(extend_basis((), 0b011), 0b110)
    assert extend_basis(b, 0b101) == b


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=8, max_cols=8), st.data())
def test_mean_is_exact_average(W, data):
    c = BitVec(W.rows, data.draw(st.integers(0, (1 << W.rows) - 1)))
    vals = [weight(mat_vec(W, BitVec.from_list(x)) + c) for x in product((0, 1), repeat=W.cols)]
    assert mean_coset_weight(span_basis(W), c) == Fraction(sum(vals), len(vals))


@settings(max_examples=30, deadline=None)
@given(matrices(max_rows=5, max_cols=5), st.integers(1, 3))
def test_kron_ones_scales_M(W, k):
    if W.rows != W.cols:
        W = BitMat.from_columns(W.rows, (W.columns * W.rows)[: W.rows])
    K = kron_ones(W, k)
    assert (K.rows, K.cols) == (W.rows * k, W.cols * k)
    z = BitVec.zeros
    assert max_coset_weight(span_basis(K), z(K.rows)) == k * max_coset_weight(span_basis(W), z(W.rows))


def test_kron_ones_layout():
    K = kron_ones(BitMat.from_rows(["10", "11"]), 2)
    assert K.row_strings() == ["1100", "1100", "1111", "1111"]


def test_block_diag():
    D = block_diag([BitMat.ones(2), BitMat.identity(1)])
    assert D.row_strings() == ["110", "110", "001"]
    with pytest.raises(ValueError):
        block_diag([])


def test_coset_length_checked():
    with pytest.raises(DimensionError):
        max_coset_weight(span_basis(BitMat.identity(3)), BitVec.zeros(4))
