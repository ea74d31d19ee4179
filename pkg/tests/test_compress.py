import math

import pytest

from wirelab.circuit import (
    Depth2Circuit,
    LinearDepth2Circuit,
    MiddleGate,
    OutputGate,
    TruthTable,
    collapse,
    computes_linear,
)
from wirelab.compress import (
    CorruptEncodingError,
    EncodingFormatError,
    OperatorEncoding,
    bit_length,
    decode,
    decode_matrix,
    deserialize,
    encode,
    serialize,
)
from wirelab.generators import linear_middle_instance
from wirelab.gf2 import Gf2Matrix, Gf2Vector


def identity_depth2(n: int) -> Depth2Circuit:
    return LinearDepth2Circuit.from_matrix(Gf2Matrix.identity(n)).to_depth2()


# --- encode ------------------------------------------------------------------

def test_encode_identity_circuit():
    enc = encode(identity_depth2(4), cap=8)
    assert enc.b_ones == ((0, 0), (1, 1), (2, 2), (3, 3))
    assert enc.c_ones == ((0, 0), (1, 1), (2, 2), (3, 3))
    # each output sees one row; a single basis column whose value is A[i][i] = 1
    assert enc.basis_bits == ((1,), (1,), (1,), (1,))


def test_encode_zero_second_level():
    # outputs see nothing: t_i = 0 everywhere, basis bits empty
    mids = (MiddleGate((0,), TruthTable.identity()),)
    outs = tuple(OutputGate((), (), TruthTable.constant(0)) for _ in range(3))
    enc = encode(Depth2Circuit(3, mids, outs), cap=8)
    assert enc.r == 0  # the unread middle gate is dropped
    assert enc.basis_bits == ((), (), ())
    assert decode_matrix(enc) == Gf2Matrix.zero(3, 3)


def test_encode_rejects_direct_wires():
    c = Depth2Circuit(1, (), (OutputGate((), (0,), TruthTable.identity()),))
    with pytest.raises(ValueError, match="direct"):
        encode(c, cap=4)


def test_encode_rejects_negated_or_partial_middle_parity():
    neg = Depth2Circuit(
        1,
        (MiddleGate((0,), TruthTable.parity(1, negated=True)),),
        (OutputGate((0,), (), TruthTable.parity(1, negated=True)),),
    )
    with pytest.raises(ValueError, match="middle gate 0"):
        encode(neg, cap=4)
    lazy = Depth2Circuit(
        2,
        (MiddleGate((0, 1), TruthTable.parity(2, positions=[0])),),
        (OutputGate((0,), (), TruthTable.identity()), OutputGate((), (), TruthTable.constant(0))),
    )
    with pytest.raises(ValueError, match="middle gate 0"):
        encode(lazy, cap=4)


def test_encode_rejects_nonlinear_operators():
    # parity middle gates but an AND output: not a matrix-vector product
    mids = (MiddleGate((0,), TruthTable.identity()), MiddleGate((1,), TruthTable.identity()))
    outs = (OutputGate((0, 1), (), TruthTable(2, 0b1000)), OutputGate((1,), (), TruthTable.identity()))
    with pytest.raises(ValueError, match="linear operator"):
        encode(Depth2Circuit(2, mids, outs), cap=4)


# --- decode ------------------------------------------------------------------

def test_decode_zero_input_gives_zero():
    c, _ = linear_middle_instance(5, 6, 0.5, seed=19)
    enc = encode(c, cap=8)
    assert decode(enc, Gf2Vector.zero(5)) == Gf2Vector.zero(5)


def test_decode_unit_vectors_give_matrix_columns():
    c, a = linear_middle_instance(5, 6, 0.5, seed=19)
    enc = encode(c, cap=8)
    for j in range(5):
        assert decode(enc, Gf2Vector.unit(5, j)) == a.column(j)
    assert decode_matrix(enc) == a == computes_linear(c, cap=8)


def test_decode_roundtrip_exhaustive():
    for seed in (19, 20, 21):
        c, _ = linear_middle_instance(5, 7, 0.5, seed=seed)
        enc = encode(c, cap=8)
        table = collapse(c, cap=8)
        for x in range(32):
            assert decode(enc, Gf2Vector(5, x)) == table.value_at(x)


def test_decode_detects_corrupted_basis_string():
    # output 0's wire pattern spans a 1-dimensional space but the stream
    # claims t_0 = 0; such a certificate cannot come from encode
    enc = OperatorEncoding(
        n=2,
        r=1,
        b_ones=((0, 0),),
        c_ones=((0, 0),),
        basis_bits=((), ()),
    )
    with pytest.raises(CorruptEncodingError):
        decode(enc, Gf2Vector.from_coords([1, 0]))


# --- sizes and serialization ---------------------------------------------------

def test_bit_length_header_only():
    # n = 1, one middle gate, no wires anywhere: nothing but the header fields
    c = Depth2Circuit(
        1,
        (MiddleGate((), TruthTable.parity(0)),),
        (OutputGate((), (), TruthTable.constant(0)),),
    )
    enc = encode(c, cap=2)
    assert enc.wire_count() == 0
    assert bit_length(enc) == 96 + 16  # magic/counts plus one empty t_i field
    assert len(serialize(enc)) == (bit_length(enc) + 7) // 8


def test_bit_length_identity_against_byte_count():
    enc = encode(identity_depth2(4), cap=8)
    w = enc.field_width()
    assert w == 3
    assert bit_length(enc) == 96 + 16 * 4 + 2 * w * 8 + 4
    assert len(serialize(enc)) == (bit_length(enc) + 7) // 8 == 27


def test_length_law_and_ratio_sweep():
    worst = 0.0
    for seed in range(60):
        n = 4 + seed % 5
        c, _ = linear_middle_instance(n, 2 + seed % 10, 0.5, seed=seed)
        enc = encode(c, cap=8)
        w = enc.field_width()
        L = enc.wire_count()
        t_sum = sum(len(b) for b in enc.basis_bits)
        assert bit_length(enc) == 96 + 16 * n + 2 * L * w + t_sum
        assert t_sum <= len(enc.c_ones) <= L
        if L:
            worst = max(worst, bit_length(enc) / (L * math.log2(n)))
    assert worst <= 25.0  # frozen from the sweep; certifies O(L log n) scaling


def test_serialize_roundtrip():
    for seed in (22, 23):
        c, _ = linear_middle_instance(6, 8, 0.5, seed=seed)
        enc = encode(c, cap=8)
        data = serialize(enc)
        assert deserialize(data) == enc
        assert serialize(deserialize(data)) == data


def test_deserialize_rejects_bad_magic():
    enc = encode(identity_depth2(3), cap=8)
    data = bytearray(serialize(enc))
    data[0] ^= 0xFF
    with pytest.raises(EncodingFormatError) as err:
        deserialize(bytes(data))
    assert err.value.bit_offset == 0


def test_deserialize_rejects_truncation():
    data = serialize(encode(identity_depth2(3), cap=8))
    with pytest.raises(EncodingFormatError, match="truncated"):
        deserialize(data[:-2])


def test_deserialize_rejects_trailing_data():
    data = serialize(encode(identity_depth2(3), cap=8))
    with pytest.raises(EncodingFormatError, match="trailing"):
        deserialize(data + b"\x00")


def test_deserialize_rejects_out_of_range_positions():
    enc = encode(identity_depth2(3), cap=8)
    good = serialize(enc)
    # header is magic(32) n(16) r(16) |B|(16) = 80 bits; the first pair
    # is two 2-bit fields; force it to (3, 3), invalid for 3 rows
    assert enc.field_width() == 2
    bad = bytearray(good)
    bad[10] |= 0b11110000
    with pytest.raises(EncodingFormatError, match="out of range"):
        deserialize(bytes(bad))


def test_operator_encoding_validation():
    with pytest.raises(ValueError):
        OperatorEncoding(2, 1, ((0, 0), (0, 0)), (), ((), ()))  # duplicate position
    with pytest.raises(ValueError):
        OperatorEncoding(2, 1, ((0, 5),), (), ((), ()))  # column out of range
    with pytest.raises(ValueError):
        OperatorEncoding(2, 1, (), (), ((1,), ()))  # more basis bits than wires
