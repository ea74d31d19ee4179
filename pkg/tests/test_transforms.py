import pytest

from wirelab.circuit import (
    Depth2Circuit,
    GeneralCircuit,
    GeneralGate,
    LinearDepth2Circuit,
    MiddleGate,
    OutputGate,
    TruthTable,
    collapse,
    computes_linear,
    equivalent,
)
from wirelab.generators import linear_output_instance, random_general
from wirelab.gf2 import Gf2Matrix, Gf2Vector
from wirelab.transforms import (
    NonLinearGateError,
    cap_fanin,
    linearize,
    normalize_output_xor,
    remove_direct_wires,
    zero_normalize_middle,
)


def parity_out(mids, fanin=None, negated=False):
    mids = tuple(mids)
    return OutputGate(mids, (), TruthTable.parity(len(mids), negated=negated))


# --- cap_fanin ---------------------------------------------------------------

def test_cap_fanin_leaves_small_circuits_alone():
    c = random_general(4, 5, seed=1)
    assert cap_fanin(c) is c


def test_cap_fanin_single_wide_gate():
    # fanin n+3 = 7 over distinct predecessors (4 inputs + 3 gates), n = 4
    n = 4
    g_and = GeneralGate((0, 1), TruthTable(2, 0b1000))
    g_or = GeneralGate((2, 3), TruthTable(2, 0b1110))
    g_x = GeneralGate((0, 3), TruthTable.parity(2))
    wide = GeneralGate((0, 1, 2, 3, 4, 5, 6), TruthTable(7, (1 << 128) // 7))
    c = GeneralCircuit(n, (g_and, g_or, g_x, wide), (7, 7, 7, 7))
    capped = cap_fanin(c, cap=8)
    assert max(len(g.preds) for g in capped.gates) <= n
    assert capped.gates[3].preds == (0, 1, 2, 3)
    assert collapse(capped, cap=8) == collapse(c, cap=8)
    assert capped.wire_count() < c.wire_count()


def test_cap_fanin_chain_of_wide_gates():
    c = random_general(5, 6, seed=14, over_fanin_gates=2)
    capped = cap_fanin(c, cap=8)
    assert capped.wire_count() < c.wire_count()
    assert collapse(capped, cap=8) == collapse(c, cap=8)


def test_cap_fanin_idempotent():
    c = random_general(5, 6, seed=21, over_fanin_gates=3)
    once = cap_fanin(c, cap=8)
    assert cap_fanin(once, cap=8) == once


def test_cap_fanin_cap_enforced():
    c = random_general(5, 3, seed=2, over_fanin_gates=1)
    with pytest.raises(ValueError):
        cap_fanin(c, cap=4)


# --- remove_direct_wires -----------------------------------------------------

def test_remove_direct_wires_noop():
    c, _ = linear_output_instance(4, 4, 0.5, seed=30)
    c_no = remove_direct_wires(c)
    if not c.direct_wires():
        assert c_no is c
    assert c_no.direct_wires() == 0


def test_remove_direct_wires_pure_wiring():
    # y_i = x_i via n direct wires only
    n = 4
    c = Depth2Circuit(
        n, (), tuple(OutputGate((), (i,), TruthTable.identity()) for i in range(n))
    )
    fixed = remove_direct_wires(c)
    assert fixed.direct_wires() == 0
    assert len(fixed.middle) == n
    assert all(m.table == TruthTable.identity() for m in fixed.middle)
    assert c.wire_count() == n and fixed.wire_count() == 2 * n
    assert equivalent(c, fixed, cap=8)


def test_remove_direct_wires_mixed_random():
    found = 0
    for seed in range(15, 40):
        c, _ = linear_output_instance(5, 5, 0.5, seed=seed)
        if not c.direct_wires():
            continue
        found += 1
        fixed = remove_direct_wires(c)
        assert fixed.direct_wires() == 0
        assert fixed.wire_count() - c.wire_count() <= c.n
        assert equivalent(c, fixed, cap=8)
    assert found >= 3


def test_remove_direct_wires_shares_gate_per_input():
    # both outputs use x0 directly: one identity gate serves both wires
    c = Depth2Circuit(
        2,
        (),
        (
            OutputGate((), (0,), TruthTable.identity()),
            OutputGate((), (0, 1), TruthTable.parity(2)),
        ),
    )
    fixed = remove_direct_wires(c)
    assert len(fixed.middle) == 2
    assert fixed.wire_count() == c.wire_count() + 2
    assert equivalent(c, fixed, cap=4)


# --- normalize_output_xor ----------------------------------------------------

def test_normalize_noop_on_pure_xor():
    c = LinearDepth2Circuit.from_matrix(Gf2Matrix.identity(3)).to_depth2()
    assert normalize_output_xor(c) is c


def test_normalize_single_negated_output():
    mids = (MiddleGate((0,), TruthTable.identity()), MiddleGate((1,), TruthTable.identity()))
    outs = (parity_out([0], negated=True), parity_out([1]))
    c = Depth2Circuit(2, mids, outs)
    fixed = normalize_output_xor(c)
    assert len(fixed.middle) == 3  # one constant-1 gate appended
    assert fixed.middle[2].table == TruthTable.constant(1)
    assert fixed.wire_count() == c.wire_count() + 1
    assert equivalent(c, fixed, cap=4)
    for o in fixed.outputs:
        assert o.table == TruthTable.parity(len(o.mids))


def test_normalize_drops_ignored_wires():
    # output lists two middle gates but only XORs the first
    mids = (MiddleGate((0,), TruthTable.identity()), MiddleGate((1,), TruthTable.identity()))
    t = TruthTable.parity(2, positions=[0])
    c = Depth2Circuit(2, mids, (OutputGate((0, 1), (), t), parity_out([1])))
    fixed = normalize_output_xor(c)
    assert fixed.outputs[0].mids == (0,)
    assert fixed.wire_count() == c.wire_count() - 1
    assert equivalent(c, fixed, cap=4)


def test_normalize_rejects_nonlinear_output_with_index():
    mids = (MiddleGate((0,), TruthTable.identity()), MiddleGate((1,), TruthTable.identity()))
    and_gate = OutputGate((0, 1), (), TruthTable(2, 0b1000))
    c = Depth2Circuit(2, mids, (parity_out([0]), and_gate))
    with pytest.raises(NonLinearGateError) as err:
        normalize_output_xor(c)
    assert err.value.index == 1


def test_normalize_requires_no_direct_wires():
    c = Depth2Circuit(1, (), (OutputGate((), (0,), TruthTable.identity()),))
    with pytest.raises(ValueError):
        normalize_output_xor(c)


# --- zero_normalize_middle ---------------------------------------------------

def test_zero_normalize_noop_when_clean():
    c = LinearDepth2Circuit.from_matrix(Gf2Matrix.identity(3)).to_depth2()
    assert zero_normalize_middle(c) is c


def test_zero_normalize_flips_in_cancelling_pairs():
    # two NAND-at-zero gates feeding the same output cancel before and after
    t = TruthTable(2, 0b0111)  # value 1 at the all-zero assignment
    mids = (MiddleGate((0, 1), t), MiddleGate((0, 1), t), MiddleGate((2,), TruthTable.identity()))
    c = Depth2Circuit(3, mids, (parity_out([0, 1, 2]), parity_out([]), parity_out([])))
    fixed = zero_normalize_middle(c)
    assert all(m.table.value(0) == 0 for m in fixed.middle)
    assert fixed.wire_count() == c.wire_count()
    assert equivalent(c, fixed, cap=8)


def test_zero_normalize_complements_unpaired_gate():
    # h1 = NOT x0, h2 = const 1, y = h1 XOR h2 = x0: flipping only the
    # all-zero table entries would zero the circuit; complementing keeps it
    mids = (
        MiddleGate((0,), TruthTable(1, 0b01)),  # NOT x0
        MiddleGate((), TruthTable.constant(1)),
    )
    c = Depth2Circuit(1, mids, (parity_out([0, 1]),))
    fixed = zero_normalize_middle(c)
    assert all(m.table.value(0) == 0 for m in fixed.middle)
    assert equivalent(c, fixed, cap=2)
    assert fixed.eval(Gf2Vector(1, 1)) == Gf2Vector(1, 1)


def test_zero_normalize_requires_zero_image_of_zero():
    c = Depth2Circuit(
        1, (MiddleGate((), TruthTable.constant(1)),), (parity_out([0]),)
    )
    with pytest.raises(ValueError):
        zero_normalize_middle(c)  # f(0) = 1


def test_zero_normalize_requires_pure_parities():
    c = Depth2Circuit(
        1, (MiddleGate((0,), TruthTable.identity()),), (parity_out([0], negated=True),)
    )
    with pytest.raises(ValueError):
        zero_normalize_middle(c)


# --- linearize ---------------------------------------------------------------

def test_linearize_fixed_point_on_linear_circuit():
    from wirelab.generators import random_linear_circuit

    lin = random_linear_circuit(4, 5, 0.5, seed=18)
    out, report = linearize(lin.to_depth2(), cap=8)
    assert out == lin
    assert report.added == 0
    assert report.added_first_level == 0 and report.added_second_level == 0


def test_linearize_cancellation_pair_instance():
    # two identical AND gates feeding the same output contribute nothing
    and_t = TruthTable(2, 0b1000)
    mids = (
        MiddleGate((0, 1), and_t),
        MiddleGate((0, 1), and_t),
        MiddleGate((2,), TruthTable.identity()),
    )
    outs = (parity_out([0, 1, 2]), parity_out([]), parity_out([]))
    c = Depth2Circuit(3, mids, outs)
    lin, report = linearize(c, cap=8)
    assert equivalent(c, lin, cap=8)
    assert report.within_budget(3)
    want = Gf2Matrix.from_rows([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    assert lin.operator_matrix() == want
    # the AND pair is non-zero on no unit vector: its columns of M are empty
    assert report.m.column(0).bits == 0 and report.m.column(1).bits == 0


def test_linearize_stage2_constant_gate_ends_dead():
    # negated output forces the constant gate; the zero-normalization then
    # turns it into a constant-0 whose wires stay behind harmlessly
    mids = (MiddleGate((0,), TruthTable(1, 0b01)),)  # NOT x0
    c = Depth2Circuit(1, mids, (parity_out([0], negated=True),))  # y = x0
    assert computes_linear(c, cap=2) == Gf2Matrix.identity(1)
    lin, report = linearize(c, cap=2)
    assert equivalent(c, lin, cap=2)
    assert report.within_budget(1)
    assert lin.negations.bits == 0


def test_linearize_requires_linear_semantics():
    and_only = Depth2Circuit(
        2,
        (MiddleGate((0, 1), TruthTable(2, 0b1000)),),
        (parity_out([0]), parity_out([])),
    )
    with pytest.raises(ValueError):
        linearize(and_only, cap=4)


def test_linearize_batch_budget_and_equivalence():
    for seed in range(60):
        n = 3 + seed % 6
        c, planted = linear_output_instance(n, 1 + seed % 12, 0.5, seed=seed)
        lin, report = linearize(c, cap=8)
        assert equivalent(c, lin, cap=8)
        assert report.wires_after <= report.wires_before + 2 * n
        assert lin.operator_matrix() == planted
        assert report.m.popcount() <= zero_normalize_middle(
            normalize_output_xor(remove_direct_wires(c))
        ).first_level_wires()


def test_linearize_second_level_unchanged_by_final_stage():
    for seed in (3, 11, 19):
        c, _ = linear_output_instance(5, 6, 0.5, seed=seed)
        s3 = zero_normalize_middle(normalize_output_xor(remove_direct_wires(c)))
        lin, _ = linearize(c, cap=8)
        assert lin.second_level.popcount() == s3.second_level_wires()
