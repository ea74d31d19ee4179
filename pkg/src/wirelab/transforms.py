"""Semantics-preserving circuit passes with machine-checkable wire budgets.

The linearization pipeline turns a depth-2 circuit with linear output
gates that computes a matrix-vector product into an all-parity circuit:

1. ``remove_direct_wires``   - reroute input->output wires through fresh
   identity middle gates (adds at most n first-level wires);
2. ``normalize_output_xor``  - make every output a pure XOR of its wires,
   paying for negations with one shared constant-1 middle gate (adds at
   most n second-level wires);
3. ``zero_normalize_middle`` - complement middle gates so every gate
   outputs 0 on the all-zero assignment of its own inputs (wire counts
   untouched);
4. replace the middle layer by the parity gates read off the unit-vector
   responses of the normalized middle operator; the second-level wiring
   is kept as is.

Stage 3 complements whole tables rather than single entries: because the
output gates are pure parities and the circuit maps 0 to 0, the constant
deltas introduced by complementing cancel, so the pass is equivalence
preserving; after it, a middle gate with no wire from input i responds 0
to the i-th unit vector, which is what keeps stage 4 inside the wire
budget.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import (
    DEFAULT_EXHAUSTIVE_CAP,
    Depth2Circuit,
    GeneralCircuit,
    GeneralGate,
    LinearDepth2Circuit,
    MiddleGate,
    OutputGate,
    TruthTable,
    computes_linear,
    is_linear_gate,
)
from .gf2 import Gf2Matrix, Gf2Vector
from . import _kernels


class NonLinearGateError(ValueError):
    """An output gate that must be a parity is not one."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"output gate {index} is not a (possibly negated) parity")


@dataclass(frozen=True)
class LinearizationReport:
    """Wire accounting of one linearization run.

    ``added_first_level`` counts the identity gates created while
    removing direct wires, ``added_second_level`` the wires paid to the
    constant gate for negated outputs; ``m`` is the n-by-r matrix whose
    row i holds the normalized middle layer's response to unit vector i.
    """

    wires_before: int
    wires_after: int
    added_first_level: int
    added_second_level: int
    m: Gf2Matrix

    @property
    def added(self) -> int:
        return self.wires_after - self.wires_before

    def budget(self, n: int) -> int:
        return 2 * n

    def within_budget(self, n: int) -> bool:
        return self.wires_after <= self.wires_before + self.budget(n)


def cap_fanin(c: GeneralCircuit, cap: int = DEFAULT_EXHAUSTIVE_CAP) -> GeneralCircuit:
    """Rewire every gate of fanin > n straight to the n inputs.

    The replacement gate computes the same function of the circuit
    inputs (obtained exhaustively), so the circuit's behaviour is
    unchanged while its wire count can only drop.  Gates of fanin <= n
    are left untouched; a second application is a no-op.
    """
    n = c.n
    if n > cap:
        raise ValueError(f"exhaustive rewiring capped at n={cap}, got n={n}")
    if all(len(g.preds) <= n for g in c.gates):
        return c
    vecs = _kernels.node_vectors_general(
        n, [g.preds for g in c.gates], [g.table.bits for g in c.gates]
    )
    all_inputs = tuple(range(n))
    gates = []
    for k, g in enumerate(c.gates):
        if len(g.preds) <= n:
            gates.append(g)
        else:
            gates.append(GeneralGate(all_inputs, TruthTable(n, vecs[n + k])))
    return GeneralCircuit(n, tuple(gates), c.outputs)


def remove_direct_wires(c: Depth2Circuit) -> Depth2Circuit:
    """Reroute every direct input->output wire through an identity middle gate.

    One identity gate is added per input that has direct wires (not per
    wire), appended after the existing middle gates in input order; each
    direct wire re-enters at its old argument position, so output tables
    are unchanged.
    """
    direct_inputs = sorted({i for o in c.outputs for i in o.directs})
    if not direct_inputs:
        return c
    base = len(c.middle)
    gate_for = {i: base + k for k, i in enumerate(direct_inputs)}
    middle = list(c.middle) + [MiddleGate((i,), TruthTable.identity()) for i in direct_inputs]
    outputs = [
        OutputGate(o.mids + tuple(gate_for[i] for i in o.directs), (), o.table)
        for o in c.outputs
    ]
    return Depth2Circuit(c.n, tuple(middle), tuple(outputs))


def normalize_output_xor(c: Depth2Circuit) -> Depth2Circuit:
    """Make every output gate a pure XOR of its listed middle gates.

    Wires an output's parity ignores are dropped; a negated parity is
    rewired to one shared constant-1 middle gate (added on demand, fanin
    0) which absorbs the complement.  Raises NonLinearGateError when an
    output gate is not a parity at all.
    """
    for o in c.outputs:
        if o.directs:
            raise ValueError("direct wires must be removed first")
    parsed = []
    dirty = False
    for i, o in enumerate(c.outputs):
        lin = is_linear_gate(o.table)
        if lin is None:
            raise NonLinearGateError(i)
        positions, negated = lin
        parsed.append((positions, negated))
        if negated or len(positions) != len(o.mids):
            dirty = True
    if not dirty:
        return c
    const_index = len(c.middle)
    const_used = False
    outputs = []
    for o, (positions, negated) in zip(c.outputs, parsed):
        mids = tuple(o.mids[p] for p in positions)
        if negated:
            const_used = True
            mids = mids + (const_index,)
        outputs.append(OutputGate(mids, (), TruthTable.parity(len(mids))))
    middle = c.middle + ((MiddleGate((), TruthTable.constant(1)),) if const_used else ())
    return Depth2Circuit(c.n, middle, tuple(outputs))


def zero_normalize_middle(c: Depth2Circuit) -> Depth2Circuit:
    """Complement middle gates so each outputs 0 on its all-zero assignment.

    Requires pure-parity outputs, no direct wires and a circuit mapping 0
    to 0: complementing a middle gate then flips the parities fed by it
    uniformly, and the total flip - the circuit's value at 0 - is zero.
    Wire counts are untouched.
    """
    for i, o in enumerate(c.outputs):
        if o.directs:
            raise ValueError("direct wires must be removed first")
        if is_linear_gate(o.table) != (tuple(range(len(o.mids))), False):
            raise ValueError(f"output gate {i} is not a pure parity of its wires")
    if c.eval(Gf2Vector.zero(c.n)).bits:
        raise ValueError("circuit does not map the zero vector to zero")
    if all(m.table.value(0) == 0 for m in c.middle):
        return c
    middle = tuple(
        m if m.table.value(0) == 0 else MiddleGate(m.inputs, m.table.complement())
        for m in c.middle
    )
    return Depth2Circuit(c.n, middle, c.outputs)


def middle_responses(c: Depth2Circuit, x: Gf2Vector) -> Gf2Vector:
    """Values of the middle layer on input ``x``, as a length-r vector."""
    bits = 0
    for j, m in enumerate(c.middle):
        idx = 0
        for k, i in enumerate(m.inputs):
            idx |= ((x.bits >> i) & 1) << k
        bits |= m.table.value(idx) << j
    return Gf2Vector(len(c.middle), bits)


def linearize(
    c: Depth2Circuit, cap: int = DEFAULT_EXHAUSTIVE_CAP
) -> tuple[LinearDepth2Circuit, LinearizationReport]:
    """Full pipeline: an equivalent all-parity circuit plus wire accounting.

    Requires linear output gates and a circuit computing a matrix-vector
    product; the result computes the same operator with at most 2n more
    wires, its first level never wider than the normalized circuit's.
    """
    if c.n > cap:
        raise ValueError(f"linearize capped at n={cap}, got n={c.n}")
    if computes_linear(c, cap) is None:
        raise ValueError("circuit does not compute a linear operator")
    s1 = remove_direct_wires(c)
    s2 = normalize_output_xor(s1)
    s3 = zero_normalize_middle(s2)

    n, r = c.n, len(s3.middle)
    m_words = [middle_responses(s3, Gf2Vector.unit(n, i)).bits for i in range(n)]
    m = Gf2Matrix(n, r, tuple(m_words))
    first = m.transpose()
    second = Gf2Matrix(
        n, r, tuple(sum(1 << j for j in o.mids) for o in s3.outputs)
    )
    result = LinearDepth2Circuit(first, second, Gf2Vector.zero(n))

    added_fl = s1.first_level_wires() - c.first_level_wires()
    added_sl = sum(1 for o in s1.outputs if is_linear_gate(o.table)[1])
    report = LinearizationReport(
        wires_before=c.wire_count(),
        wires_after=result.wire_count(),
        added_first_level=added_fl,
        added_second_level=added_sl,
        m=m,
    )
    return result, report
