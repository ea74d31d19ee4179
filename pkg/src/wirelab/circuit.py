"""Circuit models: general DAG circuits and depth-2 circuits with
arbitrary gates, plus evaluation, wire/depth accounting, linearity
checks and text serialization.

Conventions used throughout:

* a truth table over ``d`` arguments stores its value for assignment
  ``b`` at bit index ``b``, where the first-listed argument is the least
  significant bit of ``b``;
* an input vector ``x`` is encoded as an int with coordinate ``i`` at
  bit ``i``, so exhaustive sweeps simply run ``x`` from 0 to 2**n - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .gf2 import Gf2Matrix, Gf2Vector, matmul, matvec

MAX_FANIN = 24
DEFAULT_EXHAUSTIVE_CAP = 20


@dataclass(frozen=True)
class TruthTable:
    """A gate function on ``fanin`` ordered arguments, packed into ``bits``."""

    fanin: int
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.fanin <= MAX_FANIN:
            raise ValueError(f"fanin must be in [0, {MAX_FANIN}]")
        if self.bits < 0 or self.bits >> (1 << self.fanin):
            raise ValueError("table has bits beyond 2**fanin entries")

    @staticmethod
    def constant(value: int) -> "TruthTable":
        return TruthTable(0, value & 1)

    @staticmethod
    def parity(fanin: int, positions=None, negated: bool = False) -> "TruthTable":
        """XOR of the arguments at ``positions`` (all of them by default)."""
        mask = (1 << fanin) - 1 if positions is None else sum(1 << p for p in set(positions))
        return TruthTable(fanin, _kernels.parity_table(fanin, mask, int(negated)))

    @staticmethod
    def identity() -> "TruthTable":
        return TruthTable.parity(1)

    def value(self, assignment: int) -> int:
        if not 0 <= assignment < (1 << self.fanin):
            raise ValueError("assignment out of range")
        return (self.bits >> assignment) & 1

    def complement(self) -> "TruthTable":
        return TruthTable(self.fanin, self.bits ^ ((1 << (1 << self.fanin)) - 1))


@dataclass(frozen=True)
class GeneralGate:
    preds: tuple[int, ...]
    table: TruthTable

    def __post_init__(self) -> None:
        if len(self.preds) != self.table.fanin:
            raise ValueError("fanin disagrees with predecessor count")


@dataclass(frozen=True)
class GeneralCircuit:
    """DAG circuit: nodes 0..n-1 are inputs, gate ``k`` is node ``n + k``.

    Predecessor lists may repeat a node; every occurrence is a separate
    wire and a separate truth-table argument.
    """

    n: int
    gates: tuple[GeneralGate, ...]
    outputs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one input")
        for k, g in enumerate(self.gates):
            node = self.n + k
            for p in g.preds:
                if not 0 <= p < node:
                    raise ValueError(f"gate {node} has predecessor {p} not before it")
        total = self.n + len(self.gates)
        if len(self.outputs) != self.n:
            raise ValueError("need exactly n output nodes")
        for o in self.outputs:
            if not 0 <= o < total:
                raise ValueError(f"output node {o} does not exist")

    def eval(self, x: Gf2Vector) -> Gf2Vector:
        if x.length != self.n:
            raise ValueError("input length mismatch")
        vals = [(x.bits >> i) & 1 for i in range(self.n)]
        for g in self.gates:
            idx = 0
            for k, p in enumerate(g.preds):
                idx |= vals[p] << k
            vals.append(g.table.value(idx))
        return Gf2Vector.from_coords(vals[o] for o in self.outputs)

    def wire_count(self) -> int:
        return sum(len(g.preds) for g in self.gates)

    def depth(self) -> int:
        # longest input-to-output path; nodes unreachable from inputs carry None
        dist: list[int | None] = [0] * self.n
        for g in self.gates:
            best = None
            for p in g.preds:
                if dist[p] is not None:
                    best = dist[p] if best is None else max(best, dist[p])
            dist.append(None if best is None else best + 1)
        reach = [dist[o] for o in self.outputs if dist[o] is not None]
        return max(reach, default=0)


@dataclass(frozen=True)
class MiddleGate:
    inputs: tuple[int, ...]
    table: TruthTable

    def __post_init__(self) -> None:
        if len(self.inputs) != self.table.fanin:
            raise ValueError("fanin disagrees with input count")
        if len(set(self.inputs)) != len(self.inputs):
            raise ValueError("duplicate input wire")


@dataclass(frozen=True)
class OutputGate:
    """Output gate arguments are the listed middle gates followed by the
    listed direct inputs, in that order."""

    mids: tuple[int, ...]
    directs: tuple[int, ...]
    table: TruthTable

    def __post_init__(self) -> None:
        if len(self.mids) + len(self.directs) != self.table.fanin:
            raise ValueError("fanin disagrees with wire count")
        if len(set(self.mids)) != len(self.mids) or len(set(self.directs)) != len(self.directs):
            raise ValueError("duplicate wire")


@dataclass(frozen=True)
class Depth2Circuit:
    n: int
    middle: tuple[MiddleGate, ...]
    outputs: tuple[OutputGate, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one input")
        if len(self.outputs) != self.n:
            raise ValueError("need exactly n output gates")
        r = len(self.middle)
        for m in self.middle:
            for i in m.inputs:
                if not 0 <= i < self.n:
                    raise ValueError(f"middle gate wired to missing input {i}")
        for o in self.outputs:
            for j in o.mids:
                if not 0 <= j < r:
                    raise ValueError(f"output wired to missing middle gate {j}")
            for i in o.directs:
                if not 0 <= i < self.n:
                    raise ValueError(f"output wired to missing input {i}")

    @property
    def r(self) -> int:
        return len(self.middle)

    def eval(self, x: Gf2Vector) -> Gf2Vector:
        if x.length != self.n:
            raise ValueError("input length mismatch")
        mvals = []
        for m in self.middle:
            idx = 0
            for k, i in enumerate(m.inputs):
                idx |= ((x.bits >> i) & 1) << k
            mvals.append(m.table.value(idx))
        bits = 0
        for pos, o in enumerate(self.outputs):
            idx = 0
            k = 0
            for j in o.mids:
                idx |= mvals[j] << k
                k += 1
            for i in o.directs:
                idx |= ((x.bits >> i) & 1) << k
                k += 1
            bits |= o.table.value(idx) << pos
        return Gf2Vector(self.n, bits)

    def first_level_wires(self) -> int:
        return sum(len(m.inputs) for m in self.middle)

    def second_level_wires(self) -> int:
        return sum(len(o.mids) for o in self.outputs)

    def direct_wires(self) -> int:
        return sum(len(o.directs) for o in self.outputs)

    def wire_count(self) -> int:
        return self.first_level_wires() + self.second_level_wires() + self.direct_wires()

    def depth(self) -> int:
        two = any(self.middle[j].inputs for o in self.outputs for j in o.mids)
        if two:
            return 2
        if any(o.directs for o in self.outputs):
            return 1
        return 0


@dataclass(frozen=True)
class LinearDepth2Circuit:
    """All-parity depth-2 circuit x -> second_level * (first_level * x) + negations.

    ``first_level`` is the r-by-n wire adjacency between inputs and
    middle gates, ``second_level`` the n-by-r adjacency between middle
    and output gates.  Wire count is the number of 1s in the two
    matrices; negation bits are free.
    """

    first_level: Gf2Matrix
    second_level: Gf2Matrix
    negations: Gf2Vector

    def __post_init__(self) -> None:
        n, r = self.second_level.rows, self.second_level.cols
        if self.first_level.rows != r or self.first_level.cols != n:
            raise ValueError("layer shapes disagree")
        if self.negations.length != n:
            raise ValueError("negation vector length mismatch")

    @property
    def n(self) -> int:
        return self.second_level.rows

    @property
    def r(self) -> int:
        return self.first_level.rows

    @staticmethod
    def from_matrix(a: Gf2Matrix) -> "LinearDepth2Circuit":
        """Canonical two-level circuit for x -> a*x (middle layer = a's rows)."""
        if a.rows != a.cols:
            raise ValueError("operator matrix must be square")
        return LinearDepth2Circuit(a, Gf2Matrix.identity(a.rows), Gf2Vector.zero(a.rows))

    def eval(self, x: Gf2Vector) -> Gf2Vector:
        return matvec(self.second_level, matvec(self.first_level, x)) ^ self.negations

    def operator_matrix(self) -> Gf2Matrix:
        return matmul(self.second_level, self.first_level)

    def wire_count(self) -> int:
        return self.first_level.popcount() + self.second_level.popcount()

    def depth(self) -> int:
        for j in range(self.r):
            if self.first_level.row_words[j] and self.second_level.column(j).bits:
                return 2
        return 0

    def to_depth2(self) -> Depth2Circuit:
        mids = tuple(
            MiddleGate(_word_indices(self.first_level.row_words[j]), TruthTable.parity(self.first_level.row_words[j].bit_count()))
            for j in range(self.r)
        )
        outs = []
        for i in range(self.n):
            w = self.second_level.row_words[i]
            outs.append(
                OutputGate(
                    _word_indices(w),
                    (),
                    TruthTable.parity(w.bit_count(), negated=bool(self.negations.bit(i))),
                )
            )
        return Depth2Circuit(self.n, mids, tuple(outs))


Circuit = GeneralCircuit | Depth2Circuit | LinearDepth2Circuit


@dataclass(frozen=True)
class OperatorTable:
    """Exhaustive behaviour of an n-operator.

    ``columns[i]`` is the value vector of output coordinate ``i``: its
    bit ``x`` is the output on input ``x``.
    """

    n: int
    columns: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.columns) != self.n:
            raise ValueError("need one value vector per output")
        total = 1 << self.n
        for c in self.columns:
            if c < 0 or c >> total:
                raise ValueError("value vector has bits beyond 2**n entries")

    def value_at(self, x: int) -> Gf2Vector:
        if not 0 <= x < (1 << self.n):
            raise ValueError("input index out of range")
        bits = 0
        for i, c in enumerate(self.columns):
            bits |= ((c >> x) & 1) << i
        return Gf2Vector(self.n, bits)


def _word_indices(word: int) -> tuple[int, ...]:
    out = []
    while word:
        out.append((word & -word).bit_length() - 1)
        word &= word - 1
    return tuple(out)


def evaluate(c: Circuit, x: Gf2Vector) -> Gf2Vector:
    return c.eval(x)


def wires(c: Circuit) -> int:
    return c.wire_count()


def depth(c: Circuit) -> int:
    return c.depth()


def collapse(c: Circuit, cap: int = DEFAULT_EXHAUSTIVE_CAP) -> OperatorTable:
    """Evaluate ``c`` on all 2**n inputs."""
    n = c.n
    if n > cap:
        raise ValueError(f"exhaustive evaluation capped at n={cap}, got n={n}")
    if isinstance(c, GeneralCircuit):
        vecs = _kernels.node_vectors_general(
            n, [g.preds for g in c.gates], [g.table.bits for g in c.gates]
        )
        return OperatorTable(n, tuple(vecs[o] for o in c.outputs))
    if isinstance(c, Depth2Circuit):
        cols = _kernels.output_vectors_depth2(
            n,
            [m.inputs for m in c.middle],
            [m.table.bits for m in c.middle],
            [o.mids for o in c.outputs],
            [o.directs for o in c.outputs],
            [o.table.bits for o in c.outputs],
        )
        return OperatorTable(n, tuple(cols))
    if isinstance(c, LinearDepth2Circuit):
        return operator_table_of_matrix(c.operator_matrix(), c.negations)
    raise TypeError(f"not a circuit: {type(c).__name__}")


def operator_table_of_matrix(a: Gf2Matrix, negations: Gf2Vector | None = None) -> OperatorTable:
    """Operator table of x -> a*x (+ negations), built without a circuit."""
    n = a.rows
    if a.cols != n:
        raise ValueError("operator matrix must be square")
    full = (1 << (1 << n)) - 1
    masks = [_kernels.variable_mask(i, n) for i in range(n)]
    cols = []
    for i in range(n):
        acc = full if negations is not None and negations.bit(i) else 0
        for j in _word_indices(a.row_words[i]):
            acc ^= masks[j]
        cols.append(acc)
    return OperatorTable(n, tuple(cols))


def equivalent(c1: Circuit, c2: Circuit, cap: int = DEFAULT_EXHAUSTIVE_CAP) -> bool:
    """Exhaustive equivalence of two circuits on all 2**n inputs."""
    if c1.n != c2.n:
        raise ValueError("circuits have different input counts")
    return collapse(c1, cap) == collapse(c2, cap)


def is_linear_gate(t: TruthTable) -> tuple[tuple[int, ...], bool] | None:
    """Parity structure of a gate, if it has one.

    Returns ``(positions, negated)`` such that the gate XORs exactly the
    arguments at ``positions`` (complemented when ``negated``), or None
    when the table is not a parity.  Positions missing from the result
    are arguments the gate ignores.
    """
    mask, neg = _kernels.parity_candidate(t.bits, t.fanin)
    if t.bits != _kernels.parity_table(t.fanin, mask, neg):
        return None
    return _word_indices(mask), bool(neg)


def computes_linear(c: Circuit, cap: int = DEFAULT_EXHAUSTIVE_CAP) -> Gf2Matrix | None:
    """The matrix ``a`` with c(x) = a*x for all x, or None.

    The candidate is read off the unit vectors, then verified
    exhaustively; circuits with c(0) != 0 always fail.
    """
    n = c.n
    if n > cap:
        raise ValueError(f"exhaustive check capped at n={cap}, got n={n}")
    unit_images = [c.eval(Gf2Vector.unit(n, j)) for j in range(n)]
    words = [0] * n
    for j, img in enumerate(unit_images):
        for i in range(n):
            words[i] |= img.bit(i) << j
    a = Gf2Matrix(n, n, tuple(words))
    if collapse(c, cap) != operator_table_of_matrix(a):
        return None
    return a


def weakly_computes(c: Circuit, a: Gf2Matrix) -> bool:
    """True iff ``c`` agrees with x -> a*x on every unit vector."""
    n = c.n
    if a.rows != n or a.cols != n:
        raise ValueError("matrix must be n-by-n")
    for j in range(n):
        e = Gf2Vector.unit(n, j)
        if c.eval(e) != matvec(a, e):
            return False
    return True


# ---------------------------------------------------------------------------
# text serialization
#
# Truth tables are written as hex with the nibble holding table bits 0-3
# first (bit 0 = least significant bit of the first nibble).

def table_to_hex(t: TruthTable) -> str:
    n_nibbles = max(1, ((1 << t.fanin) + 3) // 4)
    return "".join(format((t.bits >> (4 * k)) & 0xF, "x") for k in range(n_nibbles))


def table_from_hex(text: str, fanin: int) -> TruthTable:
    bits = 0
    for k, ch in enumerate(text):
        bits |= int(ch, 16) << (4 * k)
    return TruthTable(fanin, bits)


def _ints(tokens) -> tuple[int, ...]:
    return tuple(int(t) for t in tokens)


def _field(keyword: str, indices) -> str:
    toks = " ".join(map(str, indices))
    return f"{keyword} {toks}" if toks else keyword


def depth2_to_text(c: Depth2Circuit) -> str:
    lines = ["depth2 v1", f"n {c.n} r {c.r}"]
    for j, m in enumerate(c.middle):
        lines.append(f"mid {j}: {_field('in', m.inputs)} ; tt {table_to_hex(m.table)}")
    for i, o in enumerate(c.outputs):
        lines.append(
            f"out {i}: {_field('mid', o.mids)} ; {_field('direct', o.directs)}"
            f" ; tt {table_to_hex(o.table)}"
        )
    return "\n".join(lines) + "\n"


def _split_fields(body: str, keywords: list[str]) -> list[list[str]]:
    parts = [p.strip() for p in body.split(";")]
    if len(parts) != len(keywords):
        raise ValueError(f"expected fields {keywords}")
    out = []
    for part, kw in zip(parts, keywords):
        if part != kw and not part.startswith(kw + " "):
            raise ValueError(f"expected field {kw!r} in {part!r}")
        out.append(part[len(kw):].split())
    return out


def _one_token(tokens: list[str], what: str) -> str:
    if len(tokens) != 1:
        raise ValueError(f"expected exactly one {what} token")
    return tokens[0]


def depth2_from_text(text: str) -> Depth2Circuit:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "depth2 v1":
        raise ValueError("missing 'depth2 v1' header")
    if len(lines) < 2:
        raise ValueError("missing size line")
    head = lines[1].split()
    if len(head) != 4 or head[0] != "n" or head[2] != "r":
        raise ValueError("bad size line")
    n, r = int(head[1]), int(head[3])
    mids: list[MiddleGate] = []
    outs: list[OutputGate] = []
    for ln in lines[2:]:
        try:
            tag, _, rest = ln.partition(":")
            kind, idx = tag.split()
            if kind == "mid":
                if int(idx) != len(mids):
                    raise ValueError("middle gates out of order")
                (ins, tt) = _split_fields(rest, ["in", "tt"])
                inputs = _ints(ins)
                mids.append(MiddleGate(inputs, table_from_hex(_one_token(tt, "tt"), len(inputs))))
            elif kind == "out":
                if int(idx) != len(outs):
                    raise ValueError("output gates out of order")
                (ms, ds, tt) = _split_fields(rest, ["mid", "direct", "tt"])
                m_idx, d_idx = _ints(ms), _ints(ds)
                outs.append(
                    OutputGate(m_idx, d_idx, table_from_hex(_one_token(tt, "tt"), len(m_idx) + len(d_idx)))
                )
            else:
                raise ValueError(f"unknown line kind {kind!r}")
        except ValueError as e:
            raise ValueError(f"bad circuit line {ln!r}: {e}") from None
    if len(mids) != r:
        raise ValueError("middle gate count disagrees with header")
    return Depth2Circuit(n, tuple(mids), tuple(outs))


def general_to_text(c: GeneralCircuit) -> str:
    lines = ["general v1", f"n {c.n}"]
    for k, g in enumerate(c.gates):
        lines.append(f"gate {c.n + k}: {_field('pred', g.preds)} ; tt {table_to_hex(g.table)}")
    lines.append("outputs " + " ".join(map(str, c.outputs)))
    return "\n".join(lines) + "\n"


def general_from_text(text: str) -> GeneralCircuit:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "general v1":
        raise ValueError("missing 'general v1' header")
    head = lines[1].split()
    if len(head) != 2 or head[0] != "n":
        raise ValueError("bad size line")
    n = int(head[1])
    gates: list[GeneralGate] = []
    outputs: tuple[int, ...] | None = None
    for ln in lines[2:]:
        try:
            if ln.startswith("outputs"):
                outputs = _ints(ln.split()[1:])
                continue
            if outputs is not None:
                raise ValueError("gate line after outputs line")
            tag, _, rest = ln.partition(":")
            kind, idx = tag.split()
            if kind != "gate" or int(idx) != n + len(gates):
                raise ValueError("gates must appear in id order")
            (ps, tt) = _split_fields(rest, ["pred", "tt"])
            preds = _ints(ps)
            gates.append(GeneralGate(preds, table_from_hex(_one_token(tt, "tt"), len(preds))))
        except ValueError as e:
            raise ValueError(f"bad circuit line {ln!r}: {e}") from None
    if outputs is None:
        raise ValueError("missing outputs line")
    return GeneralCircuit(n, tuple(gates), outputs)
