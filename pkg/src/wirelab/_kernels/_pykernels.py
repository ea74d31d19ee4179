"""Pure-Python evaluation kernels.

Circuits are evaluated on all 2**n inputs at once by manipulating
"value vectors": ints whose bit ``x`` holds a node's output on input
``x`` (input assignments are encoded with coordinate ``i`` taken from
bit ``i`` of ``x``).  Gates combine value vectors with big-int bitwise
ops, so the inner loop runs in C inside the int implementation.
"""

from __future__ import annotations

BACKEND = "python"


def variable_mask(i: int, n: int) -> int:
    """Value vector of input coordinate ``i`` over all 2**n assignments."""
    period = 1 << (i + 1)
    total = 1 << n
    m = ((1 << (1 << i)) - 1) << (1 << i)
    while period < total:
        m |= m << period
        period <<= 1
    return m


def parity_candidate(table: int, fanin: int) -> tuple[int, int]:
    """Mask of arguments and negation bit of the parity that agrees with
    ``table`` on the all-zero and all unit assignments."""
    neg = table & 1
    mask = 0
    for k in range(fanin):
        if ((table >> (1 << k)) & 1) ^ neg:
            mask |= 1 << k
    return mask, neg


def parity_table(fanin: int, mask: int, neg: int) -> int:
    """Truth table of XOR over the arguments in ``mask``, complemented if ``neg``."""
    t = neg
    width = 1
    for k in range(fanin):
        half = ~t & ((1 << width) - 1) if (mask >> k) & 1 else t
        t |= half << width
        width <<= 1
    return t


def apply_table(table: int, argvecs: list[int], full: int) -> int:
    """Value vector of a gate given its table and argument value vectors."""
    fanin = len(argvecs)
    mask, neg = parity_candidate(table, fanin)
    if table == parity_table(fanin, mask, neg):
        acc = full if neg else 0
        for k in range(fanin):
            if (mask >> k) & 1:
                acc ^= argvecs[k]
        return acc
    # general gate: OR of minterms with a set table bit
    out = 0
    for b in range(1 << fanin):
        if not (table >> b) & 1:
            continue
        term = full
        for k, v in enumerate(argvecs):
            term &= v if (b >> k) & 1 else ~v & full
            if not term:
                break
        out |= term
    return out


def node_vectors_general(n: int, preds: list[tuple[int, ...]], tables: list[int]) -> list[int]:
    """Value vectors for every node (inputs first, then gates in order)."""
    full = (1 << (1 << n)) - 1
    vecs = [variable_mask(i, n) for i in range(n)]
    for ps, t in zip(preds, tables):
        vecs.append(apply_table(t, [vecs[p] for p in ps], full))
    return vecs


def output_vectors_depth2(
    n: int,
    mid_inputs: list[tuple[int, ...]],
    mid_tables: list[int],
    out_mids: list[tuple[int, ...]],
    out_directs: list[tuple[int, ...]],
    out_tables: list[int],
) -> list[int]:
    """Per-output value vectors of a depth-2 circuit over all 2**n inputs."""
    full = (1 << (1 << n)) - 1
    xvecs = [variable_mask(i, n) for i in range(n)]
    mvecs = [
        apply_table(t, [xvecs[i] for i in ins], full)
        for ins, t in zip(mid_inputs, mid_tables)
    ]
    out = []
    for mids, directs, t in zip(out_mids, out_directs, out_tables):
        args = [mvecs[j] for j in mids] + [xvecs[i] for i in directs]
        out.append(apply_table(t, args, full))
    return out
