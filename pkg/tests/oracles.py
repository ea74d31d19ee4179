"""Naive reference implementations used as oracles by the tests.

Everything here works point by point on plain Python lists, independent
of the library's bitset and batch-evaluation paths.
"""

from __future__ import annotations


def table_lookup(bits: int, args: list[int]) -> int:
    idx = 0
    for k, b in enumerate(args):
        idx += b << k
    return (bits >> idx) & 1


def eval_depth2(c, x: list[int]) -> list[int]:
    """Straightforward two-pass interpreter for a Depth2Circuit."""
    mid = [table_lookup(m.table.bits, [x[i] for i in m.inputs]) for m in c.middle]
    out = []
    for o in c.outputs:
        args = [mid[j] for j in o.mids] + [x[i] for i in o.directs]
        out.append(table_lookup(o.table.bits, args))
    return out


def eval_general(c, x: list[int]) -> list[int]:
    """Sequential interpreter for a GeneralCircuit, values kept in a dict."""
    val = {i: x[i] for i in range(c.n)}
    for k, g in enumerate(c.gates):
        val[c.n + k] = table_lookup(g.table.bits, [val[p] for p in g.preds])
    return [val[o] for o in c.outputs]


def matvec_mod2(rows: list[list[int]], v: list[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) % 2 for row in rows]


def rank_mod2(rows: list[list[int]]) -> int:
    """Row-echelon elimination on copies, counting pivots."""
    work = [row[:] for row in rows]
    ncols = len(work[0]) if work else 0
    rk = 0
    for j in range(ncols):
        pivot = None
        for i in range(rk, len(work)):
            if work[i][j]:
                pivot = i
                break
        if pivot is None:
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        for i in range(len(work)):
            if i != rk and work[i][j]:
                work[i] = [(a + b) % 2 for a, b in zip(work[i], work[rk])]
        rk += 1
    return rk


def matrix_lists(m) -> list[list[int]]:
    return [list(m.row(i).coords()) for i in range(m.rows)]
