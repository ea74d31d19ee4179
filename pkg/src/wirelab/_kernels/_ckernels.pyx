# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled evaluation kernels.

Same contract as ``_pykernels``: given flattened gate descriptions,
return per-node (or per-output) value vectors as ints whose bit ``x``
holds the value on input ``x``.  The exhaustive sweep over all 2**n
inputs runs as plain C loops; truth tables are unpacked into a shared
byte-aligned bit buffer up front.
"""

from libc.stdlib cimport free, malloc

BACKEND = "cython"


cdef struct GateArrays:
    int count
    int* fanin
    long long* arg_off
    int* args
    long long* tbl_off   # byte offsets into the shared table buffer


cdef int _fill_gates(GateArrays* g, list arg_lists, list tables, bytearray tbuf) except -1:
    """Flatten argument lists and append each gate's table bits (byte aligned)."""
    cdef int count = len(arg_lists)
    cdef int total_args = 0
    for ps in arg_lists:
        total_args += len(ps)
    g.count = count
    g.fanin = <int*>malloc(count * sizeof(int))
    g.arg_off = <long long*>malloc((count + 1) * sizeof(long long))
    g.args = <int*>malloc((total_args if total_args else 1) * sizeof(int))
    g.tbl_off = <long long*>malloc(count * sizeof(long long))
    if not (g.fanin and g.arg_off and g.args and g.tbl_off):
        raise MemoryError()
    cdef long long pos = 0
    cdef int k, i
    for k in range(count):
        ps = arg_lists[k]
        g.fanin[k] = len(ps)
        g.arg_off[k] = pos
        for i in range(len(ps)):
            g.args[pos] = ps[i]
            pos += 1
        g.tbl_off[k] = len(tbuf)
        t = tables[k]
        tbuf += t.to_bytes((((1 << g.fanin[k]) + 7) >> 3), "little")
    g.arg_off[count] = pos
    return 0


cdef void _free_gates(GateArrays* g) noexcept:
    free(g.fanin)
    free(g.arg_off)
    free(g.args)
    free(g.tbl_off)


cdef inline unsigned char _table_bit(const unsigned char* tbl, long long boff, long long idx) noexcept nogil:
    return (tbl[boff + (idx >> 3)] >> (idx & 7)) & 1


def node_vectors_general(int n, list preds, list tables):
    """Value vectors for every node (inputs first, then gates in order)."""
    cdef GateArrays g
    g.fanin = NULL; g.arg_off = NULL; g.args = NULL; g.tbl_off = NULL
    cdef bytearray tbuf = bytearray()
    _fill_gates(&g, preds, tables, tbuf)

    cdef long long total = 1LL << n
    cdef Py_ssize_t bpv = <Py_ssize_t>((total + 7) >> 3)
    cdef int num_nodes = n + g.count
    cdef bytearray obuf = bytearray(num_nodes * bpv)
    cdef unsigned char* out = <unsigned char*><char*>obuf
    cdef const unsigned char* tbl = <const unsigned char*><char*>tbuf
    cdef unsigned char* vals = <unsigned char*>malloc(num_nodes if num_nodes else 1)
    if not vals:
        _free_gates(&g)
        raise MemoryError()

    cdef long long x, idx
    cdef long long off
    cdef int i, k, node
    try:
        with nogil:
            for x in range(total):
                for i in range(n):
                    vals[i] = <unsigned char>((x >> i) & 1)
                for k in range(g.count):
                    idx = 0
                    off = g.arg_off[k]
                    for i in range(g.fanin[k]):
                        idx |= (<long long>vals[g.args[off + i]]) << i
                    vals[n + k] = _table_bit(tbl, g.tbl_off[k], idx)
                for node in range(num_nodes):
                    if vals[node]:
                        out[node * bpv + (x >> 3)] |= <unsigned char>(1 << (x & 7))
    finally:
        free(vals)
        _free_gates(&g)
    return [
        int.from_bytes(obuf[node * bpv:(node + 1) * bpv], "little")
        for node in range(num_nodes)
    ]


def output_vectors_depth2(int n, list mid_inputs, list mid_tables,
                          list out_mids, list out_directs, list out_tables):
    """Per-output value vectors of a depth-2 circuit over all 2**n inputs."""
    # output argument lists: middle indices first, then direct inputs
    # (encoded as r + input index so one args array serves both)
    cdef int r = len(mid_inputs)
    merged = [
        tuple(ms) + tuple(r + i for i in ds)
        for ms, ds in zip(out_mids, out_directs)
    ]
    cdef GateArrays mg, og
    mg.fanin = NULL; mg.arg_off = NULL; mg.args = NULL; mg.tbl_off = NULL
    og.fanin = NULL; og.arg_off = NULL; og.args = NULL; og.tbl_off = NULL
    cdef bytearray tbuf = bytearray()
    _fill_gates(&mg, mid_inputs, mid_tables, tbuf)
    _fill_gates(&og, merged, out_tables, tbuf)

    cdef long long total = 1LL << n
    cdef Py_ssize_t bpv = <Py_ssize_t>((total + 7) >> 3)
    cdef int n_out = og.count
    cdef bytearray obuf = bytearray((n_out if n_out else 1) * bpv)
    cdef unsigned char* out = <unsigned char*><char*>obuf
    cdef const unsigned char* tbl = <const unsigned char*><char*>tbuf
    cdef unsigned char* vals = <unsigned char*>malloc(r if r else 1)
    if not vals:
        _free_gates(&mg)
        _free_gates(&og)
        raise MemoryError()

    cdef long long x, idx
    cdef long long off
    cdef int i, k, a
    cdef unsigned char bit
    try:
        with nogil:
            for x in range(total):
                for k in range(r):
                    idx = 0
                    off = mg.arg_off[k]
                    for i in range(mg.fanin[k]):
                        idx |= (<long long>((x >> mg.args[off + i]) & 1)) << i
                    vals[k] = _table_bit(tbl, mg.tbl_off[k], idx)
                for k in range(n_out):
                    idx = 0
                    off = og.arg_off[k]
                    for i in range(og.fanin[k]):
                        a = og.args[off + i]
                        if a < r:
                            bit = vals[a]
                        else:
                            bit = <unsigned char>((x >> (a - r)) & 1)
                        idx |= (<long long>bit) << i
                    if _table_bit(tbl, og.tbl_off[k], idx):
                        out[k * bpv + (x >> 3)] |= <unsigned char>(1 << (x & 7))
    finally:
        free(vals)
        _free_gates(&mg)
        _free_gates(&og)
    return [
        int.from_bytes(obuf[k * bpv:(k + 1) * bpv], "little")
        for k in range(n_out)
    ]
