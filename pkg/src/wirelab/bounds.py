"""Exact integer evaluation of wire-counting bounds.

``log2_count_upper`` bounds (in the exponent) how many distinct
n-operators circuits with at most L wires can realize: with m gates of
fanins d_1..d_m summing to at most L, there are at most (n+1)^m fanin
sequences, m^{d_i} wire choices and 2^{2^{d_i}} gate functions per gate,
and at most floor(n/2) gates can have fanin above 2L/n.  Every fractional
quantity is rounded up, which only loosens the upper bound, so all
arithmetic stays in exact integers.

``min_wires_lower_bound`` extracts the largest L whose bound still falls
short of the n * 2^n bits needed to name every operator: some operator
then needs more than L wires.

``linear_circuit_lower_bound`` plays the same game against the 2^{n^2}
matrices, over-counting depth-2 all-parity circuits with at most L wires
by

    count(L) = L * C(2*n*L, L) * 2^(n + L)

(for each middle-layer size r <= L: at most C(2nr, L) <= C(2nL, L) ways
to place L wires among the nr + nr = 2nr slots and 2^{n+r} <= 2^{n+L}
negation patterns).  The largest L with count(L) < 2^{n^2} then certifies
that some matrix needs more than L wires, and grows like n^2 / log n.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

# Observed range of linear_circuit_lower_bound(n) * log2(n) / n^2 on
# powers of two n in [16, 256]; frozen so sweeps can assert the
# n^2/log n shape against a fixed interval.
LINEAR_RATIO_INTERVAL = (0.45, 0.80)


@dataclass(frozen=True)
class BoundParams:
    """Knobs of the counting chain; ``m`` caps the number of gates."""

    n: int
    m: int | None = None
    rounding: str = "ceiling"

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.rounding != "ceiling":
            raise ValueError("only ceiling rounding is supported")
        if self.m is not None and self.m < self.n:
            raise ValueError("gate cap m must be at least n")

    @property
    def gate_cap(self) -> int:
        return 2 * self.n * self.n if self.m is None else self.m


def _ceil_log2(v: int) -> int:
    if v < 1:
        raise ValueError("log of non-positive value")
    return (v - 1).bit_length()


def log2_num_operators(n: int) -> int:
    """log2 of the number of maps {0,1}^n -> {0,1}^n, i.e. n * 2^n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return n << n


def log2_count_upper(n: int, wires: int, params: BoundParams | None = None) -> int:
    """Integer U with log2(#operators computable with <= wires wires) <= U."""
    params = params if params is not None else BoundParams(n)
    if not 0 <= wires <= n * n:
        raise ValueError("wire count must lie in [0, n^2]")
    m = params.gate_cap
    heavy = n // 2  # gates allowed fanin above 2*wires/n
    fanin_cap_exp = -(-2 * wires // n)  # ceil(2L/n)
    return (
        m * _ceil_log2(n + 1)
        + wires * _ceil_log2(m)
        + (m - heavy) * (1 << fanin_cap_exp)
        + ((n + 1) // 2) * (1 << n)
    )


def min_wires_lower_bound(n: int, params: BoundParams | None = None) -> int:
    """Largest L whose counting bound stays below n * 2^n.

    Circuits with that many wires cannot realize all n-operators, so
    some operator needs more than L wires.  The bound is nondecreasing
    in L, making binary search valid; returns 0 when even L = 0 fails.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    target = log2_num_operators(n)
    if log2_count_upper(n, 0, params) >= target:
        return 0
    lo, hi = 0, n * n  # invariant: bound(lo) < target
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if log2_count_upper(n, mid, params) < target:
            lo = mid
        else:
            hi = mid - 1
    return lo


def linear_circuit_count(n: int, wires: int) -> int:
    """Over-count of depth-2 all-parity circuits with at most ``wires`` wires."""
    if wires < 1:
        raise ValueError("wire count must be at least 1")
    return wires * comb(2 * n * wires, wires) * (1 << (n + wires))


def linear_circuit_lower_bound(n: int) -> int:
    """Largest L with fewer than 2^{n^2} all-parity circuits of <= L wires.

    Some n-by-n matrix then has no all-parity depth-2 circuit with L
    wires; the value grows like n^2 / log n.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    target = 1 << (n * n)
    if linear_circuit_count(n, 1) >= target:
        return 0
    lo, hi = 1, n * n
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if linear_circuit_count(n, mid) < target:
            lo = mid
        else:
            hi = mid - 1
    return lo


DEFAULT_TABLE_NS = (8, 16, 32, 64, 128, 256)


def _ratio_millionths(num: int, den: int) -> str:
    v = num * 10**6 // den
    return f"{v // 10**6}.{v % 10**6:06d}"


def bounds_table(ns: tuple[int, ...] = DEFAULT_TABLE_NS) -> str:
    """Fixed-format table of both lower bounds for the given n values.

    ``ratio`` is L_star_linear * log2(n) / n^2 (printed with six exact
    decimals), so n must be a power of two.  The output is byte-stable:
    same inputs, same text.
    """
    lines = [
        "# wire lower bounds from exact counting",
        "# L_star_general: largest L with"
        " m*ceil(log2(n+1)) + L*ceil(log2(m)) + (m-floor(n/2))*2^ceil(2L/n)"
        " + ceil(n/2)*2^n < n*2^n, m = 2n^2",
        "# L_star_linear: largest L with L * C(2nL, L) * 2^(n+L) < 2^(n^2)",
        "# ratio = L_star_linear * log2(n) / n^2",
        "n L_star_general L_star_linear n^2 ratio",
    ]
    for n in ns:
        k = n.bit_length() - 1
        if 1 << k != n:
            raise ValueError("table rows need n to be a power of two")
        general = min_wires_lower_bound(n)
        linear = linear_circuit_lower_bound(n)
        lines.append(
            f"{n} {general} {linear} {n * n} {_ratio_millionths(linear * k, n * n)}"
        )
    return "\n".join(lines) + "\n"
