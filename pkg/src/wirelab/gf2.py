"""Dense GF(2) linear algebra on int bitsets.

Vectors and matrices store their 0/1 entries packed into Python ints
(bit ``i`` of ``Gf2Vector.bits`` is coordinate ``i``; bit ``j`` of a
matrix row word is column ``j``).  All values are immutable and all
operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass


class NotInSpanError(ValueError):
    """Raised when a vector has no representation over the given basis."""


@dataclass(frozen=True)
class Gf2Vector:
    """Vector over GF(2); coordinate ``i`` is bit ``i`` of ``bits``."""

    length: int
    bits: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("vector length must be non-negative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits outside [0, length) are not allowed")

    @staticmethod
    def from_coords(coords) -> "Gf2Vector":
        bits = 0
        coords = list(coords)
        for i, c in enumerate(coords):
            if c not in (0, 1):
                raise ValueError("coordinates must be 0 or 1")
            bits |= c << i
        return Gf2Vector(len(coords), bits)

    @staticmethod
    def zero(length: int) -> "Gf2Vector":
        return Gf2Vector(length, 0)

    @staticmethod
    def unit(length: int, i: int) -> "Gf2Vector":
        if not 0 <= i < length:
            raise ValueError("unit index out of range")
        return Gf2Vector(length, 1 << i)

    def bit(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise ValueError("coordinate out of range")
        return (self.bits >> i) & 1

    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.length))

    def weight(self) -> int:
        return self.bits.bit_count()

    def __xor__(self, other: "Gf2Vector") -> "Gf2Vector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return Gf2Vector(self.length, self.bits ^ other.bits)

    def __str__(self) -> str:
        return "".join(str((self.bits >> i) & 1) for i in range(self.length))


@dataclass(frozen=True)
class Gf2Matrix:
    """Row-major bit matrix; ``row_words[i]`` packs row ``i``."""

    rows: int
    cols: int
    row_words: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.row_words) != self.rows:
            raise ValueError("row count disagrees with row_words")
        for w in self.row_words:
            if w < 0 or w >> self.cols:
                raise ValueError("row has entries outside [0, cols)")

    @staticmethod
    def from_rows(rows, cols: int | None = None) -> "Gf2Matrix":
        """Build from an iterable of rows, each a 0/1 sequence."""
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        words = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            w = 0
            for j, c in enumerate(r):
                if c not in (0, 1):
                    raise ValueError("entries must be 0 or 1")
                w |= c << j
            words.append(w)
        return Gf2Matrix(len(rows), cols, tuple(words))

    @staticmethod
    def identity(n: int) -> "Gf2Matrix":
        return Gf2Matrix(n, n, tuple(1 << i for i in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "Gf2Matrix":
        return Gf2Matrix(rows, cols, (0,) * rows)

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise ValueError("index out of range")
        return (self.row_words[i] >> j) & 1

    def row(self, i: int) -> Gf2Vector:
        return Gf2Vector(self.cols, self.row_words[i])

    def column(self, j: int) -> Gf2Vector:
        if not 0 <= j < self.cols:
            raise ValueError("column index out of range")
        bits = 0
        for i, w in enumerate(self.row_words):
            bits |= ((w >> j) & 1) << i
        return Gf2Vector(self.rows, bits)

    def transpose(self) -> "Gf2Matrix":
        words = [0] * self.cols
        for i, w in enumerate(self.row_words):
            while w:
                j = (w & -w).bit_length() - 1
                words[j] |= 1 << i
                w &= w - 1
        return Gf2Matrix(self.cols, self.rows, tuple(words))

    def popcount(self) -> int:
        """Number of 1-entries (the wire count of an adjacency matrix)."""
        return sum(w.bit_count() for w in self.row_words)

    def ones(self) -> list[tuple[int, int]]:
        """Positions of 1-entries in row-major order."""
        out = []
        for i, w in enumerate(self.row_words):
            while w:
                j = (w & -w).bit_length() - 1
                out.append((i, j))
                w &= w - 1
        return out


def matvec(m: Gf2Matrix, v: Gf2Vector) -> Gf2Vector:
    """Matrix-vector product over GF(2)."""
    if v.length != m.cols:
        raise ValueError(f"dimension mismatch: matrix has {m.cols} cols, vector length {v.length}")
    bits = 0
    for i, w in enumerate(m.row_words):
        bits |= ((w & v.bits).bit_count() & 1) << i
    return Gf2Vector(m.rows, bits)


def matmul(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    """Matrix product over GF(2)."""
    if a.cols != b.rows:
        raise ValueError("dimension mismatch")
    # row i of a*b is the XOR of b's rows selected by row i of a
    words = []
    for w in a.row_words:
        acc = 0
        t = w
        while t:
            k = (t & -t).bit_length() - 1
            acc ^= b.row_words[k]
            t &= t - 1
        words.append(acc)
    return Gf2Matrix(a.rows, b.cols, tuple(words))


def first_basis_columns(m: Gf2Matrix) -> list[int]:
    """Indices of the greedily chosen independent columns, scanned left to right.

    Column j is kept iff it is not in the span of the kept columns with
    smaller index, so the result is the lexicographically earliest maximal
    independent column set and its size equals the rank.
    """
    basis: list[tuple[int, int]] = []  # (pivot bit mask, reduced column)
    chosen = []
    for j in range(m.cols):
        v = m.column(j).bits
        for pivot, vec in basis:
            if v & pivot:
                v ^= vec
        if v:
            basis.append((v & -v, v))
            chosen.append(j)
    return chosen


def rank(m: Gf2Matrix) -> int:
    """Dimension of the column space (equals the row rank over GF(2))."""
    return len(first_basis_columns(m))


def solve_in_span(basis: list[Gf2Vector], y: Gf2Vector) -> tuple[int, ...]:
    """Coefficients expressing ``y`` over an independent ``basis``.

    Returns lambda with XOR_k lambda_k * basis[k] = y.  Raises
    NotInSpanError when ``y`` lies outside the span and ValueError when
    the claimed basis is dependent or lengths disagree.
    """
    t = len(basis)
    reduced: list[tuple[int, int, int]] = []  # (pivot mask, vector, combo bits)
    for k, u in enumerate(basis):
        if u.length != y.length:
            raise ValueError("basis/vector length mismatch")
        v, combo = u.bits, 1 << k
        for pivot, vec, c in reduced:
            if v & pivot:
                v ^= vec
                combo ^= c
        if not v:
            raise ValueError("basis vectors are not linearly independent")
        reduced.append((v & -v, v, combo))
    v, combo = y.bits, 0
    for pivot, vec, c in reduced:
        if v & pivot:
            v ^= vec
            combo ^= c
    if v:
        raise NotInSpanError("vector is not in the span of the basis")
    return tuple((combo >> k) & 1 for k in range(t))


def to_text(m: Gf2Matrix) -> str:
    """Render in the matrix text format: a `<rows> <cols>` header line
    followed by one 0/1 string per row."""
    lines = [f"{m.rows} {m.cols}"]
    for i in range(m.rows):
        lines.append(str(m.row(i)))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Gf2Matrix:
    """Parse the matrix text format produced by :func:`to_text`."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("matrix header must be '<rows> <cols>'")
    rows, cols = int(head[0]), int(head[1])
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} row lines, got {len(lines) - 1}")
    words = []
    for ln in lines[1:]:
        ln = ln.strip()
        if len(ln) != cols or set(ln) - {"0", "1"}:
            raise ValueError(f"bad matrix row {ln!r}")
        w = 0
        for j, ch in enumerate(ln):
            w |= (ch == "1") << j
        words.append(w)
    return Gf2Matrix(rows, cols, tuple(words))
