"""Bit-packed linear algebra over GF(2).

Vectors are stored as Python ints: bit ``i`` holds coordinate ``i + 1``, so
``e_1`` is the integer 1.  The text form writes coordinate 1 leftmost, e.g.
``"10001"`` is ``e_1 + e_5``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_LEN = 64


def popcount(x: int) -> int:
    return bin(x).count("1")


def parity(x: int) -> int:
    return popcount(x) & 1


def bits_to_str(bits: int, length: int) -> str:
    return "".join("1" if (bits >> i) & 1 else "0" for i in range(length))


def str_to_bits(text: str) -> int:
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a bitstring: {text!r}")
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


def _check_len(length: int) -> None:
    if not 0 <= length <= MAX_LEN:
        raise ValueError(f"vector length {length} outside 0..{MAX_LEN}")


@dataclass(frozen=True, slots=True)
class BitVec:
    """A vector over GF(2) of length at most 64."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        _check_len(self.length)
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set beyond vector length")

    @classmethod
    def from_str(cls, text: str) -> "BitVec":
        text = text.strip()
        return cls(len(text), str_to_bits(text))

    @classmethod
    def unit(cls, length: int, i: int) -> "BitVec":
        """The unit vector e_i (1-based)."""
        if not 1 <= i <= length:
            raise IndexError(f"coordinate {i} outside 1..{length}")
        return cls(length, 1 << (i - 1))

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVec":
        bits = 0
        for i in support:
            if not 1 <= i <= length:
                raise IndexError(f"coordinate {i} outside 1..{length}")
            bits |= 1 << (i - 1)
        return cls(length, bits)

    def __str__(self) -> str:
        return bits_to_str(self.bits, self.length)

    def __add__(self, other: "BitVec") -> "BitVec":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return BitVec(self.length, self.bits ^ other.bits)

    def __getitem__(self, i: int) -> int:
        """Coordinate i, 1-based."""
        if not 1 <= i <= self.length:
            raise IndexError(f"coordinate {i} outside 1..{self.length}")
        return (self.bits >> (i - 1)) & 1

    def dot(self, other: "BitVec") -> int:
        if other.length != self.length:
            raise ValueError("length mismatch")
        return parity(self.bits & other.bits)

    @property
    def weight(self) -> int:
        return popcount(self.bits)

    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.length) if (self.bits >> i) & 1)


@dataclass(frozen=True, slots=True)
class BitMatrix:
    """An r x n matrix over GF(2); each row is an int of ``ncols`` bits."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        _check_len(self.ncols)
        object.__setattr__(self, "rows", tuple(int(x) for x in self.rows))
        for x in self.rows:
            if x < 0 or x >> self.ncols:
                raise ValueError("row has bits beyond ncols")

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BitMatrix":
        lines = [ln.strip() for ln in lines if ln.strip()]
        if not lines:
            raise ValueError("empty matrix")
        width = len(lines[0])
        if any(len(ln) != width for ln in lines):
            raise ValueError("ragged matrix rows")
        return cls(tuple(str_to_bits(ln) for ln in lines), width)

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> "BitMatrix":
        """Assemble a matrix whose j-th column is the int ``columns[j]`` (nrows bits)."""
        rows = [0] * nrows
        for j, col in enumerate(columns):
            for i in range(nrows):
                if (col >> i) & 1:
                    rows[i] |= 1 << j
        return cls(tuple(rows), len(columns))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def row(self, i: int) -> BitVec:
        """Row i, 1-based."""
        return BitVec(self.ncols, self.rows[i - 1])

    def columns(self) -> list[int]:
        """Columns as ints of ``nrows`` bits (row 1 is bit 0)."""
        cols = [0] * self.ncols
        for i, row in enumerate(self.rows):
            for j in range(self.ncols):
                if (row >> j) & 1:
                    cols[j] |= 1 << i
        return cols

    def transpose(self) -> "BitMatrix":
        return BitMatrix(tuple(self.columns()), self.nrows)

    def to_strings(self) -> list[str]:
        return [bits_to_str(x, self.ncols) for x in self.rows]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return BitMatrix(tuple(combine_rows(x, other.rows) for x in self.rows), other.ncols)


def combine_rows(selector: int, rows: Sequence[int]) -> int:
    """XOR of ``rows[i]`` over the set bits i of ``selector``."""
    acc = 0
    i = 0
    while selector:
        if selector & 1:
            acc ^= rows[i]
        selector >>= 1
        i += 1
    return acc


def rank_of_rows(rows: Iterable[int]) -> int:
    """GF(2) rank of a collection of int-encoded vectors."""
    basis: list[int] = []
    for x in rows:
        for b in basis:
            x = min(x, x ^ b)
        if x:
            basis.append(x)
            basis.sort(reverse=True)
    return len(basis)


def rank(M: BitMatrix) -> int:
    return rank_of_rows(M.rows)


def mat_vec(a: BitVec, M: BitMatrix) -> BitVec:
    """The product aM: sum of the rows of M selected by a."""
    if a.length != M.nrows:
        raise ValueError(f"vector length {a.length} does not match {M.nrows} rows")
    return BitVec(M.ncols, combine_rows(a.bits, M.rows))


def invert(M: BitMatrix) -> BitMatrix:
    """Gauss-Jordan inverse of a square matrix."""
    n = M.nrows
    if M.ncols != n:
        raise ValueError("matrix is not square")
    # augment each row with the identity in bits n..2n-1
    work = [row | (1 << (n + i)) for i, row in enumerate(M.rows)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if (work[i] >> col) & 1), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        for i in range(n):
            if i != col and (work[i] >> col) & 1:
                work[i] ^= work[col]
    return BitMatrix(tuple(w >> n for w in work), n)


def restrict(M: BitMatrix, E: Iterable[int]) -> BitMatrix:
    """Columns of M indexed by the 1-based positions in E, in increasing order."""
    positions = sorted(set(E))
    for p in positions:
        if not 1 <= p <= M.ncols:
            raise IndexError(f"position {p} outside 1..{M.ncols}")
    rows = []
    for row in M.rows:
        out = 0
        for j, p in enumerate(positions):
            if (row >> (p - 1)) & 1:
                out |= 1 << j
        rows.append(out)
    return BitMatrix(tuple(rows), len(positions))


def reduce_against(x: int, basis: Sequence[int]) -> int:
    """Reduce x by an echelon basis (each element has a distinct leading bit)."""
    for b in basis:
        x = min(x, x ^ b)
    return x


def independent_count(r: int, m: int, first_coord_one: bool = False) -> int:
    """Number of linearly independent m-subsets enumerated for dimension r."""
    from math import factorial

    ordered = 1
    for k in range(m):
        if first_coord_one:
            # a k-dim span of vectors with x_1 = 1 holds 2^(k-1) such vectors
            ordered *= (1 << (r - 1)) - ((1 << (k - 1)) if k else 0)
        else:
            ordered *= (1 << r) - (1 << k)
    return ordered // factorial(m)


def candidate_vectors(r: int, first_coord_one: bool = False) -> list[int]:
    if first_coord_one:
        return list(range(1, 1 << r, 2))
    return list(range(1, 1 << r))


def enumerate_independent_subsets(
    r: int, m: int, first_coord_one: bool = False
) -> Iterator[tuple[int, ...]]:
    """Yield every linearly independent m-subset of nonzero vectors of F_2^r.

    Subsets come as increasing tuples of int encodings, in lexicographic order.
    With ``first_coord_one`` only vectors whose coordinate 1 is set are used.
    """
    if m > r:
        raise ValueError(f"m={m} exceeds r={r}")
    if m < 0 or r < 1 or r > MAX_LEN:
        raise ValueError(f"bad parameters r={r}, m={m}")
    cands = candidate_vectors(r, first_coord_one)
    chosen: list[int] = []

    def rec(start: int, basis: list[int]) -> Iterator[tuple[int, ...]]:
        if len(chosen) == m:
            yield tuple(chosen)
            return
        for idx in range(start, len(cands) - (m - len(chosen)) + 1):
            v = cands[idx]
            w = reduce_against(v, basis)
            if not w:
                continue
            chosen.append(v)
            yield from rec(idx + 1, sorted(basis + [w], reverse=True))
            chosen.pop()

    yield from rec(0, [])
