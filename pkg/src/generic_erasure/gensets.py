"""Coefficient sets A in F_2^r and the parity-check collections they induce."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import Iterable

from .codes import Code
from .gf2 import BitMatrix, BitVec, bits_to_str, combine_rows, invert, popcount, rank, rank_of_rows, str_to_bits


@dataclass(frozen=True)
class GenericSet:
    """A set of distinct vectors of F_2^r, kept sorted by integer encoding."""

    r: int
    vectors: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.r <= 64:
            raise ValueError(f"dimension r={self.r} outside 1..64")
        vecs = tuple(sorted(set(int(v) for v in self.vectors)))
        for v in vecs:
            if v < 0 or v >> self.r:
                raise ValueError(f"vector {v} does not fit in length {self.r}")
        object.__setattr__(self, "vectors", vecs)

    @classmethod
    def from_strings(cls, lines: Iterable[str], r: int | None = None) -> "GenericSet":
        lines = [ln.strip() for ln in lines if ln.strip()]
        if r is None:
            if not lines:
                raise ValueError("cannot infer r from an empty set")
            r = len(lines[0])
        if any(len(ln) != r for ln in lines):
            raise ValueError(f"all vectors must have length {r}")
        return cls(r, tuple(str_to_bits(ln) for ln in lines))

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __contains__(self, v) -> bool:
        if isinstance(v, BitVec):
            v = v.bits
        return v in self.vectors

    def bitvecs(self) -> list[BitVec]:
        return [BitVec(self.r, v) for v in self.vectors]

    def strings(self) -> list[str]:
        return [bits_to_str(v, self.r) for v in self.vectors]

    def without(self, *vs: int) -> "GenericSet":
        drop = set(vs)
        return GenericSet(self.r, tuple(v for v in self.vectors if v not in drop))

    def spans(self) -> bool:
        return rank_of_rows(self.vectors) == self.r

    def to_text(self) -> str:
        return "\n".join([str(self.r), *self.strings()]) + "\n"


def _support_ok(v: int, limit: int) -> bool:
    return v >> limit == 0


def construct_A(r: int, m: int) -> GenericSet:
    """{a : a_1 = 1, wt(a) <= m}."""
    if not 2 <= m <= r:
        raise ValueError(f"need 2 <= m <= r, got r={r}, m={m}")
    if r > 24:
        raise ValueError("construct_A limited to r <= 24")
    return GenericSet(r, tuple(v for v in range(1, 1 << r, 2) if popcount(v) <= m))


def size_A(r: int, m: int) -> int:
    return sum(comb(r - 1, i) for i in range(m))


def _check_B_params(r: int, m: int) -> None:
    if not 3 <= m <= r:
        raise ValueError(f"need 3 <= m <= r, got r={r}, m={m}")
    if r < (1 << (m - 1)) + 1:
        raise ValueError(f"removable subset needs r >= 2^(m-1)+1 = {(1 << (m - 1)) + 1}, got r={r}")


def construct_B(r: int, m: int) -> GenericSet:
    """Low-weight members of A_{r,m} supported on the first r - 2^(m-1) coordinates."""
    _check_B_params(r, m)
    limit = r - (1 << (m - 1))
    A = construct_A(r, m)
    return GenericSet(r, tuple(v for v in A if popcount(v) <= m - 2 and _support_ok(v, limit)))


def size_B(r: int, m: int) -> int:
    return sum(comb(r - (1 << (m - 1)) - 1, i) for i in range(m - 2))


def construct_A_star(r: int, m: int) -> GenericSet:
    _check_B_params(r, m)
    return construct_A(r, m).without(*construct_B(r, m))


def construct_W(r: int) -> GenericSet:
    """Unit vectors plus every e_1 + e_i + e_j with 2 <= i < j <= r."""
    if r < 3:
        raise ValueError(f"need r >= 3, got {r}")
    vecs = [1 << i for i in range(r)]
    vecs += [1 | (1 << i) | (1 << j) for i in range(1, r) for j in range(i + 1, r)]
    return GenericSet(r, tuple(vecs))


def size_W(r: int) -> int:
    return 1 + r * (r - 1) // 2


def construct_even_weight_set(r: int) -> GenericSet:
    """{e_i, e_1 + e_i : 2 <= i <= r}, for codes whose first check is all-ones."""
    if r < 2:
        raise ValueError(f"need r >= 2, got {r}")
    vecs = [1 << i for i in range(1, r)] + [1 | (1 << i) for i in range(1, r)]
    return GenericSet(r, tuple(vecs))


def transform(A: GenericSet, S: BitMatrix) -> GenericSet:
    """{aS : a in A} for an invertible r x r matrix S."""
    if S.shape != (A.r, A.r):
        raise ValueError(f"transform needs a {A.r}x{A.r} matrix, got {S.shape}")
    if rank(S) != A.r:
        raise ValueError("transform matrix is singular")
    return GenericSet(A.r, tuple(combine_rows(a, S.rows) for a in A))


def induced_collection(A: GenericSet, C: Code) -> list[BitVec]:
    """Parity checks aH for a in A, in the order of A, duplicates merged."""
    if A.r != C.r:
        raise ValueError(f"set dimension {A.r} does not match codimension {C.r}")
    seen: dict[int, None] = {}
    for a in A:
        seen.setdefault(combine_rows(a, C.H.rows), None)
    return [BitVec(C.n, h) for h in seen]


def w_transform_matrix(r: int) -> BitMatrix:
    """All-ones first column, e_j as column j for j >= 2; maps A_{r,3} onto W_r."""
    cols = [(1 << r) - 1] + [1 << j for j in range(1, r)]
    return BitMatrix.from_columns(cols, r)


def random_invertible(r: int, rng) -> BitMatrix:
    while True:
        rows = tuple(int(x) for x in rng.integers(0, 1 << r, size=r))
        if rank_of_rows(rows) == r:
            return BitMatrix(rows, r)


def inverse_transform(A: GenericSet, S: BitMatrix) -> GenericSet:
    return transform(A, invert(S))


def parse_set(text: str) -> GenericSet:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty set file")
    try:
        r = int(lines[0])
    except ValueError as exc:
        raise ValueError(f"bad header {lines[0]!r}, expected r") from exc
    A = GenericSet.from_strings(lines[1:], r=r)
    if len(A) != len(lines) - 1:
        raise ValueError("duplicate vectors in set file")
    return A


def load_set(path: str | Path) -> GenericSet:
    return parse_set(Path(path).read_text())


def save_set(A: GenericSet, path: str | Path) -> None:
    Path(path).write_text(A.to_text())
