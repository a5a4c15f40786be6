"""Binary linear codes given by a full-rank parity-check matrix."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator

from .gf2 import BitMatrix, BitVec, combine_rows, rank, rank_of_rows, reduce_against

ErasurePattern = tuple[int, ...]


def erasure_pattern(positions: Iterable[int], n: int) -> ErasurePattern:
    """Normalise positions to a sorted, duplicate-free tuple within 1..n."""
    out = tuple(sorted(set(int(p) for p in positions)))
    for p in out:
        if not 1 <= p <= n:
            raise ValueError(f"position {p} outside 1..{n}")
    return out


def pattern_mask(positions: Iterable[int], n: int) -> int:
    mask = 0
    for p in erasure_pattern(positions, n):
        mask |= 1 << (p - 1)
    return mask


def mask_positions(mask: int) -> ErasurePattern:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Code:
    """A code of length n and codimension r, fixed by its parity-check matrix H."""

    H: BitMatrix
    name: str = ""

    def __post_init__(self) -> None:
        if self.H.nrows < 1:
            raise ValueError("parity-check matrix needs at least one row")
        if rank(self.H) != self.H.nrows:
            raise ValueError("parity-check matrix must have full row rank")

    @property
    def n(self) -> int:
        return self.H.ncols

    @property
    def r(self) -> int:
        return self.H.nrows

    @property
    def k(self) -> int:
        return self.n - self.r

    @cached_property
    def columns(self) -> tuple[int, ...]:
        return tuple(self.H.columns())

    def columns_independent(self, mask: int) -> bool:
        """True iff the columns of H at the set bits of ``mask`` are independent."""
        basis: list[int] = []
        j = 0
        while mask:
            if mask & 1:
                w = reduce_against(self.columns[j], basis)
                if not w:
                    return False
                basis.append(w)
                basis.sort(reverse=True)
            mask >>= 1
            j += 1
        return True

    def to_text(self) -> str:
        return f"{self.r} {self.n}\n" + "\n".join(self.H.to_strings()) + "\n"


def hamming_code(r: int) -> Code:
    """The [2^r - 1, 2^r - r - 1] Hamming code; column j is the integer j."""
    if not 2 <= r <= 6:
        raise ValueError(f"Hamming codimension must be in 2..6, got {r}")
    return Code(BitMatrix.from_columns(list(range(1, 1 << r)), r), name=f"hamming({r})")


def even_weight_code(r: int, n: int) -> Code:
    """Codimension-r code of length n whose first parity check is all-ones.

    Rows 2..r are e_{i-1} + e_i, which keeps H at full rank for every n >= r.
    """
    if r < 1 or n < r:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    rows = [(1 << n) - 1] + [(1 << (i - 2)) | (1 << (i - 1)) for i in range(2, r + 1)]
    return Code(BitMatrix(tuple(rows), n), name=f"even_weight({r},{n})")


def repetition_code(n: int) -> Code:
    if n < 2:
        raise ValueError(f"repetition code needs n >= 2, got {n}")
    rows = [(1 << i) | (1 << (i + 1)) for i in range(n - 1)]
    return Code(BitMatrix(tuple(rows), n), name=f"repetition({n})")


def is_correctable(C: Code, E: Iterable[int]) -> bool:
    """E is C-correctable iff H restricted to E has full column rank."""
    return C.columns_independent(pattern_mask(E, C.n))


def dual_codewords(C: Code) -> Iterator[BitVec]:
    """All 2^r words aH, in increasing order of a."""
    if C.r > 20:
        raise ValueError(f"dual enumeration limited to r <= 20, got {C.r}")
    for a in range(1 << C.r):
        yield BitVec(C.n, combine_rows(a, C.H.rows))


def codewords(C: Code) -> Iterator[int]:
    """Brute-force all codewords (as ints) by testing every word against H."""
    if C.n > 24:
        raise ValueError(f"codeword enumeration limited to n <= 24, got {C.n}")
    for x in range(1 << C.n):
        if all(bin(row & x).count("1") % 2 == 0 for row in C.H.rows):
            yield x


def random_code(r: int, n: int, rng) -> Code:
    """A uniformly random full-rank r x n parity-check matrix."""
    if n < r:
        raise ValueError("need n >= r")
    while True:
        rows = tuple(int(x) for x in rng.integers(0, 1 << n, size=r))
        if rank_of_rows(rows) == r:
            return Code(BitMatrix(rows, n), name=f"random({r},{n})")


def parse_code(text: str) -> Code:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty code file")
    try:
        r, n = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad header {lines[0]!r}, expected 'r n'") from exc
    body = lines[1:]
    if len(body) != r or any(len(ln) != n for ln in body):
        raise ValueError(f"expected {r} rows of length {n}")
    return Code(BitMatrix.from_strings(body))


def load_code(path: str | Path) -> Code:
    return parse_code(Path(path).read_text())


def save_code(C: Code, path: str | Path) -> None:
    Path(path).write_text(C.to_text())
