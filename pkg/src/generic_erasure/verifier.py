"""Exhaustive oracles for genericity and for code-specific reducing/correcting sets.

A set A is generic (r, m) iff every rank-m matrix M with m columns admits some
a in A with wt(aM) = 1.  Column order does not affect that condition, so the
scan runs over unordered independent column sets only.
"""

from __future__ import annotations

import logging
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .codes import Code, hamming_code, mask_positions
from .gensets import GenericSet, induced_collection
from .gf2 import BitMatrix, BitVec, candidate_vectors, combine_rows, independent_count, popcount, rank

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9


class BudgetExceeded(RuntimeError):
    """Raised when a job would test more subsets than the configured ceiling.

    Searches attach the bounds they had established when they gave up.
    """

    def __init__(self, message: str, lower: int | None = None, upper: int | None = None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


def default_workers() -> int:
    return os.cpu_count() or 1


@dataclass
class VerifyResult:
    r: int
    m: int
    set_size: int
    verdict: bool
    witness: BitMatrix | None = None
    subsets_checked: int = 0
    elapsed_ms: float = 0.0
    restricted_to: str = "all"

    def __bool__(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "m": self.m,
            "set_size": self.set_size,
            "generic": self.verdict,
            "witness": self.witness.to_strings() if self.witness is not None else None,
            "subsets_checked": self.subsets_checked,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "class": self.restricted_to,
        }


@dataclass
class CodeCheckResult:
    verdict: bool
    stuck: tuple[int, ...] | None = None
    size: int | None = None
    patterns_checked: int = 0

    def __bool__(self) -> bool:
        return self.verdict


def _scan_all(cands: np.ndarray, masks: np.ndarray, m: int, workers: int, backend: str | None):
    """Deterministic reduction over first-element ranges.

    Returns (count, failing candidate indices or None).  The count always equals
    what a sequential scan reports: everything up to and including the first
    failure in lexicographic order.
    """
    K = len(cands)
    hi = K - m + 1
    if hi <= 0:
        return 0, None
    if workers <= 1:
        return _kernels.scan(cands, masks, m, 0, hi, backend)
    # one task per first element; small first indices carry the most work
    ranges = [(i, i + 1) for i in range(hi)]
    stop_at = [hi]
    lock = threading.Lock()

    def job(bounds):
        lo, up = bounds
        if lo >= stop_at[0]:
            return None
        res = _kernels.scan(cands, masks, m, lo, up, backend)
        if res[1] is not None:
            with lock:
                stop_at[0] = min(stop_at[0], lo)
        return res

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(job, ranges))
    total = 0
    for res in results:
        if res is None:
            break
        count, fail = res
        total += count
        if fail is not None:
            return total, fail
    return total, None


def _generic_scan(
    A: GenericSet,
    m: int,
    first_coord_one: bool,
    budget: int,
    workers: int,
    backend: str | None,
) -> VerifyResult:
    r = A.r
    if not 1 <= m <= r:
        raise ValueError(f"need 1 <= m <= r, got m={m}, r={r}")
    if r > 20:
        raise BudgetExceeded(f"r={r} is beyond the enumeration range")
    expected = independent_count(r, m, first_coord_one)
    if expected > budget:
        raise BudgetExceeded(f"{expected} subsets exceed budget {budget}")
    start = time.perf_counter()
    label = "even_weight" if first_coord_one else "all"
    vecs = [v for v in A if v]
    if not vecs:
        # no member can ever hit weight one; the first subset is a witness
        first = next(_first_subset(r, m, first_coord_one))
        return VerifyResult(r, m, len(A), False, BitMatrix.from_columns(first, r), 1,
                            (time.perf_counter() - start) * 1e3, label)
    cands = np.array(candidate_vectors(r, first_coord_one), dtype=np.int64)
    masks = _kernels.parity_masks(vecs, r)
    count, fail = _scan_all(cands, masks, m, workers, backend)
    witness = None
    if fail is not None:
        witness = BitMatrix.from_columns([int(cands[i]) for i in fail], r)
    elapsed = (time.perf_counter() - start) * 1e3
    log.debug("scan r=%d m=%d |A|=%d: %d subsets, %.1f ms", r, m, len(A), count, elapsed)
    return VerifyResult(r, m, len(A), fail is None, witness, count, elapsed, label)


def _first_subset(r: int, m: int, first_coord_one: bool):
    from .gf2 import enumerate_independent_subsets

    return enumerate_independent_subsets(r, m, first_coord_one)


def is_generic(
    A: GenericSet,
    m: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    backend: str | None = None,
) -> VerifyResult:
    """Decide whether A is generic (r, m)-erasure correcting.

    On failure the witness is the lexicographically first independent column
    set, assembled as an r x m matrix, that no member of A maps to weight one.
    """
    return _generic_scan(A, m, False, budget, workers, backend)


def is_generic_for_even_weight(
    A: GenericSet,
    m: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    backend: str | None = None,
) -> VerifyResult:
    """Genericity restricted to codes whose first parity check is the all-ones word.

    Every column of such an H has coordinate 1 equal to one, so only column
    sets drawn from that affine hyperplane are tested.
    """
    return _generic_scan(A, m, True, budget, workers, backend)


def witness_is_valid(A: Iterable[int] | GenericSet, M: BitMatrix, m: int | None = None) -> bool:
    """M has rank m (its column count) and no member a gives wt(aM) = 1."""
    m = M.ncols if m is None else m
    if M.ncols != m or rank(M) != m:
        return False
    return all(popcount(combine_rows(a, M.rows)) != 1 for a in A)


def deletion_witness(r: int, m: int, a: int) -> BitMatrix:
    """Matrix M for which a is the only member x of A_{r,m} with wt(xM) = 1.

    Covers members of weight m or m - 1 (for 3 <= m <= r), and, when r = m + 1,
    members of any weight.  Built for a = e_1 + ... + e_w and then carried to
    the actual support of a by a row permutation fixing coordinate 1.
    """
    w = popcount(a)
    if not a & 1 or w > m:
        raise ValueError("a must lie in A_{r,m}")
    if m < 3 or m > r:
        raise ValueError(f"need 3 <= m <= r, got r={r}, m={m}")
    rows = [0] * r
    if w == m:
        rows[0] = (1 << m) - 1
        for i in range(1, m):
            rows[i] = 1 << i
    elif w == m - 1:
        rows[0] = (1 << (m - 1)) - 1
        for i in range(1, m - 1):
            rows[i] = 1 << i
        for i in range(m - 1, r):
            rows[i] = 1 << (m - 1)
    elif r == m + 1:
        rows[0] = (1 << w) - 1
        for i in range(1, w):
            rows[i] = 1 << i
        for i in range(w, m):
            rows[i] = 1 << i
        rows[m] = ((1 << m) - 1) ^ ((1 << w) - 1)
    else:
        raise ValueError(f"no explicit witness for weight {w} when r={r}, m={m}")
    # move coordinates 2..w of the model vector onto the support of a
    support = [i for i in range(r) if (a >> i) & 1]
    rest = [i for i in range(r) if not (a >> i) & 1]
    perm = support + rest
    out = [0] * r
    for model_row, actual in enumerate(perm):
        out[actual] = rows[model_row]
    return BitMatrix(tuple(out), m)


def _as_ints(Hcoll: Sequence[BitVec] | Sequence[int], n: int) -> list[int]:
    out = []
    for h in Hcoll:
        if isinstance(h, BitVec):
            if h.length != n:
                raise ValueError(f"check length {h.length} does not match code length {n}")
            out.append(h.bits)
        else:
            if h < 0 or h >> n:
                raise ValueError(f"check {h} does not fit in length {n}")
            out.append(int(h))
    return out


def _stuck(checks: Sequence[int], E: int) -> bool:
    for h in checks:
        x = h & E
        if x and not x & (x - 1):
            return False
    return True


def is_reducing_for_code(
    Hcoll: Sequence[BitVec] | Sequence[int], C: Code, m: int, *, budget: int = DEFAULT_BUDGET
) -> CodeCheckResult:
    """No C-correctable pattern of size m is a stopping set for Hcoll."""
    n = C.n
    checks = _as_ints(Hcoll, n)
    if m < 0 or m > n:
        raise ValueError(f"pattern size {m} outside 0..{n}")
    if m == 0:
        # nothing to resolve; the empty pattern is not counted as stuck
        return CodeCheckResult(True, None, 0, 0)
    if comb(n, m) > budget:
        raise BudgetExceeded(f"C({n},{m}) patterns exceed budget {budget}")
    checked = 0
    for pos in combinations(range(n), m):
        E = 0
        for p in pos:
            E |= 1 << p
        if not C.columns_independent(E):
            continue
        checked += 1
        if _stuck(checks, E):
            return CodeCheckResult(False, mask_positions(E), m, checked)
    return CodeCheckResult(True, None, m, checked)


def is_correcting_for_code(
    Hcoll: Sequence[BitVec] | Sequence[int], C: Code, m: int, *, budget: int = DEFAULT_BUDGET
) -> CodeCheckResult:
    """m'-erasure reducing for every 1 <= m' <= m."""
    checked = 0
    for size in range(1, m + 1):
        res = is_reducing_for_code(Hcoll, C, size, budget=budget)
        checked += res.patterns_checked
        if not res.verdict:
            res.patterns_checked = checked
            return res
    return CodeCheckResult(True, None, None, checked)


def cross_check_hamming(A: GenericSet, m: int, *, budget: int = DEFAULT_BUDGET) -> bool:
    """The generic verdict must match the reducing verdict on the Hamming code."""
    if A.r > 5:
        raise BudgetExceeded(f"Hamming cross-check limited to r <= 5, got {A.r}")
    C = hamming_code(A.r)
    generic = is_generic(A, m, budget=budget).verdict
    reducing = is_reducing_for_code(induced_collection(A, C), C, m, budget=budget).verdict
    return generic == reducing
