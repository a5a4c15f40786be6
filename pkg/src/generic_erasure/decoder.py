"""Peeling erasure decoder over a fixed collection of parity checks."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .codes import Code, codewords, erasure_pattern, mask_positions, pattern_mask
from .gf2 import BitVec, bits_to_str

log = logging.getLogger(__name__)

BLOCK_TRIALS = 10_000


def _checks(Hcoll: Sequence[BitVec] | Sequence[int]) -> tuple[list[int], int | None]:
    """Collection as ints in canonical (given) order, duplicates dropped; plus length if known."""
    seen: dict[int, None] = {}
    n = None
    for h in Hcoll:
        if isinstance(h, BitVec):
            if n is not None and h.length != n:
                raise ValueError("checks have different lengths")
            n = h.length
            h = h.bits
        seen.setdefault(int(h), None)
    return list(seen), n


@dataclass
class PeelTrace:
    initial: tuple[int, ...]
    steps: list[tuple[int, int]] = field(default_factory=list)
    residual: tuple[int, ...] = ()
    n: int | None = None

    @property
    def success(self) -> bool:
        return not self.residual

    def to_json(self) -> dict:
        n = self.n or max([*self.initial, *(h.bit_length() for _, h in self.steps), 0])
        return {
            "initial": list(self.initial),
            "steps": [{"pos": p, "check": bits_to_str(h, n)} for p, h in self.steps],
            "residual": list(self.residual),
        }


def _single(x: int) -> bool:
    return bool(x) and not x & (x - 1)


def peel_mask(checks: Sequence[int], E: int) -> tuple[int, list[tuple[int, int]]]:
    """Peel on bitmasks; returns (residual mask, [(position bit index, check)])."""
    steps = []
    progress = True
    while E and progress:
        progress = False
        for h in checks:
            x = h & E
            if _single(x):
                steps.append((x.bit_length() - 1, h))
                E ^= x
                progress = True
                break
    return E, steps


def peel(Hcoll: Sequence[BitVec] | Sequence[int], E: Iterable[int], n: int | None = None) -> PeelTrace:
    """Resolve erasures one at a time until no check meets the rest in one position.

    At each step the first check (in collection order) that meets the current
    pattern in exactly one position resolves that position.  The residual is
    the largest stopping set inside E whatever the order, so the tie-break only
    fixes the trace.
    """
    checks, length = _checks(Hcoll)
    n = n or length
    if n is None:
        n = max([h.bit_length() for h in checks] + [max(E, default=0)])
    initial = erasure_pattern(E, n)
    residual, steps = peel_mask(checks, pattern_mask(initial, n))
    return PeelTrace(initial, [(p + 1, h) for p, h in steps], mask_positions(residual), n)


def is_stopping_set(Hcoll: Sequence[BitVec] | Sequence[int], E: Iterable[int]) -> bool:
    checks, _ = _checks(Hcoll)
    mask = 0
    for p in E:
        if p < 1:
            raise ValueError(f"position {p} must be >= 1")
        mask |= 1 << (p - 1)
    return not any(_single(h & mask) for h in checks)


def enumerate_stopping_sets(
    Hcoll: Sequence[BitVec] | Sequence[int], max_size: int, n: int | None = None, budget: int = 10**8
) -> list[tuple[int, ...]]:
    """All stopping sets of size <= max_size, ascending by size then lexicographically."""
    checks, length = _checks(Hcoll)
    n = n or length
    if n is None:
        raise ValueError("length n is required for an integer collection")
    max_size = min(max_size, n)
    if sum(comb(n, k) for k in range(max_size + 1)) > budget:
        raise ValueError(f"stopping-set enumeration over n={n} exceeds budget {budget}")
    out = []
    for k in range(max_size + 1):
        for pos in combinations(range(1, n + 1), k):
            if is_stopping_set(checks, pos):
                out.append(pos)
    return out


def support_weight_check(Hcoll: Sequence[BitVec] | Sequence[int], C: Code) -> bool:
    """Every nonzero codeword support must be a stopping set for Hcoll."""
    checks, _ = _checks(Hcoll)
    if C.n > 20:
        raise ValueError(f"codeword enumeration limited to n <= 20, got {C.n}")
    for c in codewords(C):
        if c and any(_single(h & c) for h in checks):
            return False
    return True


@dataclass
class ChannelStats:
    trials: int
    erasure_prob: float
    correctable_seen: int = 0
    corrected: int = 0
    stuck_correctable: int = 0
    uncorrectable_seen: int = 0
    seed: int | None = None
    collection: str = ""

    def to_json(self) -> dict:
        return asdict(self)

    def merge(self, other: "ChannelStats") -> None:
        self.correctable_seen += other.correctable_seen
        self.corrected += other.corrected
        self.stuck_correctable += other.stuck_correctable
        self.uncorrectable_seen += other.uncorrectable_seen


def _run_block(C: Code, checks: list[int], p: float, trials: int, seed_seq, cache: dict) -> ChannelStats:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    erased = rng.random((trials, C.n)) < p
    weights = 1 << np.arange(C.n, dtype=np.uint64)
    masks = (erased.astype(np.uint64) * weights).sum(axis=1)
    stats = ChannelStats(trials, p)
    uniq, counts = np.unique(masks, return_counts=True)
    for mask, cnt in zip(uniq.tolist(), counts.tolist()):
        outcome = cache.get(mask)
        if outcome is None:
            if not C.columns_independent(mask):
                outcome = "uncorrectable"
            else:
                outcome = "corrected" if peel_mask(checks, mask)[0] == 0 else "stuck"
            cache[mask] = outcome
        if outcome == "uncorrectable":
            stats.uncorrectable_seen += cnt
        else:
            stats.correctable_seen += cnt
            if outcome == "corrected":
                stats.corrected += cnt
            else:
                stats.stuck_correctable += cnt
    return stats


def simulate(
    C: Code,
    Hcoll: Sequence[BitVec] | Sequence[int],
    p: float,
    trials: int,
    seed: int,
    *,
    workers: int = 1,
    collection_id: str = "",
) -> ChannelStats:
    """Monte Carlo over i.i.d. erasures with probability p per position.

    Trials are cut into fixed blocks, each seeded from ``SeedSequence(seed)``,
    so the counts do not depend on the worker count.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"erasure probability {p} outside [0, 1]")
    if trials < 0:
        raise ValueError("trials must be non-negative")
    if C.n > 63:
        raise ValueError("simulation needs n <= 63")
    checks, length = _checks(Hcoll)
    if length is not None and length != C.n:
        raise ValueError(f"check length {length} does not match code length {C.n}")
    nblocks = -(-trials // BLOCK_TRIALS)
    seqs = np.random.SeedSequence(seed).spawn(nblocks)
    sizes = [min(BLOCK_TRIALS, trials - i * BLOCK_TRIALS) for i in range(nblocks)]
    cache: dict[int, str] = {}
    if workers > 1 and nblocks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda i: _run_block(C, checks, p, sizes[i], seqs[i], {}), range(nblocks)))
    else:
        parts = [_run_block(C, checks, p, sizes[i], seqs[i], cache) for i in range(nblocks)]
    total = ChannelStats(trials, p, seed=seed, collection=collection_id)
    for part in parts:
        total.merge(part)
    return total
