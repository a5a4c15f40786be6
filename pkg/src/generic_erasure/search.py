"""Exact minimum sizes F(r, m) of generic sets by exhaustive search."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator

import numpy as np

from . import _kernels
from .gensets import GenericSet, size_A
from .gf2 import candidate_vectors, parity, rank_of_rows
from .verifier import DEFAULT_BUDGET, BudgetExceeded, is_generic

log = logging.getLogger(__name__)

MAX_OPTIMA = 1000


@dataclass
class SearchReport:
    r: int
    m: int
    f_value: int
    optimal_sets: list[GenericSet] = field(default_factory=list)
    sets_examined: int = 0
    sets_verified: int = 0
    certified: bool = False
    optimal_count: int | None = None

    @property
    def conjecture_consistent(self) -> bool | None:
        """Agreement with the conjectured F(r, r-1) = 2^(r-1) - 1; None when m != r - 1."""
        if self.m != self.r - 1 or self.r < 2:
            return None
        return self.f_value == (1 << (self.r - 1)) - 1

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "m": self.m,
            "F": self.f_value,
            "certified": self.certified,
            "optimal_count": self.optimal_count,
            "conjecture_optr1_consistent": self.conjecture_consistent,
            "sets_examined": self.sets_examined,
        }


class _Oracle:
    """Genericity test for many small sets sharing (r, m)."""

    def __init__(self, r: int, m: int, backend: str | None = None):
        self.r, self.m = r, m
        self.cands = np.array(candidate_vectors(r), dtype=np.int64)
        self.hi = len(self.cands) - m + 1
        self.backend = backend

    def __call__(self, vecs: tuple[int, ...]) -> bool:
        masks = _kernels.parity_masks(vecs, self.r)
        _, fail = _kernels.scan(self.cands, masks, self.m, 0, self.hi, self.backend)
        return fail is None


def _pruned(vecs: tuple[int, ...], r: int, m: int, universe: frozenset[int]) -> bool:
    # a generic set spans F_2^r
    if rank_of_rows(vecs) < r:
        return True
    # for m = r, the complement holds no r independent vectors
    if m == r and rank_of_rows(universe.difference(vecs)) == r:
        return True
    return False


def generic_sets_of_size(
    r: int, m: int, k: int, *, prune: bool = True, stats: dict | None = None, backend: str | None = None
) -> Iterator[tuple[int, ...]]:
    """Yield every generic (r, m) set of k nonzero vectors, in lexicographic order."""
    universe = frozenset(range(1, 1 << r))
    oracle = _Oracle(r, m, backend)
    stats = stats if stats is not None else {}
    for vecs in combinations(range(1, 1 << r), k):
        stats["examined"] = stats.get("examined", 0) + 1
        if prune and _pruned(vecs, r, m, universe):
            continue
        stats["verified"] = stats.get("verified", 0) + 1
        if oracle(vecs):
            yield vecs


def _upper_bound(r: int, m: int) -> int:
    return r if m == 1 else size_A(r, m)


def min_size(
    r: int,
    m: int,
    *,
    enumerate_optima: bool = False,
    prune: bool = True,
    budget: int = DEFAULT_BUDGET,
    max_optima: int = MAX_OPTIMA,
    backend: str | None = None,
) -> SearchReport:
    """Smallest generic (r, m) set size, certified both ways.

    Sizes are scanned upward, so every smaller size is exhausted before the
    first hit.  The zero vector never gives weight one and is left out.
    """
    if not 1 <= m <= r:
        raise ValueError(f"need 1 <= m <= r, got r={r}, m={m}")
    if r > 5:
        raise BudgetExceeded(f"exhaustive search is limited to r <= 5, got {r}")
    N = (1 << r) - 1
    stats: dict = {}
    spent = 0
    for k in range(1, N + 1):
        spent += comb(N, k)
        if spent > budget:
            raise BudgetExceeded(
                f"search budget {budget} exhausted at size {k}: {k} <= F({r},{m}) <= {_upper_bound(r, m)}",
                lower=k,
                upper=_upper_bound(r, m),
            )
        hits = []
        for vecs in generic_sets_of_size(r, m, k, prune=prune, stats=stats, backend=backend):
            stats["hits"] = stats.get("hits", 0) + 1
            if len(hits) < max_optima:
                hits.append(vecs)
            if not enumerate_optima:
                break
        if hits:
            sets = [GenericSet(r, v) for v in hits]
            certified = is_generic(sets[0], m).verdict and k <= _upper_bound(r, m)
            return SearchReport(
                r, m, k, sets,
                sets_examined=stats.get("examined", 0),
                sets_verified=stats.get("verified", 0),
                certified=certified,
                optimal_count=stats.get("hits") if enumerate_optima else None,
            )
    raise RuntimeError(f"no generic ({r},{m}) set found")  # pragma: no cover


def hyperplane_complements(r: int) -> set[tuple[int, ...]]:
    """{x : u.x = 1} for each nonzero u; the complements of the (r-1)-dim subspaces."""
    return {tuple(x for x in range(1, 1 << r) if parity(u & x)) for u in range(1, 1 << r)}


def optimal_rr_characterization(r: int) -> bool:
    """All minimum generic (r, r) sets are exactly the hyperplane complements."""
    report = min_size(r, r, enumerate_optima=True)
    found = {s.vectors for s in report.optimal_sets}
    return report.f_value == 1 << (r - 1) and found == hyperplane_complements(r)


def inclusion_minimality_audit(A: GenericSet, m: int, *, budget: int = DEFAULT_BUDGET) -> dict[int, bool]:
    """For each member a, whether A minus a is still generic (r, m)."""
    return {a: is_generic(A.without(a), m, budget=budget).verdict for a in A}
