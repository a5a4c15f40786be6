"""Hot loop of the genericity check, with a numba path and a pure-numpy path.

The scan walks every linearly independent m-subset {c_1 < ... < c_m} of a
candidate list and asks whether some a in A has a.c_j = 1 for exactly one j.
For each candidate vector c the caller supplies ``masks[c]``, the bitset of
members a with a.c = 1, so the "exactly one" test is an incremental
once/more-than-once bitset update along the subset prefix.

Set ``GENERIC_ERASURE_DISABLE_NUMBA=1`` to force the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("GENERIC_ERASURE_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED
BACKEND = "numba" if USE_NUMBA else "numpy"


def parity_masks(vectors, r: int) -> np.ndarray:
    """masks[c, w] holds bits 64w..64w+63 of {i : <vectors[i], c> = 1}, for all c < 2^r."""
    vecs = np.asarray(vectors, dtype=np.uint64)
    nwords = max(1, -(-len(vecs) // 64))
    cs = np.arange(1 << r, dtype=np.uint64)
    odd = (np.bitwise_count(cs[:, None] & vecs[None, :]) & 1).astype(bool)
    pad = np.zeros((1 << r, nwords * 64), dtype=bool)
    pad[:, : len(vecs)] = odd
    packed = np.packbits(pad, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False)


def _scan_python(cands, masks, m, lo, hi, fail):
    """Reference loop; compiled by numba as-is.

    Scans subsets whose first element has index in [lo, hi).  Returns the
    number of independent subsets tested; on a failure, writes the subset's
    candidate indices into ``fail`` and stops.  ``inspan`` flags the span of
    the current prefix, so independence is a table lookup.
    """
    K = cands.shape[0]
    W = masks.shape[1]
    idx = np.zeros(m, np.int64)
    span = np.zeros(1 << m, np.int64)
    added = np.zeros(m, np.bool_)
    inspan = np.zeros(masks.shape[0], np.bool_)
    inspan[0] = True
    once = np.zeros((m + 1, W), np.uint64)
    multi = np.zeros((m + 1, W), np.uint64)
    count = 0
    depth = 0
    idx[0] = lo - 1
    while True:
        if added[depth]:
            for j in range(1 << depth, 2 << depth):
                inspan[span[j]] = False
            added[depth] = False
        idx[depth] += 1
        i = idx[depth]
        if i > K - (m - depth) or (depth == 0 and i >= hi):
            if depth == 0:
                return count
            depth -= 1
            continue
        v = cands[i]
        if inspan[v]:
            continue
        if depth == m - 1:
            count += 1
            hit = False
            for t in range(W):
                x = masks[v, t]
                if (once[depth, t] & ~x) | (x & ~(once[depth, t] | multi[depth, t])):
                    hit = True
                    break
            if not hit:
                for k in range(m - 1):
                    fail[k] = idx[k]
                fail[m - 1] = i
                return count
            continue
        for t in range(W):
            x = masks[v, t]
            o = once[depth, t]
            mu = multi[depth, t]
            once[depth + 1, t] = (o & ~x) | (x & ~(o | mu))
            multi[depth + 1, t] = mu | (o & x)
        half = 1 << depth
        for j in range(half):
            s = span[j] ^ v
            span[half + j] = s
            inspan[s] = True
        added[depth] = True
        depth += 1
        idx[depth] = i


if HAVE_NUMBA:
    _scan_numba = numba.njit(nogil=True, cache=True)(_scan_python)
else:  # pragma: no cover
    _scan_numba = None


def _scan_numpy(cands, masks, m, lo, hi, fail):
    """Same contract as ``_scan_python``; the last subset position is vectorised."""
    K = cands.shape[0]
    W = masks.shape[1]
    idx = [0] * m
    inspan = np.zeros(masks.shape[0], dtype=bool)
    inspan[0] = True
    span = [0]
    once = np.zeros((m + 1, W), np.uint64)
    multi = np.zeros((m + 1, W), np.uint64)
    count = 0

    def last_level(depth, start, stop):
        nonlocal count
        rest = cands[start:stop]
        if rest.size == 0:
            return False
        valid = ~inspan[rest]
        x = masks[rest]
        o = once[depth]
        mu = multi[depth]
        no = (o & ~x) | (x & ~(o | mu))
        bad = valid & ~(no != 0).any(axis=1)
        if bad.any():
            j = int(np.argmax(bad))
            count += int(valid[: j + 1].sum())
            fail[:depth] = idx[:depth]
            fail[depth] = start + j
            return True
        count += int(valid.sum())
        return False

    def rec(depth, start, stop):
        if depth == m - 1:
            return last_level(depth, start, stop)
        for i in range(start, min(stop, K - (m - depth) + 1)):
            v = int(cands[i])
            if inspan[v]:
                continue
            x = masks[v]
            o = once[depth]
            mu = multi[depth]
            once[depth + 1] = (o & ~x) | (x & ~(o | mu))
            multi[depth + 1] = mu | (o & x)
            idx[depth] = i
            grown = [u ^ v for u in span]
            inspan[grown] = True
            span.extend(grown)
            if rec(depth + 1, i + 1, K):
                return True
            del span[len(grown):]
            inspan[grown] = False
        return False

    rec(0, lo, hi)
    return count


def scan(cands: np.ndarray, masks: np.ndarray, m: int, lo: int, hi: int, backend: str | None = None):
    """Run the scan on [lo, hi); returns (count, failing index tuple or None)."""
    backend = backend or BACKEND
    fail = np.full(m, -1, dtype=np.int64)
    if backend == "numba":
        if _scan_numba is None:  # pragma: no cover
            raise RuntimeError("numba is not installed")
        count = _scan_numba(cands, masks, m, lo, hi, fail)
    elif backend == "numpy":
        count = _scan_numpy(cands, masks, m, lo, hi, fail)
    elif backend == "python":
        count = _scan_python(cands, masks, m, lo, hi, fail)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if fail[0] < 0:
        return int(count), None
    return int(count), tuple(int(i) for i in fail)
