import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generic_erasure.codes import dual_codewords, even_weight_code, hamming_code, is_correctable, random_code
from generic_erasure.decoder import (
    enumerate_stopping_sets,
    is_stopping_set,
    peel,
    simulate,
    support_weight_check,
)
from generic_erasure.gensets import construct_A, construct_W, induced_collection
from generic_erasure.gf2 import BitVec
from generic_erasure.verifier import is_generic

from oracles import is_stopping, largest_stopping_set, positions, weight


def mask_of(E):
    return sum(1 << (p - 1) for p in E)


def random_order_residual(checks, E, rng):
    """Peel choosing uniformly among all applicable checks."""
    while True:
        applicable = [h for h in checks if weight(h & E) == 1]
        if not applicable:
            return E
        h = applicable[rng.integers(len(applicable))]
        E ^= h & E


class TestPeel:
    def test_example1(self, example1):
        trace = peel(example1, [1, 2, 3, 4])
        assert trace.steps == [(1, 0b10001)]
        assert trace.residual == (2, 3, 4)
        assert trace.to_json() == {
            "initial": [1, 2, 3, 4],
            "steps": [{"pos": 1, "check": "10001"}],
            "residual": [2, 3, 4],
        }

    def test_empty_pattern(self, example1):
        trace = peel(example1, [])
        assert trace.steps == [] and trace.residual == () and trace.success

    def test_full_dual_clears_correctable_pattern(self, rep5):
        duals = [w for w in dual_codewords(rep5) if w.bits]
        assert len(duals) == 15
        assert peel(duals, [1, 2, 3, 4]).residual == ()

    def test_trace_invariants(self, example1):
        checks = [h.bits for h in example1]
        for E in range(32):
            trace = peel(example1, positions(E), n=5)
            current = E
            for pos, h in trace.steps:
                assert h in checks
                assert h & current == 1 << (pos - 1)
                current ^= 1 << (pos - 1)
            assert mask_of(trace.residual) == current
            assert is_stopping(checks, current)
            resolved = {p for p, _ in trace.steps}
            assert resolved.isdisjoint(trace.residual)
            assert resolved | set(trace.residual) == set(positions(E))

    @pytest.mark.parametrize("r,n", [(3, 6), (4, 8), (5, 10), (6, 10)])
    def test_residual_is_largest_stopping_set_any_order(self, rng, r, n):
        C = random_code(r, n, rng)
        duals = [w.bits for w in dual_codewords(C) if w.bits]
        collections = [list(C.H.rows), duals]
        collections += [[int(x) for x in rng.choice(duals, size=min(len(duals), k), replace=False)] for k in (2, r, 2 * r)]
        for checks in collections:
            for E in range(1 << n):
                res = mask_of(peel(checks, positions(E), n=n).residual)
                assert res == largest_stopping_set(checks, E)
                assert random_order_residual(checks, E, rng) == res

    def test_residual_monotone(self, rng):
        C = random_code(4, 8, rng)
        checks = [int(x) for x in rng.choice([w.bits for w in dual_codewords(C) if w.bits], size=5, replace=False)]
        res = {E: mask_of(peel(checks, positions(E), n=8).residual) for E in range(256)}
        for E in range(256):
            sub = E
            while sub:
                sub = (sub - 1) & E
                assert res[sub] & ~res[E] == 0

    def test_generic_sets_clear_correctable_patterns(self, rng):
        for A, m in [(construct_A(4, 3), 3), (construct_A(4, 4), 4), (construct_W(5), 3)]:
            assert is_generic(A, m).verdict
            for _ in range(4):
                C = random_code(A.r, int(rng.integers(A.r + 1, 13)), rng)
                checks = induced_collection(A, C)
                for E in _patterns(C.n, m, rng, 200):
                    if is_correctable(C, E):
                        assert peel(checks, E, n=C.n).success


def _patterns(n, m, rng, count):
    for _ in range(count):
        yield tuple(sorted(int(p) + 1 for p in rng.choice(n, size=m, replace=False)))


class TestStoppingSets:
    def test_example1_stopping(self, example1):
        assert is_stopping_set(example1, [2, 3, 4])
        assert is_stopping_set(example1, [])
        assert not is_stopping_set(example1, [1, 2, 3, 4])

    def test_single_unit_check(self):
        assert not is_stopping_set([BitVec.from_str("100")], [1])

    def test_enumerate_example1(self, example1):
        found = enumerate_stopping_sets(example1, 3)
        assert (2, 3, 4) in found
        assert found[0] == ()
        assert [len(s) for s in found] == sorted(len(s) for s in found)

    def test_full_dual_of_hamming(self):
        C = hamming_code(3)
        duals = [w for w in dual_codewords(C) if w.bits]
        assert enumerate_stopping_sets(duals, 2) == [()]
        three = [s for s in enumerate_stopping_sets(duals, 3) if len(s) == 3]
        assert three and all(not is_correctable(C, s) for s in three)

    def test_empty_collection(self):
        assert enumerate_stopping_sets([], 1, n=4) == [(), (1,), (2,), (3,), (4,)]

    def test_matches_brute_force(self, example1):
        checks = [h.bits for h in example1]
        brute = [positions(E) for E in range(32) if is_stopping(checks, E)]
        got = enumerate_stopping_sets(example1, 5)
        assert sorted(got) == sorted(brute)


class TestSupportWeight:
    def test_example1(self, example1, rep5):
        assert is_stopping_set(example1, [1, 2, 3, 4, 5])
        assert support_weight_check(example1, rep5)

    def test_full_dual_hamming(self):
        C = hamming_code(3)
        assert support_weight_check(list(dual_codewords(C)), C)

    def test_random_dual_subsets(self, rng):
        for _ in range(20):
            r = int(rng.integers(2, 6))
            C = random_code(r, int(rng.integers(r + 1, 11)), rng)
            duals = [w.bits for w in dual_codewords(C)]
            picked = [int(x) for x in rng.choice(duals, size=int(rng.integers(1, len(duals) + 1)), replace=False)]
            assert support_weight_check(picked, C)

    def test_non_dual_check_breaks_it(self, rep5):
        assert not support_weight_check([BitVec.from_str("10000")], rep5)


class TestSimulate:
    def test_p0(self, example1, rep5):
        s = simulate(rep5, example1, 0.0, 1000, seed=1)
        assert s.corrected == s.correctable_seen == s.trials == 1000

    def test_p1(self, example1, rep5):
        s = simulate(rep5, example1, 1.0, 1000, seed=1)
        assert s.uncorrectable_seen == 1000 and s.correctable_seen == 0

    def test_stuck_patterns_occur(self, example1, rep5):
        s = simulate(rep5, example1, 0.5, 20_000, seed=3)
        assert s.stuck_correctable > 0
        assert s.correctable_seen == s.corrected + s.stuck_correctable
        assert s.trials == s.correctable_seen + s.uncorrectable_seen

    def test_deterministic_and_worker_independent(self, example1, rep5):
        a = simulate(rep5, example1, 0.3, 35_000, seed=11)
        b = simulate(rep5, example1, 0.3, 35_000, seed=11, workers=3)
        assert json.dumps(a.to_json()) == json.dumps(b.to_json())
        c = simulate(rep5, example1, 0.3, 35_000, seed=12)
        assert c.to_json() != a.to_json()

    def test_bad_probability(self, example1, rep5):
        with pytest.raises(ValueError):
            simulate(rep5, example1, 1.5, 10, seed=0)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(0, 1), st.integers(0, 2**32 - 1))
    def test_counter_identities(self, p, seed):
        C = even_weight_code(3, 7)
        checks = [w for w in dual_codewords(C) if w.bits][:4]
        s = simulate(C, checks, p, 500, seed)
        assert s.trials == s.correctable_seen + s.uncorrectable_seen
        assert s.correctable_seen == s.corrected + s.stuck_correctable
