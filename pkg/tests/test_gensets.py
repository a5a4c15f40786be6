from math import comb

import pytest

from generic_erasure.codes import hamming_code, random_code
from generic_erasure.gensets import (
    GenericSet,
    construct_A,
    construct_A_star,
    construct_B,
    construct_even_weight_set,
    construct_W,
    induced_collection,
    inverse_transform,
    load_set,
    parse_set,
    random_invertible,
    save_set,
    size_A,
    size_B,
    transform,
    w_transform_matrix,
)
from generic_erasure.gf2 import BitMatrix, combine_rows

from oracles import weight


def strings(A):
    return sorted(A.strings())


class TestConstructA:
    def test_r4_m3(self):
        A = construct_A(4, 3)
        assert strings(A) == sorted(["1000", "1100", "1010", "1001", "1110", "1101", "1011"])
        assert len(A) == comb(3, 0) + comb(3, 1) + comb(3, 2) == 7

    def test_r3_m3_is_half_the_space(self):
        A = construct_A(3, 3)
        assert len(A) == 4 == 2 ** (3 - 1)
        assert all(v & 1 for v in A)

    def test_r2_m2(self):
        assert strings(construct_A(2, 2)) == ["10", "11"]

    @pytest.mark.parametrize("r,m", [(3, 1), (3, 4), (2, 3)])
    def test_bad_parameters(self, r, m):
        with pytest.raises(ValueError):
            construct_A(r, m)

    def test_size_formula_against_predicate(self):
        for r in range(2, 13):
            for m in range(2, r + 1):
                direct = sum(1 for v in range(1 << r) if v & 1 and weight(v) <= m)
                assert len(construct_A(r, m)) == direct == size_A(r, m)


class TestConstructB:
    def test_r5_m3(self):
        assert construct_B(5, 3).vectors == (1,)

    def test_r9_m4(self):
        assert construct_B(9, 4).vectors == (1,)
        assert size_B(9, 4) == comb(0, 0) + comb(0, 1) == 1

    def test_r6_m3_low_weight_forces_e1(self):
        # supp within {1, 2}, weight <= 1, a_1 = 1
        brute = [v for v in range(1 << 6) if v & 1 and weight(v) <= 1 and v >> 2 == 0]
        assert list(construct_B(6, 3).vectors) == brute == [1]

    @pytest.mark.parametrize("r,m", [(4, 3), (8, 4), (3, 3), (5, 2)])
    def test_rejects_below_bound(self, r, m):
        with pytest.raises(ValueError):
            construct_B(r, m)
        with pytest.raises(ValueError):
            construct_A_star(r, m)

    def test_size_formula_and_inclusion(self):
        for m in (3, 4):
            for r in range((1 << (m - 1)) + 1, 13):
                B = construct_B(r, m)
                assert len(B) == size_B(r, m)
                assert set(B) <= set(construct_A(r, m))


class TestConstructAStar:
    def test_r5_m3(self):
        A = construct_A_star(5, 3)
        assert len(construct_A(5, 3)) == 11
        assert len(A) == 10 and 1 not in A

    def test_r6_m3(self):
        assert len(construct_A_star(6, 3)) == 16 - 1

    def test_r9_m4(self):
        assert len(construct_A(9, 4)) == 1 + 8 + 28 + 56
        assert len(construct_A_star(9, 4)) == 92


class TestConstructW:
    def test_r3(self):
        assert strings(construct_W(3)) == sorted(["100", "010", "001", "111"])

    def test_sizes(self):
        assert len(construct_W(4)) == 1 + 4 * 3 // 2 == 7
        assert len(construct_W(5)) == 11 == len(construct_A(5, 3))
        for r in range(3, 13):
            assert len(construct_W(r)) == len(construct_A(r, 3)) == 1 + r * (r - 1) // 2

    def test_too_small(self):
        with pytest.raises(ValueError):
            construct_W(2)


class TestEvenWeightSet:
    def test_sizes(self):
        assert len(construct_even_weight_set(4)) == 6
        assert len(construct_even_weight_set(5)) == 8
        assert len(construct_A(5, 4)) == 15
        assert strings(construct_even_weight_set(2)) == ["01", "11"]
        for r in range(2, 13):
            assert len(construct_even_weight_set(r)) == 2 * (r - 1)


class TestTransform:
    def test_identity(self):
        A = construct_A(4, 3)
        assert transform(A, BitMatrix.identity(4)) == A

    def test_A_r3_maps_to_W(self):
        S = w_transform_matrix(3)
        assert S.columns() == [0b111, 0b010, 0b100]
        assert transform(construct_A(3, 3), S) == construct_W(3)
        for r in range(3, 10):
            assert transform(construct_A(r, 3), w_transform_matrix(r)) == construct_W(r)

    def test_round_trip_and_size(self, rng):
        for r in range(2, 7):
            A = GenericSet(r, tuple(int(x) for x in rng.choice(1 << r, size=min(5, 1 << r), replace=False)))
            for _ in range(20):
                S = random_invertible(r, rng)
                B = transform(A, S)
                assert len(B) == len(A)
                assert inverse_transform(B, S) == A

    def test_singular_rejected(self):
        with pytest.raises(ValueError):
            transform(construct_A(3, 3), BitMatrix.from_strings(["110", "011", "101"]))


class TestInducedCollection:
    def test_units_give_rows_of_H(self, rng):
        C = random_code(4, 9, rng)
        units = GenericSet(4, (1, 2, 4, 8))
        assert [h.bits for h in induced_collection(units, C)] == list(C.H.rows)

    def test_A33_on_hamming(self):
        C = hamming_code(3)
        checks = induced_collection(construct_A(3, 3), C)
        expected = [combine_rows(a, C.H.rows) for a in (1, 3, 5, 7)]
        assert [h.bits for h in checks] == expected
        assert len(set(expected)) == 4

    def test_empty(self):
        assert induced_collection(GenericSet(3, ()), hamming_code(3)) == []

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            induced_collection(construct_A(4, 3), hamming_code(3))


@pytest.mark.parametrize(
    "A",
    [construct_A(5, 3), construct_W(4), construct_A_star(6, 3), construct_even_weight_set(4), construct_A(6, 6)],
)
def test_constructions_span(A):
    assert A.spans()


def test_set_file_round_trip(tmp_path):
    A = construct_A_star(5, 3)
    path = tmp_path / "a.txt"
    save_set(A, path)
    lines = path.read_text().split()
    assert lines[0] == "5" and lines[1:] == A.strings()
    assert load_set(path) == A


@pytest.mark.parametrize("text", ["", "3\n10\n", "3\n100\n100\n", "x\n100\n", "3\n1a0\n"])
def test_set_file_rejects_bad_input(text):
    with pytest.raises(ValueError):
        parse_set(text)
