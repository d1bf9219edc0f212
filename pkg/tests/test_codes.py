"""Binary code constructors, formats, duals, and distance tests."""

import numpy as np
import pytest

import oracles
from cosetstore.codes import (
    BinaryCode,
    CodeFamilyId,
    augmented_hr_code,
    bch2_code,
    build_code,
    code_from_text,
    contains_dual_power,
    distance_at_least_4,
    dual_generators,
    ext_hamming_code,
    format_parity_check,
    golay23_code,
    min_distance_exhaustive,
    parse_parity_check,
    repetition_code,
    rm_quadratic_code,
    schur_power_dual,
)
from cosetstore.errors import CapacityError, DimensionError
from cosetstore.gf2 import Gf2Matrix


class TestFamilyId:
    def test_parse_aliases(self):
        assert CodeFamilyId.parse("repetition:5").kind == "repetition"
        assert CodeFamilyId.parse("rep:5").param == 5
        assert CodeFamilyId.parse("exthamming:3").kind == "ext_hamming"
        assert CodeFamilyId.parse("golay").kind == "golay23"
        assert CodeFamilyId.parse("bch2:6").param == 6
        assert CodeFamilyId.parse("rm2:4").kind == "rm_quadratic"

    def test_parse_errors(self):
        with pytest.raises(ValueError):
            CodeFamilyId.parse("fountain:3")
        with pytest.raises(ValueError):
            CodeFamilyId.parse("repetition")
        with pytest.raises(ValueError):
            CodeFamilyId.parse("bch2:x")

    def test_str_roundtrip(self):
        for text in ("repetition:5", "golay23", "bch2:6"):
            assert str(CodeFamilyId.parse(text)) == text


class TestRepetition:
    def test_shape_and_kernel(self):
        c = repetition_code(5)
        assert (c.n, c.r, c.k) == (5, 4, 1)
        # the only nonzero codeword is all-ones
        assert oracles.brute_min_distance(c.H.to_bits()) == 5

    def test_columns(self):
        c = repetition_code(4)
        assert c.column_ints() == [1, 2, 4, 7]


class TestExtHamming:
    def test_parameters(self):
        c = ext_hamming_code(3)
        assert (c.n, c.r, c.k) == (8, 4, 4)
        assert min_distance_exhaustive(c) == 4
        assert distance_at_least_4(c)

    def test_last_row_all_ones(self):
        c = ext_hamming_code(4)
        assert c.H.row(4).weight() == 16

    def test_columns_distinct(self):
        c = ext_hamming_code(3)
        cols = c.column_ints()
        assert len(set(cols)) == len(cols)


class TestAugmented:
    def test_r4_matrix_display(self):
        c = augmented_hr_code(4)
        expect = "\n".join(
            [
                "9 5",
                "000011110",
                "001100110",
                "010101010",
                "111111110",
                "000000011",
            ]
        ) + "\n"
        assert format_parity_check(c.H) == expect

    def test_shapes(self):
        for r in (3, 4, 5, 6):
            c = augmented_hr_code(r)
            assert (c.n, c.r) == ((1 << (r - 1)) + 1, r + 1)

    def test_weight2_override(self):
        c = augmented_hr_code(4, weight2_col=3)
        assert c.H.row(4).support() == [3, 8]

    def test_bad_params(self):
        with pytest.raises(ValueError):
            augmented_hr_code(2)
        with pytest.raises(ValueError):
            augmented_hr_code(4, weight2_col=99)


class TestGolay:
    def test_parameters(self):
        c = golay23_code()
        assert (c.n, c.r, c.k) == (23, 11, 12)
        assert min_distance_exhaustive(c) == 7

    def test_weight_distribution_endpoints(self):
        # the [23, 12, 7] code contains the all-ones word
        c = golay23_code()
        G = c.H.kernel_basis()
        words = set()
        rows = [G.row(i).to_int() for i in range(G.nrows)]
        acc = 0
        for mask in range(1 << len(rows)):
            acc = 0
            for i, row in enumerate(rows):
                if (mask >> i) & 1:
                    acc ^= row
            words.add(acc)
        assert (1 << 23) - 1 in words
        assert len(words) == 1 << 12


class TestBch2:
    def test_small_is_repetition(self):
        c = bch2_code(3)
        assert c.n == 7
        assert c.k == 1
        assert min_distance_exhaustive(c) == 7

    def test_s4_parameters(self):
        c = bch2_code(4)
        assert (c.n, c.r, c.k) == (15, 8, 7)
        assert min_distance_exhaustive(c) == 5

    def test_bad_param(self):
        with pytest.raises(ValueError):
            bch2_code(2)


class TestRmQuadratic:
    def test_shapes_and_rank(self):
        c = rm_quadratic_code(4)
        assert (c.n, c.r) == (15, 10)
        assert c.H.rank() == 10

    def test_rows_are_evaluations(self):
        c = rm_quadratic_code(3)
        bits = c.H.to_bits()
        pts = np.arange(1, 8)
        assert np.array_equal(bits[0], (pts >> 0) & 1)
        assert np.array_equal(bits[3], ((pts >> 0) & 1) & ((pts >> 1) & 1))


def test_build_code_dispatch():
    assert build_code(CodeFamilyId.parse("repetition:5")).label == "repetition[5,1]"
    assert build_code(CodeFamilyId.parse("golay")).n == 23


class TestTextFormat:
    def test_roundtrip(self):
        c = augmented_hr_code(5)
        again = parse_parity_check(format_parity_check(c.H))
        assert again == c.H

    def test_whitespace_tolerated(self):
        m = parse_parity_check("3 2\n1 0 1\n  011\n")
        assert m.to_bits().tolist() == [[1, 0, 1], [0, 1, 1]]

    def test_errors(self):
        with pytest.raises(ValueError):
            parse_parity_check("")
        with pytest.raises(ValueError):
            parse_parity_check("3\n101\n")
        with pytest.raises(ValueError):
            parse_parity_check("3 2\n101\n")
        with pytest.raises(ValueError):
            parse_parity_check("3 1\n10\n")
        with pytest.raises(ValueError):
            parse_parity_check("3 1\n1x1\n")

    def test_code_from_text(self):
        c = code_from_text("3 1\n111\n", label="demo")
        assert (c.n, c.r, c.label) == (3, 1, "demo")


class TestDualAndSchur:
    def test_dual_dimension(self):
        c = golay23_code()
        assert dual_generators(c).nrows == 11

    def test_schur_square_of_dual(self):
        # dual of the extended Hamming code: products of its rows span a
        # strictly larger space unless the code is degenerate
        c = repetition_code(5)
        dual = schur_power_dual(c, 2)
        assert dual.row_space_equals(dual_generators(c))

    def test_schur_span_matches_brute(self):
        rng = np.random.default_rng(2)
        H = Gf2Matrix.random(4, 10, rng)
        c = BinaryCode(10, 4, H)
        span = schur_power_dual(c, 3)
        base = dual_generators(c).to_bits()
        prods = [(base[i] & base[j]) for i in range(len(base))
                 for j in range(len(base))]
        assert span.rank() == oracles.naive_rank(np.array(prods))

    def test_contains_dual_power_trivial(self):
        # parity-check [1...1]: dual = {0, all-ones}, contained iff n even
        even = code_from_text("4 1\n1111\n")
        odd = code_from_text("3 1\n111\n")
        assert contains_dual_power(even, 2)
        assert not contains_dual_power(odd, 2)  # odd-weight all-ones word


class TestDistance:
    def test_distance4_matches_brute(self):
        rng = np.random.default_rng(6)
        agree = 0
        for _ in range(40):
            bits = rng.integers(0, 2, size=(5, 8), dtype=np.uint8)
            c = BinaryCode(8, 5, Gf2Matrix.from_bits(bits))
            if c.k == 0:
                continue
            brute = oracles.brute_min_distance(bits) >= 4
            assert distance_at_least_4(c) == brute
            agree += 1
        assert agree > 10

    def test_min_distance_budget(self):
        with pytest.raises(CapacityError):
            min_distance_exhaustive(bch2_code(5), max_dim=10)

    def test_trivial_code_rejected(self):
        c = code_from_text("2 2\n10\n01\n")
        with pytest.raises(ValueError):
            min_distance_exhaustive(c)


def test_binary_code_shape_validation():
    with pytest.raises(DimensionError):
        BinaryCode(5, 3, Gf2Matrix(2, 5))
