from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from tightspan.core import all_edges, validate_metric
from tightspan.errors import DimOutOfRange
from tightspan.generators import (
    PerturbationScheme,
    SplitMix64,
    derive_seed,
    gen_matchex,
    gen_random,
    gen_titrated,
    gen_triangex,
    titration_groups,
)
from tightspan.matching import optimal_matching
from tightspan.core import Weights
from tightspan.subdivision import interior_face_masks, enumerate_maximal_cells, is_generic, tight_span_dimension
from tests.helpers import matchex, random_metric, titrated, triangex


def test_splitmix_reference_values():
    # reference outputs of SplitMix64 seeded with 0
    rng = SplitMix64(0)
    assert [rng.next() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_derive_seed():
    assert derive_seed(42, 0) == 42
    assert derive_seed(42, 1) != derive_seed(42, 2) != 42


class TestPerturbation:
    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_values_small_distinct_positive(self, n):
        vals = PerturbationScheme(n).values
        assert len(set(vals)) == len(vals) == len(all_edges(n))
        assert all(0 < a < Fraction(1, n * n) for a in vals)

    @given(st.integers(min_value=4, max_value=7), st.data())
    def test_base_b_uniqueness(self, n, data):
        p = PerturbationScheme(n)
        m = len(p.values)
        digits = st.lists(st.integers(min_value=0, max_value=p.base - 1), min_size=m, max_size=m)
        a, b = data.draw(digits), data.draw(digits)
        assume(a != b)
        assert p.combination(a) != p.combination(b)


class TestMatchex:
    def test_n4_shape(self):
        d = gen_matchex(4, 3)
        assert d.d(0, 2) == d.d(1, 3) == 2
        for i, j in [(0, 1), (1, 2), (2, 3), (0, 3)]:
            assert 1 < d.d(i, j) < 1 + Fraction(1, 16)

    def test_n5_one_matching_has_half_triangle(self):
        res = optimal_matching(matchex(5), Weights(tuple(Fraction(1) for _ in range(5))))
        for e in [(0, 2), (2, 4), (0, 4)]:
            assert res.matching.weight(*e) == Fraction(1, 2)

    @pytest.mark.parametrize("n", range(4, 9))
    def test_top_dimension(self, n):
        assert tight_span_dimension(matchex(n)).dimension == n // 2

    def test_deterministic(self):
        assert gen_matchex(6, 11) == gen_matchex(6, 11)
        assert gen_matchex(6, 11) != gen_matchex(6, 12)


class TestTriangex:
    def test_k1_all_twos(self):
        assert triangex(1).distances == (2, 2, 2)
        assert tight_span_dimension(triangex(1)).note

    def test_k2(self, triangex6):
        assert tight_span_dimension(triangex6).dimension == 2
        masks = interior_face_masks(enumerate_maximal_cells(triangex6))
        assert min(m.bit_count() for m in masks) >= 4

    @pytest.mark.slow
    def test_k3(self):
        assert tight_span_dimension(triangex(3)).dimension == 3


class TestTitrated:
    def test_groups(self):
        assert titration_groups(6, 2) == [[0, 1, 2], [3, 4, 5]]
        assert titration_groups(6, 3) == [[0, 1], [2, 3], [4, 5]]
        assert titration_groups(8, 3) == [[0, 1, 2], [3, 4, 5], [6, 7]]

    def test_out_of_range(self):
        with pytest.raises(DimOutOfRange):
            gen_titrated(6, 4)
        with pytest.raises(DimOutOfRange):
            titration_groups(7, 2)

    def test_n8_dim3(self):
        assert tight_span_dimension(titrated(8, 3)).dimension == 3


class TestRandom:
    @pytest.mark.parametrize("n", [4, 5])
    def test_dimension_two(self, n):
        for s in range(5):
            assert tight_span_dimension(random_metric(n, s)).dimension == 2

    def test_n6_fifty_seeds(self):
        dims = {tight_span_dimension(random_metric(6, s)).dimension for s in range(50)}
        assert dims <= {2, 3}

    def test_outputs_are_valid_and_generic(self):
        for s in range(5):
            d = gen_random(5, s)
            assert validate_metric(d.as_dict(), 5) == d
            assert is_generic(d)
            assert all(1 < v < 3 for v in d.distances)

    def test_deterministic(self):
        assert gen_random(6, 99) == gen_random(6, 99)
