from fractions import Fraction

import pytest

from f2aut.autos import ALL_W1, SIGMA, apply_cyclic, compose, named
from f2aut.oracle import (
    GENERATORS,
    AutoCatalog,
    CatalogDepthError,
    enumerate_automorphisms,
    oracle_potentially_positive,
    sample_ratios,
)
from f2aut.words import Word, cyclic_reduce, is_positive, parse_word


def W(text):
    return parse_word(text)


class TestCatalog:
    def test_depth_zero_is_identity_only(self):
        cat = AutoCatalog(0)
        assert len(cat) == 1
        assert list(cat.image_pairs()) == [(b"\x00", b"\x02")]

    def test_depth_one_size(self):
        # 16 generators, one of which is the identity already present
        assert len(AutoCatalog(1)) == 16

    def test_growth_is_monotone(self):
        sizes = [len(AutoCatalog(d)) for d in range(5)]
        assert sizes == sorted(sizes)
        assert all(a < b for a, b in zip(sizes, sizes[1:]))

    def test_contains_named_maps(self):
        cat = AutoCatalog(2)
        assert SIGMA in cat
        assert named("delta3") in cat
        assert compose(SIGMA, named("tau")) in cat
        for f in ALL_W1:
            assert f in cat

    def test_factors_recompose(self):
        cat = AutoCatalog(3)
        step = max(1, len(cat) // 40)
        for i in range(0, len(cat), step):
            f = cat.automorphism_at(i)
            pa, pb = cat._entries[i][0], cat._entries[i][1]
            assert f.image_of_a.data == pa
            assert f.image_of_b.data == pb
            assert len(cat.factors(i)) <= 3

    def test_depth_cap(self):
        with pytest.raises(CatalogDepthError):
            AutoCatalog(13)
        with pytest.raises(ValueError):
            AutoCatalog(-1)

    def test_enumerate_caches(self):
        assert enumerate_automorphisms(2) is enumerate_automorphisms(2)

    def test_generator_list_shape(self):
        assert len(GENERATORS) == 16
        assert GENERATORS[:8] == ALL_W1


class TestPositivityOracle:
    def test_already_positive(self):
        ans = oracle_potentially_positive(W("ab"), 2)
        assert ans.answer == "yes"
        assert ans.witness is not None
        img = apply_cyclic(ans.witness, cyclic_reduce(W("ab"))[0])
        assert is_positive(img)

    def test_needs_a_map(self):
        ans = oracle_potentially_positive(W("aB"), 3)
        assert ans.answer == "yes"
        img = apply_cyclic(ans.witness, cyclic_reduce(W("aB"))[0])
        assert is_positive(img)

    def test_commutator_has_no_witness(self):
        ans = oracle_potentially_positive(W("abAB"), 5)
        assert ans.answer == "no_within_depth"
        assert ans.witness is None

    def test_identity_word(self):
        assert oracle_potentially_positive(Word(), 0).answer == "yes"

    def test_witness_depth_grows_with_need(self):
        # a b^-3 needs several multiplier factors before turning positive
        shallow = oracle_potentially_positive(W("aBBB"), 1)
        deep = oracle_potentially_positive(W("aBBB"), 6)
        assert deep.answer == "yes"
        assert shallow.answer in ("yes", "no_within_depth")


class TestRatios:
    def test_identity_rejected(self):
        with pytest.raises(ValueError):
            sample_ratios(Word(), W("a"), 1)

    def test_conjugate_of_identity_rejected(self):
        # bB parses to the empty word; abA has cyclic length 1 and is fine
        with pytest.raises(ValueError):
            sample_ratios(W("a"), W("bB"), 1)
        assert sample_ratios(W("a"), W("abA"), 1)

    def test_ratio_values_exact(self):
        ratios = sample_ratios(W("a"), W("a"), 2)
        assert set(ratios) == {Fraction(1)}
        assert len(ratios) == len(AutoCatalog(2))

    def test_word_and_inverse_always_ratio_one(self):
        for t in ("ab", "aab", "abAB"):
            ratios = sample_ratios(W(t), W(t).inverse(), 3)
            assert set(ratios) == {Fraction(1)}

    def test_ratios_include_skew(self):
        ratios = sample_ratios(W("aabAB"), W("a"), 4)
        assert Fraction(5, 1) in ratios
        assert min(ratios) >= Fraction(1, 50)
