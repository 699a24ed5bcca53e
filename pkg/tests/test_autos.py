import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_reduced, words
from f2aut.autos import (
    ALL_W1,
    DELTA1,
    DELTA2,
    DELTA3,
    DELTA4,
    IDENTITY,
    PI,
    SIGMA,
    SIGMA_INV,
    TAU,
    TAU_INV,
    Automorphism,
    InvalidAutomorphismError,
    WhiteheadW1,
    WhiteheadW2,
    apply,
    apply_cyclic,
    compose,
    delta_norm,
    inverse,
    named,
    parse_automorphism,
    predicted_length_delta,
    render_automorphism,
)
from f2aut.words import CyclicWord, Letter, Word, cyclic_length, cyclic_reduce, parse_word
from identities import (
    QUARTER_TURN_IDENTITIES,
    STEP_CONJUGATOR_IDENTITIES,
    W2_DECOMPOSITIONS,
    product,
    w2_letters,
)

NAMED_STEPS = ("sigma", "tau", "sigma_inv", "tau_inv", "delta1", "delta2", "delta3", "delta4", "pi")

named_maps = st.sampled_from([named(n) for n in NAMED_STEPS])


def W(text: str) -> Word:
    return parse_word(text)


class TestNamedMaps:
    def test_sigma_tau(self):
        assert apply(SIGMA, W("a")).render() == "ab"
        assert apply(SIGMA, W("b")).render() == "b"
        assert apply(TAU, W("b")).render() == "ba"
        assert apply(TAU, W("a")).render() == "a"

    def test_inverse_steps(self):
        assert apply(SIGMA_INV, W("a")).render() == "aB"
        assert apply(TAU_INV, W("b")).render() == "bA"
        assert compose(SIGMA, SIGMA_INV) == IDENTITY
        assert compose(TAU_INV, TAU) == IDENTITY

    def test_conjugators(self):
        assert apply(DELTA1, W("a")).render() == "Bab"
        assert apply(DELTA2, W("a")).render() == "baB"
        assert apply(DELTA3, W("b")).render() == "Aba"
        assert apply(DELTA4, W("b")).render() == "abA"
        assert apply(DELTA1, W("b")).render() == "b"
        assert inverse(DELTA1) == DELTA2
        assert inverse(DELTA3) == DELTA4

    def test_quarter_turn(self):
        assert apply(PI, W("a")).render() == "b"
        assert apply(PI, W("b")).render() == "A"
        # pi has order 4
        p2 = compose(PI, PI)
        assert compose(p2, p2) == IDENTITY
        assert p2 != IDENTITY

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            named("rho")


class TestIdentityTables:
    def test_w2_decompositions(self):
        for chars, mult, names in W2_DECOMPOSITIONS:
            w2 = WhiteheadW2(Letter[mult], w2_letters(chars)).to_automorphism()
            assert w2 == product(names), (chars, mult, names)

    def test_step_conjugator_identities(self):
        assert len(STEP_CONJUGATOR_IDENTITIES) == 16
        for lhs, rhs in STEP_CONJUGATOR_IDENTITIES:
            assert product(lhs) == product(rhs), (lhs, rhs)

    def test_quarter_turn_identities(self):
        assert len(QUARTER_TURN_IDENTITIES) == 12
        for lhs, rhs in QUARTER_TURN_IDENTITIES:
            assert product(lhs) == product(rhs), (lhs, rhs)


class TestW1:
    def test_count_and_order(self):
        assert len(ALL_W1) == 8
        assert ALL_W1[0] == IDENTITY
        codes = [(f.image_of_a.data[0], f.image_of_b.data[0]) for f in ALL_W1]
        assert codes == sorted(codes)
        assert len(set(ALL_W1)) == 8

    def test_contains_sign_flip_and_quarter_turn(self):
        flip_b = Automorphism(W("a"), W("B"))
        assert flip_b in ALL_W1
        assert PI in ALL_W1

    def test_rejects_collapsed_images(self):
        with pytest.raises(InvalidAutomorphismError):
            WhiteheadW1(Letter.a, Letter.A)

    @given(words)
    @settings(max_examples=60)
    def test_w1_preserves_cyclic_length(self, w):
        wc = cyclic_reduce(w)[0]
        for f in ALL_W1:
            assert len(apply_cyclic(f, wc)) == len(wc)


class TestW2:
    def test_multiplier_cases(self):
        # one-sided set: multiply on the right
        f = WhiteheadW2(Letter.b, [Letter.a]).to_automorphism()
        assert f == SIGMA
        # set containing both a letter and its inverse: conjugate
        g = WhiteheadW2(Letter.b, [Letter.a, Letter.A]).to_automorphism()
        assert g == DELTA1
        h = WhiteheadW2(Letter.a, [Letter.b, Letter.B]).to_automorphism()
        assert h == DELTA3

    def test_validates_multiplier_not_in_set(self):
        with pytest.raises(InvalidAutomorphismError):
            WhiteheadW2(Letter.b, [Letter.b])
        with pytest.raises(InvalidAutomorphismError):
            WhiteheadW2(Letter.b, [Letter.B, Letter.a])


class TestAutomorphismValues:
    def test_construction_validates_basis(self):
        f = Automorphism(W("ab"), W("b"))
        assert f == SIGMA
        with pytest.raises(InvalidAutomorphismError):
            Automorphism(W("a"), W("a"))
        with pytest.raises(InvalidAutomorphismError):
            Automorphism(W("ab"), W("ba"))
        with pytest.raises(InvalidAutomorphismError):
            Automorphism(W("aa"), W("b"))

    def test_render_parse_round_trip(self):
        f = compose(SIGMA, TAU)
        text = render_automorphism(f)
        assert parse_automorphism(text) == f
        assert render_automorphism(IDENTITY) == "a -> a; b -> b"

    @given(st.lists(named_maps, max_size=6))
    @settings(max_examples=60)
    def test_inverse_round_trip(self, factors):
        f = IDENTITY
        for g in factors:
            f = compose(g, f)
        assert compose(f, inverse(f)) == IDENTITY
        assert compose(inverse(f), f) == IDENTITY

    def test_nielsen_search_agrees_with_factor_inverse(self):
        rng = random.Random(99)
        pool = [named(n) for n in NAMED_STEPS]
        for _ in range(50):
            f = IDENTITY
            for _ in range(rng.randrange(0, 7)):
                f = compose(rng.choice(pool), f)
            rebuilt = Automorphism(f.image_of_a, f.image_of_b)
            assert inverse(rebuilt) == inverse(f)


class TestApplication:
    @given(named_maps, words, words)
    @settings(max_examples=80)
    def test_homomorphism_property(self, f, u, v):
        assert apply(f, u * v) == apply(f, u) * apply(f, v)

    @given(named_maps, words, words)
    @settings(max_examples=80)
    def test_apply_cyclic_conjugation_invariant(self, f, w, c):
        from f2aut.words import conjugate

        direct = apply_cyclic(f, cyclic_reduce(w)[0])
        via_conjugate = cyclic_reduce(apply(f, conjugate(w, c)))[0]
        assert direct == via_conjugate

    def test_trivial_cancellation_examples(self):
        # sigma fixes a b^r a^-1 exactly
        w = W("a") * W("b") ** 3 * W("A")
        assert apply(SIGMA, w) == w
        assert apply(SIGMA, W("ab")).render() == "abb"


class TestLengthDeltas:
    def test_delta_norm_examples(self):
        u = cyclic_reduce(W("a"))[0]
        img = apply_cyclic(SIGMA, u)
        assert delta_norm(SIGMA, u, img) == 1
        v = cyclic_reduce(W("b"))[0]
        assert delta_norm(SIGMA, v, apply_cyclic(SIGMA, v)) == 1  # floor at 1
        w = cyclic_reduce(W("aabAB"))[0]
        assert delta_norm(SIGMA, w, apply_cyclic(SIGMA, w)) == 1

    def test_predicted_length_delta_examples(self):
        w = cyclic_reduce(W("aabAB"))[0]
        assert predicted_length_delta(w, "sigma") == 1
        assert predicted_length_delta(cyclic_reduce(W("ab"))[0], "tau") == 1
        assert predicted_length_delta(cyclic_reduce(W("b"))[0], "sigma") == 0

    def test_prediction_matches_actual_in_regime(self):
        # enough multiplier steps applied first puts the image in the
        # no-proper-cancellation regime
        rng = random.Random(4242)
        for _ in range(60):
            u = random_reduced(rng, rng.randrange(1, 6))
            uc = cyclic_reduce(u)[0]
            if len(uc) == 0:
                continue
            image = uc
            sigmas = 0
            for _ in range(len(uc) + rng.randrange(0, 4)):
                step = rng.choice(("sigma", "tau"))
                if step == "sigma":
                    sigmas += 1
                image = apply_cyclic(named(step), image)
            for _ in range(max(0, len(uc) - sigmas)):
                image = apply_cyclic(SIGMA, image)
            after = apply_cyclic(SIGMA, image)
            assert predicted_length_delta(image, "sigma") == len(after) - len(image)
