import pytest
from hypothesis import given
from hypothesis import strategies as st

from flagcalc.errors import DomainError, ParseError, UnknownGeneratorError
from flagcalc.words import (
    LEX_LEAST,
    MINUS,
    PLUS,
    CanonicalPolicy,
    GeneratorSet,
    PresentationClass,
    SignedLetter,
    SignedWord,
    check_commutation_law,
    class_of,
    flip_generator_signs,
    format_word,
    iter_words,
    pair,
    parse_sign,
    parse_word,
    words_of_length,
)

GENS = GeneratorSet.of("a", "b", "c")


def w(text: str) -> SignedWord:
    return parse_word(text, GENS)


signs = st.sampled_from((PLUS, MINUS))
letters = st.builds(SignedLetter, st.integers(min_value=0, max_value=2), signs)
signed_words = st.builds(
    lambda ls: SignedWord(GENS, tuple(ls)), st.lists(letters, max_size=6)
)


class TestGeneratorSet:
    def test_of_builds_named_set(self):
        assert len(GENS) == 3
        assert GENS.index("b") == 1

    def test_rejects_duplicates(self):
        with pytest.raises(DomainError):
            GeneratorSet.of("a", "a")

    def test_rejects_empty(self):
        with pytest.raises(DomainError):
            GeneratorSet.of()

    @pytest.mark.parametrize("name", ["", "1a", "a+", "a b"])
    def test_rejects_bad_names(self, name):
        with pytest.raises(DomainError):
            GeneratorSet.of(name)

    def test_unknown_name_lookup(self):
        with pytest.raises(DomainError):
            GENS.index("q")


class TestParsing:
    def test_two_letter_example(self):
        word = w("a+ b-")
        assert len(word) == 2
        assert format_word(word) == "a+ b-"

    def test_empty_text_is_empty_word(self):
        assert parse_word("", GENS) == SignedWord.empty(GENS)
        assert format_word(SignedWord.empty(GENS)) == ""

    def test_sign_characters(self):
        assert parse_sign("+") == PLUS
        assert parse_sign("-") == MINUS
        with pytest.raises(ParseError):
            parse_sign("*")

    def test_unknown_generator_reports_name(self):
        with pytest.raises(UnknownGeneratorError) as exc:
            parse_word("a+ q-", GENS)
        assert exc.value.name == "q"
        assert exc.value.column == 4

    def test_malformed_token_reports_position(self):
        with pytest.raises(ParseError) as exc:
            parse_word("a+ b*", GENS)
        assert exc.value.line == 1
        assert exc.value.column == 4

    @given(signed_words)
    def test_round_trip(self, word):
        assert parse_word(format_word(word), GENS) == word


class TestInvolution:
    def test_reverses_and_flips_signs(self):
        assert w("a+ b+").involution() == w("b- a-")
        assert w("a-").involution() == w("a+")
        assert w("").involution() == w("")

    @given(signed_words)
    def test_order_two(self, word):
        assert word.involution().involution() == word

    @given(signed_words, signed_words)
    def test_anti_automorphism(self, u, v):
        assert u.concat(v).involution() == v.involution().concat(u.involution())

    def test_concat_requires_matching_generators(self):
        other = GeneratorSet.of("a")
        with pytest.raises(DomainError):
            w("a+").concat(SignedWord.from_pairs(other, [("a", PLUS)]))


class TestPresentationClass:
    def test_lex_least_canonical(self):
        cls = class_of(w("b- a-"))
        assert cls.canonical == w("a+ b+")
        assert cls.anti == w("b- a-")
        assert not cls.is_degenerate

    def test_degenerate_fiber_is_flagged(self):
        cls = class_of(w("a+ a-"))
        assert cls.is_degenerate
        assert cls.canonical == cls.anti

    @given(signed_words)
    def test_constant_on_fibers(self, word):
        assert class_of(word) == class_of(word.involution())
        assert hash(class_of(word)) == hash(class_of(word.involution()))

    @given(signed_words)
    def test_members_are_the_unordered_fiber(self, word):
        assert class_of(word).members() == {word, word.involution()}

    def test_classes_collapse_in_sets(self):
        seen = {class_of(w("a+ b+")), class_of(w("b- a-"))}
        assert len(seen) == 1

    def test_anti_field_is_validated(self):
        with pytest.raises(DomainError):
            PresentationClass(w("a+"), w("a+"))

    def test_signed_form_selects_member(self):
        cls = class_of(w("b- a-"))
        assert cls.signed_form(PLUS) == w("a+ b+")
        assert cls.signed_form(MINUS) == w("b- a-")


class TestCanonicalPolicy:
    def test_explicit_choice_wins_over_lex(self):
        policy = CanonicalPolicy.keeping([w("b- a-")])
        assert class_of(w("a+ b+"), policy).canonical == w("b- a-")

    def test_lookup_works_from_either_member(self):
        policy = CanonicalPolicy.keeping([w("b- a-")])
        assert class_of(w("b- a-"), policy).canonical == w("b- a-")

    def test_override_must_pick_a_fiber_member(self):
        with pytest.raises(DomainError):
            CanonicalPolicy("explicit", {w("a+"): w("b+")})

    def test_default_policy_is_lex_least(self):
        assert LEX_LEAST.choose(w("b- a-")) == w("a+ b+")


class TestPair:
    @pytest.mark.parametrize(
        "sigma,tau,expected",
        [
            (PLUS, MINUS, "a+ b+"),
            (MINUS, PLUS, "a- b-"),
            (PLUS, PLUS, "a+ b-"),
            (MINUS, MINUS, "a- b+"),
        ],
    )
    def test_generator_identities(self, sigma, tau, expected):
        a = class_of(w("a+"))
        b = class_of(w("b+"))
        assert pair(a, sigma, tau, b) == w(expected)

    def test_longer_operands_concatenate_signed_forms(self):
        left = class_of(w("a+ b+"))
        right = class_of(w("c+"))
        assert pair(left, PLUS, MINUS, right) == w("a+ b+ c+")
        assert pair(left, MINUS, MINUS, right) == w("b- a- c+")

    @given(signed_words, signs, signs, signed_words)
    def test_commutation_law(self, u, sigma, tau, v):
        assert check_commutation_law(class_of(u), sigma, tau, class_of(v))

    @given(signed_words, signs, signs, signed_words)
    def test_flip_law_on_classes(self, u, sigma, tau, v):
        a, b = class_of(u), class_of(v)
        assert class_of(pair(a, sigma, tau, b)) == class_of(pair(b, tau, sigma, a))


class TestPolicyCovariance:
    """Swapping which sign of one generator is canonical is an automorphism."""

    @given(signed_words, signed_words, st.integers(min_value=0, max_value=2))
    def test_commutes_with_concat(self, u, v, gen):
        assert flip_generator_signs(u.concat(v), gen) == flip_generator_signs(
            u, gen
        ).concat(flip_generator_signs(v, gen))

    @given(signed_words, st.integers(min_value=0, max_value=2))
    def test_commutes_with_involution(self, word, gen):
        assert flip_generator_signs(word.involution(), gen) == flip_generator_signs(
            word, gen
        ).involution()

    @given(signed_words, signs, signs, signed_words, st.integers(min_value=0, max_value=2))
    def test_commutes_with_pair_on_kept_classes(self, u, sigma, tau, v, gen):
        plain = pair(
            PresentationClass.from_canonical(u),
            sigma,
            tau,
            PresentationClass.from_canonical(v),
        )
        flipped = pair(
            PresentationClass.from_canonical(flip_generator_signs(u, gen)),
            sigma,
            tau,
            PresentationClass.from_canonical(flip_generator_signs(v, gen)),
        )
        assert flipped == flip_generator_signs(plain, gen)


class TestEnumeration:
    def test_words_of_length_counts(self):
        assert sum(1 for _ in words_of_length(GENS, 0)) == 1
        assert sum(1 for _ in words_of_length(GENS, 2)) == 36

    def test_iter_words_counts(self):
        assert sum(1 for _ in iter_words(GENS, 2)) == 1 + 6 + 36

    def test_enumeration_is_deterministic(self):
        assert list(iter_words(GENS, 2)) == list(iter_words(GENS, 2))
