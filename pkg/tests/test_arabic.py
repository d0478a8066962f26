import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from softspell.arabic import (
    CharClass,
    classify,
    from_intermediate,
    strip_diacritics,
    to_intermediate,
    word_final_positions,
)
from softspell.errors import InvalidInputError

from vectors import ALL_SPELLINGS

# Arabic letters, boundaries and a little noise; excludes the five
# reserved code letters so strings are valid transcoder input.
RAW_ALPHABET = (
    [chr(c) for c in range(0x0621, 0x064B)] + list(" .،!123xq") + ["ـ"]
)

raw_text = st.text(alphabet=RAW_ALPHABET, max_size=60)


class TestCharClass:
    def test_target_letters(self):
        for ch in "ءآأؤإئاةتهوى":
            assert classify(ch) == CharClass.TARGET_LETTER

    def test_other_letters(self):
        for ch in "بجدسشقكلمني":
            assert classify(ch) == CharClass.OTHER_LETTER

    def test_diacritics(self):
        for ch in "ًٌِّْٰ":
            assert classify(ch) == CharClass.DIACRITIC

    def test_boundaries(self):
        for ch in " \t7.،؟":
            assert classify(ch) == CharClass.BOUNDARY

    def test_other(self):
        for ch in "xЖۖ":
            assert classify(ch) == CharClass.OTHER

    @given(st.characters())
    @settings(max_examples=300)
    def test_every_scalar_has_exactly_one_class(self, ch):
        assert isinstance(classify(ch), CharClass)


class TestStripDiacritics:
    def test_dammatan_removed(self):
        assert strip_diacritics("جريحٌ") == "جريح"

    def test_no_diacritics(self):
        assert strip_diacritics("درس") == "درس"

    def test_only_diacritics(self):
        assert strip_diacritics("ًّٰ") == ""

    def test_fully_vowelled_word(self):
        assert strip_diacritics("كَتَبَ") == "كتب"

    @given(raw_text)
    def test_idempotent(self, text):
        once = strip_diacritics(text)
        assert strip_diacritics(once) == once


class TestWordFinalPositions:
    def test_two_words(self):
        # لا تنظروا: the alef of لا (index 1) and the final alef (index 8)
        assert word_final_positions("لا تنظروا") == {1, 8}

    def test_empty(self):
        assert word_final_positions("") == set()

    def test_single_letter_word(self):
        assert word_final_positions("و") == {0}

    def test_trailing_boundary(self):
        assert word_final_positions("درس.") == {2}

    def test_codes_count_as_letters(self):
        assert word_final_positions("قرJة") == {3}

    def test_digits_and_latin_terminate_words(self):
        assert word_final_positions("درس7درس") == {2, 6}
        assert word_final_positions("درسxدرس") == {2, 6}


class TestToIntermediate:
    @pytest.mark.parametrize(
        "raw,expected",
        [
            ("لا تنظروا", "لا تنظرA"),
            ("قراءة", "قرJة"),
            ("كثرت", "كثرT"),
            ("مكتبه", "مكتبH"),
            ("درس", "درس"),
            ("", ""),
        ],
    )
    def test_known_encodings(self, raw, expected):
        assert to_intermediate(raw) == expected

    def test_alef_hamza_coded_anywhere(self):
        # mid-word and word-final alef+hamza both become J
        assert to_intermediate("قراءة") == "قرJة"
        assert to_intermediate("أشياء") == "أشيJ"

    def test_alef_hamza_wins_over_waw_alef(self):
        # واء ends in اء; the J rule fires, not the word-final pair rule
        assert to_intermediate("سواء") == "سوJ"
        assert to_intermediate("سواء")[-1] == "J"

    def test_waw_alef_mid_word_not_coded(self):
        assert to_intermediate("واصل") == "واصل"

    def test_single_letters_word_final_only(self):
        assert to_intermediate("تنتهي") == "تنتهي"
        assert to_intermediate("وهب") == "وهب"

    def test_reserved_symbol_rejected(self):
        with pytest.raises(InvalidInputError, match="J"):
            to_intermediate("قرJة")

    def test_length_never_grows(self):
        for s in ALL_SPELLINGS:
            assert len(to_intermediate(s)) <= len(s)


class TestFromIntermediate:
    @pytest.mark.parametrize(
        "seq,expected",
        [
            ("لا تنظرA", "لا تنظروا"),
            ("قرJة", "قراءة"),
            ("", ""),
            ("كثرT", "كثرت"),
        ],
    )
    def test_known_expansions(self, seq, expected):
        assert from_intermediate(seq) == expected

    def test_unknown_symbols_copied(self):
        assert from_intermediate("xyz درس") == "xyz درس"


class TestRoundtrip:
    @pytest.mark.parametrize("text", ALL_SPELLINGS)
    def test_misspelling_vectors(self, text):
        assert from_intermediate(to_intermediate(text)) == text

    @given(raw_text)
    @settings(max_examples=500)
    def test_random_strings(self, text):
        assert from_intermediate(to_intermediate(text)) == text

    @given(raw_text)
    @settings(max_examples=200)
    def test_pair_codes_consume_two_raw_chars(self, text):
        seq = to_intermediate(text)
        pairs = sum(1 for ch in seq if ch in "JA")
        assert len(text) == len(seq) + pairs
