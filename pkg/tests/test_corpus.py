import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from softspell.batching import batches, encode_batch
from softspell.corpus import (
    Corpus,
    Record,
    SplitSpec,
    corpus_stats,
    load_corpus,
    save_corpus,
    split,
    wrap_sequences,
    wrap_text,
)
from softspell.errors import (
    DataError,
    EmptyCorpusError,
    EncodingError,
    LengthMismatchError,
    SpecTooLargeError,
)
from softspell.synthetic import SyntheticConfig, build_word_list, generate_corpus
from softspell.vocab import PAD_INDEX, UNK_INDEX, Vocabulary


class TestLoadCorpus:
    def test_three_lines(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("درس\nقراءة\nعفا\n", encoding="utf-8")
        c = load_corpus(p)
        assert len(c) == 3
        assert c.texts() == ["درس", "قراءة", "عفا"]

    def test_empty_file(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("", encoding="utf-8")
        assert len(load_corpus(p)) == 0

    def test_blank_lines_skipped(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("درس\n\n  \nعفا\n", encoding="utf-8")
        assert len(load_corpus(p)) == 2

    def test_preprocessing_flags(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("جريحٌ\nقراءة\n", encoding="utf-8")
        c = load_corpus(p, strip_diacritics=True, to_intermediate=True)
        assert c.texts() == ["جريح", "قرJة"]

    def test_bad_encoding_reports_line(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_bytes("درس\n".encode() + b"\xff\xfe\n")
        with pytest.raises(EncodingError) as exc:
            load_corpus(p)
        assert exc.value.line_no == 2

    def test_story_column(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("s1\tدرس\ns2\tعفا\n", encoding="utf-8")
        c = load_corpus(p, story_column=True)
        assert [r.source for r in c] == ["s1", "s2"]
        assert c.texts() == ["درس", "عفا"]

    def test_save_roundtrip(self, tmp_path):
        c = Corpus.from_texts(["درس", "قرJة"])
        p = tmp_path / "out.txt"
        save_corpus(c, p)
        assert load_corpus(p).texts() == c.texts()


class TestSplit:
    def test_story_split(self):
        records = [
            Record(f"s{i}", j, f"t{i}{j}") for i in range(10) for j in range(3)
        ]
        train, ev = split(Corpus(records), SplitSpec("story", n_train=7))
        assert {r.source for r in train} == {f"s{i}" for i in range(7)}
        assert {r.source for r in ev} == {f"s{i}" for i in range(7, 10)}
        assert len(train) + len(ev) == 30

    def test_line_split_sizes(self):
        c = Corpus.from_texts([f"t{i}" for i in range(55)])
        train, ev = split(c, SplitSpec("lines", n_train=50, n_test=5))
        assert (len(train), len(ev)) == (50, 5)
        assert train.texts() == [f"t{i}" for i in range(50)]

    def test_line_split_default_rest(self):
        c = Corpus.from_texts(["a", "b", "c"])
        train, ev = split(c, SplitSpec("lines", n_train=3))
        assert len(train) == 3 and len(ev) == 0

    def test_disjoint_exhaustive(self):
        c = Corpus.from_texts([f"t{i}" for i in range(9)])
        train, ev = split(c, SplitSpec("lines", n_train=6))
        assert train.texts() + ev.texts() == c.texts()

    def test_too_large(self):
        c = Corpus.from_texts(["a"])
        with pytest.raises(SpecTooLargeError):
            split(c, SplitSpec("lines", n_train=2))
        with pytest.raises(SpecTooLargeError):
            split(c, SplitSpec("story", n_train=2))


class TestWrap:
    def test_exact_limit_untouched(self):
        text = "ب" * 400
        assert wrap_text(text, 400) == [text]

    def test_soft_split_keeps_boundary_left(self):
        # 401 symbols with a space at index 395: chunks of 396 and 5
        text = "ب" * 395 + " " + "ج" * 5
        chunks = wrap_text(text, 400)
        assert [len(c) for c in chunks] == [396, 5]
        assert chunks[0][-1] == " "

    def test_hard_split_without_boundary(self):
        text = "ب" * 401
        assert [len(c) for c in wrap_text(text, 400)] == [400, 1]

    def test_multiple_chunks(self):
        text = ("ب" * 30 + " ") * 40  # 1240 chars
        chunks = wrap_text(text, 100)
        assert all(len(c) <= 100 for c in chunks)
        assert "".join(chunks) == text

    @given(st.text(alphabet=list("بجد او"), min_size=0, max_size=300))
    @settings(max_examples=300)
    def test_concatenation_reproduces_original(self, text):
        chunks = wrap_text(text, 37)
        assert "".join(chunks) == text
        assert all(len(c) <= 37 for c in chunks)

    def test_corpus_wrap_parts_numbered(self):
        c = Corpus.from_texts(["ب" * 90, "قصير"])
        wrapped = wrap_sequences(c, 40)
        parts = [(r.line, r.part) for r in wrapped]
        assert parts == [(0, 0), (0, 1), (0, 2), (1, 0)]


class TestVocabulary:
    def test_frequency_order(self):
        v = Vocabulary.from_sequences(["ابا"])
        assert len(v) == 4  # pad, unk, ا, ب
        assert v.encode("ا") == 2
        assert v.encode("ب") == 3

    def test_tie_broken_by_code_point(self):
        v = Vocabulary.from_sequences(["بج", "جب"])
        assert v.encode("ب") == 2
        assert v.encode("ج") == 3

    def test_same_multiset_same_vocab(self):
        a = Vocabulary.from_sequences(["ابجد", "اا"])
        b = Vocabulary.from_sequences(["اجد", "ااب"])
        assert a == b

    def test_unseen_symbol_is_unk(self):
        v = Vocabulary.from_sequences(["اب"])
        assert v.encode("س") == UNK_INDEX

    def test_decode_reserved_raises(self):
        v = Vocabulary.from_sequences(["اب"])
        with pytest.raises(DataError):
            v.decode(PAD_INDEX)
        with pytest.raises(DataError):
            v.decode(len(v))

    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpusError):
            Vocabulary.from_sequences([])

    def test_save_load_bit_exact(self, tmp_path):
        v = Vocabulary.from_sequences(["قرJة عفا بكى", "لا تنظرA"])
        p = tmp_path / "vocab.tsv"
        v.save(p)
        loaded = Vocabulary.load(p)
        assert loaded == v
        for sym in v.symbols():
            assert loaded.encode(sym) == v.encode(sym)


class TestBatching:
    @pytest.fixture
    def vocab(self):
        return Vocabulary.from_sequences(["قرJة عفا بكى درس"])

    def test_batch_count_with_partial(self, vocab):
        pairs = [("اب", "اب")] * 130
        out = list(batches(pairs, vocab, batch_size=64))
        assert [b.size for b in out] == [64, 64, 2]

    def test_one_hot_rows_sum_to_one_when_unmasked(self, vocab):
        b = encode_batch([("قرJة", "قرJة"), ("اب", "اب")], vocab)
        sums = b.x.sum(axis=2)
        assert np.array_equal(sums == 1.0, b.mask)
        assert np.all(sums[~b.mask] == 0.0)

    def test_masked_targets_are_pad(self, vocab):
        b = encode_batch([("قرJة", "قرJة"), ("اب", "اب")], vocab)
        assert np.all(b.y[~b.mask] == PAD_INDEX)

    def test_unknown_encodes_to_unk(self, vocab):
        b = encode_batch([("xy", "xy")], vocab)
        assert np.all(b.x[0, :, UNK_INDEX] == 1.0)

    def test_shuffle_determinism(self, vocab):
        pairs = [(f"{'ب' * (i % 5 + 1)}", f"{'ب' * (i % 5 + 1)}") for i in range(40)]
        a = [b.y.tolist() for b in batches(pairs, vocab, 16, shuffle_seed=3)]
        b = [b.y.tolist() for b in batches(pairs, vocab, 16, shuffle_seed=3)]
        c = [b.y.tolist() for b in batches(pairs, vocab, 16, shuffle_seed=4)]
        assert a == b
        assert a != c

    def test_length_mismatch_raises(self, vocab):
        with pytest.raises(LengthMismatchError):
            encode_batch([("اب", "ا")], vocab)

    def test_fixed_length_pads_to_max(self, vocab):
        out = list(batches([("اب", "اب")], vocab, max_len=50, fixed_length=True))
        assert out[0].x.shape[1] == 50


class TestCorpusStats:
    def test_hand_counted_words(self):
        stats = corpus_stats(Corpus.from_texts(["اب اب"]))
        assert stats["sequence_count"] == 1
        assert stats["word_count"] == 2
        assert stats["words_per_sequence"] == 2
        assert stats["letters_per_word"] == 2
        assert stats["character_count"] == 5

    def test_empty_corpus_zeros(self):
        stats = corpus_stats(Corpus.from_texts([]))
        assert stats["sequence_count"] == 0
        assert stats["words_per_sequence"] == 0.0
        assert stats["target_subtotal"] == 0

    def test_relative_frequencies_sum_to_one(self):
        from softspell.arabic import to_intermediate

        corpus = generate_corpus(SyntheticConfig(n_sequences=200, seed=1))
        stats = corpus_stats(corpus.map_texts(to_intermediate))
        total = sum(row["relative_frequency"] for row in stats["targets"])
        assert abs(total - 1.0) < 1e-9

    def test_fraction_within_limit(self):
        stats = corpus_stats(Corpus.from_texts(["ب" * 10, "ب" * 500]))
        assert stats["fraction_within_max_len"] == 0.5


class TestSynthetic:
    def test_word_list_size_and_determinism(self):
        a = build_word_list(200, seed=5)
        b = build_word_list(200, seed=5)
        assert a == b
        assert len(a) == 200

    def test_words_unique_under_collapse(self):
        from softspell.arabic import to_intermediate
        from softspell.groups import transform_input

        words = build_word_list(200, seed=5)
        keys = {transform_input(to_intermediate(w)) for w in words}
        assert len(keys) == len(words)

    def test_corpus_shape(self):
        cfg = SyntheticConfig(n_sequences=50, n_words=60, seed=3)
        c = generate_corpus(cfg)
        assert len(c) == 50
        words = set(build_word_list(60, seed=3))
        for r in c:
            assert set(r.text.split(" ")) <= words

    def test_generator_matches_stats(self):
        # generator-known ground truth: counts line up with stats output
        cfg = SyntheticConfig(n_sequences=100, n_words=50, seed=7)
        c = generate_corpus(cfg)
        stats = corpus_stats(c)
        assert stats["sequence_count"] == 100
        assert stats["word_count"] == sum(len(r.text.split(" ")) for r in c)
        assert stats["character_count"] == sum(len(r.text) for r in c)
