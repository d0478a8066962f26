import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from softspell import arabic
from softspell.arabic import from_intermediate, to_intermediate
from softspell.groups import (
    ALEF_END_GROUP,
    ALL_GROUPS,
    GROUP_CANONICAL,
    GROUP_MEMBERS,
    HAMZA_GROUP,
    TARGET_SYMBOLS,
    TEH_END_GROUP,
    WAW_END_GROUP,
    CorruptionRecord,
    InjectionConfig,
    apply_record,
    eligible_count,
    inject_corpus,
    inject_errors,
    resolve_group,
    transform_input,
)
from softspell.errors import DataError

intermediate_text = st.builds(
    to_intermediate,
    st.text(alphabet=[chr(c) for c in range(0x0621, 0x064B)] + [" "], max_size=50),
)


class TestRegistry:
    def test_group_union_is_the_14_target_symbols(self):
        assert len(TARGET_SYMBOLS) == 14
        assert TARGET_SYMBOLS == {
            "ء", "آ", "أ", "ؤ", "إ", "ئ", "ا", "ة", "ى", "J", "A", "O", "T", "H",
        }

    def test_canonicals(self):
        assert GROUP_CANONICAL[HAMZA_GROUP] == "ء"
        assert GROUP_CANONICAL[TEH_END_GROUP] == "ة"
        assert GROUP_CANONICAL[WAW_END_GROUP] == "O"
        assert GROUP_CANONICAL[ALEF_END_GROUP] == "ى"
        for g in ALL_GROUPS:
            assert GROUP_CANONICAL[g] in GROUP_MEMBERS[g]

    def test_resolution_is_a_partition(self):
        # every (symbol, position-class) pair hits at most one group
        for sym in TARGET_SYMBOLS:
            for final in (True, False):
                g = resolve_group(sym, final)
                if g is not None:
                    assert sym in GROUP_MEMBERS[g]


class TestResolveGroup:
    def test_hamza_forms(self):
        assert resolve_group("أ", False) == HAMZA_GROUP
        assert resolve_group("أ", True) == HAMZA_GROUP
        assert resolve_group("J", False) == HAMZA_GROUP

    def test_alef_is_positional(self):
        assert resolve_group("ا", True) == ALEF_END_GROUP
        assert resolve_group("ا", False) == HAMZA_GROUP

    def test_non_confusable(self):
        assert resolve_group("ب", True) is None
        assert resolve_group("ب", False) is None
        assert resolve_group(" ", True) is None


class TestTransformInput:
    @pytest.mark.parametrize(
        "seq,expected",
        [
            ("قرJة", "قرءة"),
            ("عفا", "عفى"),
            ("درس", "درس"),
            ("", ""),
        ],
    )
    def test_known_collapses(self, seq, expected):
        assert transform_input(seq) == expected

    def test_collapse_hits_every_group_member(self):
        # the word-final alef of لا collapses too (alef_end group),
        # alongside the waw_end code A
        assert transform_input("لا تنظرA") == "لى تنظرO"

    def test_length_preserved(self):
        for seq in ("قرJة", "لا تنظرA", "عفا بكى", "أشيJ"):
            assert len(transform_input(seq)) == len(seq)

    @given(intermediate_text)
    @settings(max_examples=300)
    def test_idempotent(self, seq):
        once = transform_input(seq)
        assert transform_input(once) == once
        assert len(once) == len(seq)


class TestEligibleCount:
    def test_hand_counts(self):
        assert eligible_count("قرJة") == 2  # J, ة
        assert eligible_count("درس") == 0
        assert eligible_count("لا تنظرA") == 2  # word-final ا of لا, A

    def test_group_filter(self):
        assert eligible_count("قرJة", [HAMZA_GROUP]) == 1
        assert eligible_count("قرJة", [TEH_END_GROUP]) == 1
        assert eligible_count("قرJة", [WAW_END_GROUP]) == 0


class TestInjectErrors:
    def test_rate_zero_is_identity(self):
        seq = "قرJة عفا"
        out, rec = inject_errors(seq, InjectionConfig(rate=0.0, seed=1))
        assert out == seq
        assert len(rec) == 0

    def test_rate_one_changes_every_eligible_symbol(self):
        seq = "قرJة"
        out, rec = inject_errors(seq, InjectionConfig(rate=1.0, seed=7))
        assert len(rec) == eligible_count(seq) == 2
        assert out != seq
        for e in rec.entries:
            assert e.original != e.injected

    def test_injected_symbol_shares_group_with_original(self):
        cfg = InjectionConfig(rate=1.0, seed=3)
        for seq in ("قرJة", "لا تنظرA", "عفا بكى", "مكتبH كثرT"):
            out, rec = inject_errors(seq, cfg)
            finals = arabic.word_final_positions(seq)
            for e in rec.entries:
                g = resolve_group(e.original, e.position in finals)
                assert g is not None
                assert e.injected in GROUP_MEMBERS[g]

    def test_middle_hamza_on_alef_mistake_is_reachable(self):
        # J -> أ decodes to the classic wrong spelling of "reading"
        cfg = lambda seed: InjectionConfig(
            rate=1.0, seed=seed, enabled_groups=frozenset({HAMZA_GROUP})
        )
        hits = set()
        for seed in range(200):
            out, _ = inject_errors("قرJة", cfg(seed))
            hits.add(from_intermediate(out))
        assert "قرأة" in hits

    def test_determinism(self):
        cfg = InjectionConfig(rate=0.7, seed=42)
        a = inject_errors("قرJة عفا بكى أشيJ", cfg)
        b = inject_errors("قرJة عفا بكى أشيJ", cfg)
        assert a[0] == b[0]
        assert a[1].entries == b[1].entries

    def test_positions_strictly_increasing(self):
        out, rec = inject_errors("قرJة عفا بكى أشيJ", InjectionConfig(1.0, seed=5))
        positions = [e.position for e in rec.entries]
        assert positions == sorted(set(positions))

    def test_length_preserved(self):
        for seed in range(10):
            seq = "لا تنظرA قرJة"
            out, _ = inject_errors(seq, InjectionConfig(rate=0.5, seed=seed))
            assert len(out) == len(seq)

    def test_invalid_rate_rejected(self):
        with pytest.raises(DataError):
            InjectionConfig(rate=1.5)

    @given(intermediate_text, st.integers(0, 2**32))
    @settings(max_examples=200)
    def test_record_replay_reproduces_corruption(self, seq, seed):
        out, rec = inject_errors(seq, InjectionConfig(rate=0.5, seed=seed))
        assert apply_record([seq], rec)[0] == out

    def test_statistical_rate(self):
        # binomial concentration: measured change fraction within
        # +/-0.01 of p over >= 1e5 eligible symbols
        seqs = ["قرJة عفا بكى أشيJ مكتبH لا تنظرA"] * 12000
        eligible = sum(eligible_count(s) for s in seqs)
        assert eligible >= 1e5
        corrupted, rec = inject_corpus(seqs, InjectionConfig(rate=0.4, seed=11))
        measured = len(rec) / eligible
        assert abs(measured - 0.4) < 0.01


class TestInjectCorpus:
    def test_sequence_ids_are_indices(self):
        seqs = ["قرJة", "درس", "عفا"]
        _, rec = inject_corpus(seqs, InjectionConfig(rate=1.0, seed=2))
        assert {e.seq_id for e in rec.entries} <= {0, 2}  # درس has no eligible

    def test_per_sequence_seeds_are_order_independent(self):
        # the same sequence at the same index corrupts identically even
        # if the rest of the corpus changes
        cfg = InjectionConfig(rate=0.8, seed=9)
        full, _ = inject_corpus(["قرJة", "عفا بكى"], cfg)
        head, _ = inject_corpus(["قرJة"], cfg)
        assert full[0] == head[0]

    def test_replay_matches_bit_exactly(self):
        seqs = ["قرJة عفا", "لا تنظرA", "درس"]
        corrupted, rec = inject_corpus(seqs, InjectionConfig(rate=0.9, seed=13))
        assert apply_record(seqs, rec) == corrupted

    def test_replay_mismatch_detected(self):
        seqs = ["قرJة"]
        _, rec = inject_corpus(seqs, InjectionConfig(rate=1.0, seed=1))
        with pytest.raises(DataError):
            apply_record(["درسسس"], rec)


class TestRecordTsv:
    def test_roundtrip(self, tmp_path):
        _, rec = inject_corpus(["قرJة عفا"], InjectionConfig(rate=1.0, seed=4))
        path = tmp_path / "changes.tsv"
        rec.write_tsv(path)
        loaded = CorruptionRecord.read_tsv(path)
        assert loaded.entries == rec.entries
