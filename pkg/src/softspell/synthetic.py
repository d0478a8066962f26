"""Synthetic Arabic corpus generator for tests and demos.

Licensed corpora cannot ship with the package, so tests run on
generated text: a closed word list rich in soft-error-prone letters
(hamza forms, word-final teh marbuta/teh/heh, alef/alef maksura, waw and
waw-alef endings) sampled into space-separated sequences.

Two properties matter for learnability experiments. The vocabulary is
closed, and no two words collapse to the same canonical form, so a
corrupted word always has a unique clean restoration given its letters;
a sequence model can in principle reach perfect correction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arabic import to_intermediate
from .corpus import Corpus
from .groups import transform_input
from .seeding import make_rng

# Real words covering every confusion group, all correct spellings.
SEED_WORDS = [
    "قراءة", "المروءة", "أشياء", "خطأ", "شيء", "السماء", "ملجأ", "يجرؤ",
    "الموانئ", "دفء", "رأس", "رؤية", "بئر", "كثرة", "مكتبة", "ساعات",
    "مدرسة", "تنظروا", "يجثو", "يدعو", "قالوا", "كتبوا", "ذهبوا", "عصا",
    "هدى", "على", "إلى", "متى", "موسى", "عيسى", "بكى", "عفا", "ابن",
    "أخذ", "إذا", "آمن", "سأل", "قرأ", "بدأ", "مساء", "بناء", "أمة",
    "فتاه", "كتابه", "مياه", "نبت", "بيت", "صوت", "أولئك", "سؤال",
]

_STEM_LETTERS = "بجحدرزسشصطعفقكلمن"
_ENDINGS = [
    "ة", "ه", "ت", "ا", "ى", "و", "وا", "اء", "أ", "ء", "ئ", "ؤ", "",
]
_PREFIXES = ["", "", "", "أ", "إ", "ا", "آ", "م", "ي"]


@dataclass(frozen=True)
class SyntheticConfig:
    n_sequences: int
    n_words: int = 200
    min_words: int = 4
    max_words: int = 10
    seed: int = 0


def _collapse_key(word: str) -> str:
    return transform_input(to_intermediate(word))


def build_word_list(n_words: int, seed: int = 0) -> list[str]:
    """Deterministic word list of the requested size, unique under
    confusion-group collapse."""
    rng = make_rng("words", seed)
    words: list[str] = []
    keys: set[str] = set()
    for w in SEED_WORDS:
        key = _collapse_key(w)
        if key not in keys:
            keys.add(key)
            words.append(w)
    attempts = 0
    while len(words) < n_words:
        attempts += 1
        if attempts > 100 * n_words:
            raise RuntimeError("word generation stalled; relax the config")
        stem_len = int(rng.integers(2, 5))
        stem = "".join(
            _STEM_LETTERS[rng.integers(len(_STEM_LETTERS))] for _ in range(stem_len)
        )
        word = (
            _PREFIXES[rng.integers(len(_PREFIXES))]
            + stem
            + _ENDINGS[rng.integers(len(_ENDINGS))]
        )
        if len(word) < 2:
            continue
        key = _collapse_key(word)
        if key in keys:
            continue
        keys.add(key)
        words.append(word)
    return words[:n_words]


def generate_corpus(cfg: SyntheticConfig) -> Corpus:
    """Raw-text corpus of seeded random sentences over the word list."""
    words = build_word_list(cfg.n_words, cfg.seed)
    rng = make_rng("sequences", cfg.seed)
    lines = []
    for _ in range(cfg.n_sequences):
        k = int(rng.integers(cfg.min_words, cfg.max_words + 1))
        picks = rng.integers(len(words), size=k)
        lines.append(" ".join(words[i] for i in picks))
    return Corpus.from_texts(lines, source="synthetic")
