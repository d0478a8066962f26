"""Arabic character model and the positional intermediate transcoder.

Soft spelling mistakes include additions and omissions (dropping the
alef of a word-final waw-alef, writing a middle hamza on an alef), so a
character-level corrector that maps position i of the input to position
i of the output cannot operate on raw text directly. The fix used here
is a reversible transcoding into an intermediate alphabet in which every
confusable unit occupies exactly one position:

    alef+hamza  ->  J   (anywhere in a word)
    waw+alef    ->  A   (word-final only)
    waw         ->  O   (word-final only)
    teh         ->  T   (word-final only)
    heh         ->  H   (word-final only)

The five ASCII code letters never occur in natural Arabic text, which is
validated at encode time. Decoding expands each code back to its raw
letters, so decode(encode(x)) == x for any diacritic-free input.

Word-final means the letter (or pair) ends a maximal run of Arabic
letters: whitespace, punctuation, digits and Latin text all terminate a
word. Inputs are expected in canonical Unicode (no presentation forms)
and should be stripped of diacritics first; `strip_diacritics` does
that.
"""

from __future__ import annotations

from enum import Enum

from .errors import InvalidInputError

# Letters that participate in soft errors, individually or as the first
# half of a coded pair.
HAMZA = "ء"  # ء
ALEF_MADDA = "آ"  # آ
ALEF_HAMZA_ABOVE = "أ"  # أ
WAW_HAMZA = "ؤ"  # ؤ
ALEF_HAMZA_BELOW = "إ"  # إ
YEH_HAMZA = "ئ"  # ئ
ALEF = "ا"  # ا
TEH_MARBUTA = "ة"  # ة
TEH = "ت"  # ت
HEH = "ه"  # ه
WAW = "و"  # و
ALEF_MAKSURA = "ى"  # ى

TARGET_LETTERS = frozenset(
    "ءآأؤإئا"  # hamza family + alef
    + TEH_MARBUTA
    + TEH
    + HEH
    + WAW
    + ALEF_MAKSURA
)

# Harakat, tanwin, shadda, sukun (U+064B..U+0652) and superscript alef.
DIACRITICS = frozenset(chr(c) for c in range(0x064B, 0x0653)) | {"ٰ"}

# Two-character units expand left to right; single codes are word-final.
CODE_EXPANSIONS = {
    "J": ALEF + HAMZA,  # اء
    "A": WAW + ALEF,  # وا
    "O": WAW,
    "T": TEH,
    "H": HEH,
}
CODE_SYMBOLS = frozenset(CODE_EXPANSIONS)

_PAIR_ALEF_HAMZA = CODE_EXPANSIONS["J"]
_PAIR_WAW_ALEF = CODE_EXPANSIONS["A"]


class CharClass(Enum):
    TARGET_LETTER = "target_letter"
    OTHER_LETTER = "other_letter"
    DIACRITIC = "diacritic"
    BOUNDARY = "boundary"
    OTHER = "other"


def classify(ch: str) -> CharClass:
    """Classify one code point; every scalar maps to exactly one class."""
    if ch in TARGET_LETTERS:
        return CharClass.TARGET_LETTER
    if "ء" <= ch <= "ي":
        return CharClass.OTHER_LETTER
    if ch in DIACRITICS:
        return CharClass.DIACRITIC
    if ch.isspace() or ch.isdigit() or _is_punctuation(ch):
        return CharClass.BOUNDARY
    return CharClass.OTHER


def _is_punctuation(ch: str) -> bool:
    import unicodedata

    return unicodedata.category(ch).startswith("P")


def is_letter_symbol(ch: str) -> bool:
    """True for symbols that belong to a word: Arabic letters and the
    intermediate codes. Everything else terminates a word."""
    return "ء" <= ch <= "ي" or ch in CODE_SYMBOLS


def strip_diacritics(text: str) -> str:
    """Remove all diacritic marks, preserving every other code point."""
    return "".join(ch for ch in text if ch not in DIACRITICS)


def word_final_positions(seq: str) -> set[int]:
    """Indices of the last letter symbol of every maximal letter run.

    Runs are delimited by any non-letter symbol or the sequence ends, so
    "لا تنظروا" has two runs and two word-final indices (1 and 8).
    """
    finals: set[int] = set()
    prev_letter = False
    for i, ch in enumerate(seq):
        if is_letter_symbol(ch):
            prev_letter = True
        else:
            if prev_letter:
                finals.add(i - 1)
            prev_letter = False
    if prev_letter:
        finals.add(len(seq) - 1)
    return finals


def to_intermediate(text: str) -> str:
    """Encode diacritic-free raw text into the intermediate alphabet.

    Single left-to-right pass. At each position the first matching rule
    wins: alef+hamza -> J anywhere; then, word-finally, waw+alef -> A
    before the single letters waw/teh/heh -> O/T/H. A pair is word-final
    when its second letter ends the word. All other symbols are copied.

    Raises InvalidInputError if a reserved code letter is already
    present: natural Arabic corpora never contain them, so their
    presence signals a file that is already encoded (or corrupt).
    """
    for i, ch in enumerate(text):
        if ch in CODE_SYMBOLS:
            raise InvalidInputError(
                f"reserved intermediate code symbol {ch!r} at position {i}"
            )
    finals = word_final_positions(text)
    out: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        pair = text[i : i + 2]
        if pair == _PAIR_ALEF_HAMZA:
            out.append("J")
            i += 2
            continue
        if pair == _PAIR_WAW_ALEF and (i + 1) in finals:
            out.append("A")
            i += 2
            continue
        ch = text[i]
        if i in finals:
            if ch == WAW:
                out.append("O")
                i += 1
                continue
            if ch == TEH:
                out.append("T")
                i += 1
                continue
            if ch == HEH:
                out.append("H")
                i += 1
                continue
        out.append(ch)
        i += 1
    return "".join(out)


def from_intermediate(seq: str) -> str:
    """Expand intermediate codes back to raw Arabic letters.

    Exact inverse of `to_intermediate` on its image; symbols outside the
    code set are copied verbatim, so the function is total.
    """
    return "".join(CODE_EXPANSIONS.get(ch, ch) for ch in seq)
