"""Corpus ingestion, splitting, wrapping and statistics.

A corpus is an ordered list of records, each carrying a source id (file
stem or story id), its line index within that source, and the text. Ids
stay stable through preprocessing so injected-change logs and reports
can refer back to the original lines.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterable, Iterator

from . import arabic
from .errors import DataError, EncodingError, SpecTooLargeError
from .groups import TARGET_SYMBOLS


@dataclass(frozen=True)
class Record:
    source: str
    line: int
    text: str
    part: int = 0  # chunk index after wrapping


class Corpus:
    """Immutable ordered collection of text records."""

    def __init__(self, records: Iterable[Record]):
        self._records = tuple(records)

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[Record]:
        return iter(self._records)

    def __getitem__(self, i):
        return self._records[i]

    def texts(self) -> list[str]:
        return [r.text for r in self._records]

    def map_texts(self, fn: Callable[[str], str]) -> "Corpus":
        return Corpus(replace(r, text=fn(r.text)) for r in self._records)

    @classmethod
    def from_texts(cls, texts: Iterable[str], source: str = "memory") -> "Corpus":
        return cls(Record(source, i, t) for i, t in enumerate(texts))


def load_corpus(
    path,
    strip_diacritics: bool = False,
    to_intermediate: bool = False,
    story_column: bool = False,
) -> Corpus:
    """Read a UTF-8, LF-delimited corpus file, one sequence per
    non-empty line.

    With story_column=True each line is "story_id<TAB>text"; story ids
    drive chronological splits. Preprocessing flags apply diacritic
    stripping and intermediate encoding in that order.
    """
    path = Path(path)
    raw = path.read_bytes()
    records = []
    source = path.stem
    for line_no, chunk in enumerate(raw.split(b"\n"), start=1):
        try:
            line = chunk.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EncodingError(path, line_no, exc) from exc
        line = line.rstrip("\r")
        if not line.strip():
            continue
        story = source
        if story_column:
            story, _, line = line.partition("\t")
            if not line:
                raise DataError(
                    f"{path}: line {line_no}: story_column format needs "
                    "'story<TAB>text'"
                )
        text = line
        if strip_diacritics:
            text = arabic.strip_diacritics(text)
        if to_intermediate:
            text = arabic.to_intermediate(text)
        records.append(Record(story, line_no, text))
    return Corpus(records)


def save_corpus(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for r in corpus:
            fh.write(r.text + "\n")


@dataclass(frozen=True)
class SplitSpec:
    """Deterministic split: by leading story count or by line counts."""

    mode: str  # "story" | "lines"
    n_train: int
    n_test: int | None = None

    def __post_init__(self):
        if self.mode not in ("story", "lines"):
            raise DataError(f"unknown split mode {self.mode!r}")


def split(corpus: Corpus, spec: SplitSpec) -> tuple[Corpus, Corpus]:
    """Disjoint, order-preserving (train, eval) partition.

    mode="story": the first n_train distinct sources (in order of first
    appearance) train, the rest evaluate. mode="lines": the first
    n_train records train and the next n_test (default: all remaining)
    evaluate.
    """
    if spec.mode == "story":
        order: list[str] = []
        seen = set()
        for r in corpus:
            if r.source not in seen:
                seen.add(r.source)
                order.append(r.source)
        if spec.n_train > len(order):
            raise SpecTooLargeError(
                f"asked for {spec.n_train} training stories, corpus has {len(order)}"
            )
        train_sources = set(order[: spec.n_train])
        train = [r for r in corpus if r.source in train_sources]
        evaluation = [r for r in corpus if r.source not in train_sources]
        return Corpus(train), Corpus(evaluation)

    if spec.n_train > len(corpus):
        raise SpecTooLargeError(
            f"asked for {spec.n_train} training lines, corpus has {len(corpus)}"
        )
    n_test = spec.n_test if spec.n_test is not None else len(corpus) - spec.n_train
    if spec.n_train + n_test > len(corpus):
        raise SpecTooLargeError(
            f"split {spec.n_train}+{n_test} exceeds corpus size {len(corpus)}"
        )
    train = corpus[: spec.n_train]
    evaluation = corpus[spec.n_train : spec.n_train + n_test]
    return Corpus(train), Corpus(evaluation)


def wrap_text(text: str, max_len: int = 400) -> list[str]:
    """Chunk one sequence to pieces of at most max_len symbols.

    The split lands after the last boundary symbol at or before the
    limit (the boundary stays with the leading chunk); with no boundary
    available the split is a hard cut. Concatenating the chunks always
    reproduces the input.
    """
    if max_len < 2:
        raise DataError("max_len must be >= 2")
    chunks = []
    rest = text
    while len(rest) > max_len:
        cut = max_len
        for i in range(max_len - 1, -1, -1):
            if not arabic.is_letter_symbol(rest[i]):
                cut = i + 1
                break
        chunks.append(rest[:cut])
        rest = rest[cut:]
    chunks.append(rest)
    return chunks


def wrap_sequences(corpus: Corpus, max_len: int = 400) -> Corpus:
    """Apply `wrap_text` across a corpus, numbering chunks via .part."""
    records = []
    for r in corpus:
        for part, chunk in enumerate(wrap_text(r.text, max_len)):
            records.append(Record(r.source, r.line, chunk, part))
    return Corpus(records)


def unwrap_chunks(chunks: list[str]) -> str:
    return "".join(chunks)


def _word_spans(text: str) -> list[tuple[int, int]]:
    spans = []
    start = None
    for i, ch in enumerate(text):
        if arabic.is_letter_symbol(ch):
            if start is None:
                start = i
        elif start is not None:
            spans.append((start, i))
            start = None
    if start is not None:
        spans.append((start, len(text)))
    return spans


def corpus_stats(corpus: Corpus, max_len: int = 400) -> dict:
    """Sequence/word/character counts plus the target-letter frequency
    breakdown (absolute vs all characters, relative within the target
    subset)."""
    seq_count = len(corpus)
    char_count = 0
    word_count = 0
    letter_count = 0
    within_limit = 0
    target_counts: Counter = Counter()
    for r in corpus:
        text = r.text
        char_count += len(text)
        if len(text) <= max_len:
            within_limit += 1
        spans = _word_spans(text)
        word_count += len(spans)
        letter_count += sum(b - a for a, b in spans)
        for ch in text:
            if ch in TARGET_SYMBOLS:
                target_counts[ch] += 1

    subtotal = sum(target_counts.values())
    targets = []
    for sym in sorted(TARGET_SYMBOLS, key=lambda s: (-target_counts[s], s)):
        count = target_counts[sym]
        targets.append(
            {
                "symbol": sym,
                "display": arabic.CODE_EXPANSIONS.get(sym, sym),
                "count": count,
                "frequency": count / char_count if char_count else 0.0,
                "relative_frequency": count / subtotal if subtotal else 0.0,
            }
        )
    return {
        "sequence_count": seq_count,
        "word_count": word_count,
        "character_count": char_count,
        "words_per_sequence": word_count / seq_count if seq_count else 0.0,
        "letters_per_word": letter_count / word_count if word_count else 0.0,
        "fraction_within_max_len": within_limit / seq_count if seq_count else 0.0,
        "max_len": max_len,
        "target_subtotal": subtotal,
        "targets": targets,
    }
