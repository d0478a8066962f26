"""Symbol vocabulary with reserved padding and unknown indices.

Index 0 is padding (the all-zero one-hot row of masked timesteps) and
index 1 is the unknown symbol; real symbols start at 2, ordered by
descending corpus frequency with code-point ties broken ascending, so
two corpora with the same symbol multiset build identical vocabularies.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable

from .errors import DataError, EmptyCorpusError, VocabularyError

PAD_INDEX = 0
UNK_INDEX = 1
NUM_RESERVED = 2


class Vocabulary:
    def __init__(self, symbols: Iterable[str]):
        self._symbols = list(symbols)
        self._index = {}
        for i, sym in enumerate(self._symbols):
            if len(sym) != 1:
                raise DataError(f"vocabulary symbols are single code points, got {sym!r}")
            if sym in self._index:
                raise DataError(f"duplicate vocabulary symbol {sym!r}")
            self._index[sym] = i + NUM_RESERVED

    @classmethod
    def from_sequences(cls, sequences: Iterable[str]) -> "Vocabulary":
        counts: Counter = Counter()
        for seq in sequences:
            counts.update(seq)
        if not counts:
            raise EmptyCorpusError("cannot build a vocabulary from an empty corpus")
        ordered = sorted(counts, key=lambda s: (-counts[s], s))
        return cls(ordered)

    def __len__(self) -> int:
        """Total class count C, reserved indices included."""
        return len(self._symbols) + NUM_RESERVED

    @property
    def size(self) -> int:
        return len(self)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index

    def encode(self, symbol: str) -> int:
        return self._index.get(symbol, UNK_INDEX)

    def encode_seq(self, seq: str) -> list[int]:
        return [self._index.get(ch, UNK_INDEX) for ch in seq]

    def decode(self, index: int) -> str:
        if index < NUM_RESERVED or index >= len(self):
            raise VocabularyError(f"index {index} has no symbol")
        return self._symbols[index - NUM_RESERVED]

    def symbols(self) -> list[str]:
        """Real symbols in index order (index 2 first)."""
        return list(self._symbols)

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self._symbols == other._symbols

    def save(self, path) -> None:
        """One `index<TAB>U+XXXX` line per real symbol."""
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for i, sym in enumerate(self._symbols):
                fh.write(f"{i + NUM_RESERVED}\tU+{ord(sym):04X}\n")

    @classmethod
    def load(cls, path) -> "Vocabulary":
        symbols = []
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    idx_s, code = line.split("\t")
                    idx = int(idx_s)
                    if not code.startswith("U+"):
                        raise ValueError(code)
                    sym = chr(int(code[2:], 16))
                except ValueError as exc:
                    raise DataError(f"{path}: line {line_no}: bad vocabulary entry") from exc
                if idx != len(symbols) + NUM_RESERVED:
                    raise DataError(
                        f"{path}: line {line_no}: expected index "
                        f"{len(symbols) + NUM_RESERVED}, got {idx}"
                    )
                symbols.append(sym)
        return cls(symbols)
