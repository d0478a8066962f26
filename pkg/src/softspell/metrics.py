"""Confusion-matrix accumulation and every reported evaluation measure.

The matrix counts (actual, predicted) symbol pairs over unmasked
positions; rows are actual symbols, columns predictions. All derived
measures reduce over it:

    per-symbol TP = M[c][c], FN = row - TP, FP = column - TP,
    TN = total - TP - FN - FP

Corpus accuracy is trace/total (the multiclass collapse of the
per-symbol binary accuracy (TP+TN)/(TP+TN+FP+FN), which is also
reported per symbol). Precision, recall and F1 are reported per symbol
and as support-weighted averages over the 14 confusable target symbols.

FP/Changes divides a symbol's false positives by how often that symbol
was changed in the corrupted input, measuring sensitivity per injected
error. CER is the fraction of letter positions transcribed wrongly
(boundary symbols excluded; a flag includes them, in which case
CER == 1 - accuracy); WER is the fraction of words containing at least
one wrong position, word spans taken from the target sequence. The
one-to-one transcoder guarantees equal lengths, so no alignment is
needed anywhere.
"""

from __future__ import annotations

import csv
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .arabic import is_letter_symbol
from .errors import EmptyCorpusError, LengthMismatchError
from .groups import TARGET_SYMBOLS, CorruptionRecord


class ConfusionMatrix:
    """Integer count matrix over the intermediate symbol alphabet;
    mergeable, so shards can be accumulated in parallel and summed."""

    def __init__(self):
        self._counts: dict[str, Counter] = defaultdict(Counter)

    def accumulate(
        self,
        predicted: str,
        target: str,
        mask: Sequence[bool] | None = None,
    ) -> "ConfusionMatrix":
        if len(predicted) != len(target):
            raise LengthMismatchError(
                f"predicted length {len(predicted)} != target length {len(target)}"
            )
        for i, (t, p) in enumerate(zip(target, predicted)):
            if mask is not None and not mask[i]:
                continue
            self._counts[t][p] += 1
        return self

    def add(self, actual: str, predicted: str, count: int = 1) -> None:
        self._counts[actual][predicted] += count

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        out = ConfusionMatrix()
        for m in (self, other):
            for t, row in m._counts.items():
                out._counts[t].update(row)
        return out

    def count(self, actual: str, predicted: str) -> int:
        return self._counts.get(actual, Counter())[predicted]

    @property
    def total(self) -> int:
        return sum(sum(row.values()) for row in self._counts.values())

    @property
    def trace(self) -> int:
        return sum(row[t] for t, row in self._counts.items())

    def row_sum(self, symbol: str) -> int:
        return sum(self._counts.get(symbol, Counter()).values())

    def col_sum(self, symbol: str) -> int:
        return sum(row[symbol] for row in self._counts.values())

    def symbols(self) -> list[str]:
        seen = set(self._counts)
        for row in self._counts.values():
            seen.update(row)
        return sorted(seen)

    def to_csv(self, path) -> None:
        syms = self.symbols()
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["actual\\predicted", *syms])
            for t in syms:
                writer.writerow([t, *(self.count(t, p) for p in syms)])

    @classmethod
    def from_dense(
        cls, symbols: Sequence[str], rows: Sequence[Sequence[int]]
    ) -> "ConfusionMatrix":
        m = cls()
        for t, row in zip(symbols, rows):
            for p, n in zip(symbols, row):
                if n:
                    m.add(t, p, n)
        return m


def accuracy(matrix: ConfusionMatrix) -> float:
    """trace/total over whatever alphabet the matrix holds."""
    total = matrix.total
    if total == 0:
        raise EmptyCorpusError("empty confusion matrix")
    return matrix.trace / total


@dataclass(frozen=True)
class PrfResult:
    precision: float
    recall: float
    f1: float
    support: int
    zero_division: bool = False  # a denominator was 0 and reported as 0


def per_letter_prf(matrix: ConfusionMatrix, symbol: str) -> PrfResult:
    tp = matrix.count(symbol, symbol)
    support = matrix.row_sum(symbol)
    fn = support - tp
    fp = matrix.col_sum(symbol) - tp
    zero = False
    if tp + fp == 0:
        precision, zero = 0.0, True
    else:
        precision = tp / (tp + fp)
    if tp + fn == 0:
        recall, zero = 0.0, True
    else:
        recall = tp / (tp + fn)
    f1 = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
    return PrfResult(precision, recall, f1, support, zero)


def binary_accuracy(matrix: ConfusionMatrix, symbol: str) -> float:
    """Per-symbol (TP+TN)/(TP+TN+FP+FN)."""
    total = matrix.total
    if total == 0:
        raise EmptyCorpusError("empty confusion matrix")
    tp = matrix.count(symbol, symbol)
    fn = matrix.row_sum(symbol) - tp
    fp = matrix.col_sum(symbol) - tp
    tn = total - tp - fn - fp
    return (tp + tn) / total


def weighted_summary(
    matrix: ConfusionMatrix, symbols: Iterable[str] = TARGET_SYMBOLS
) -> PrfResult:
    """Support-weighted mean P/R/F1 over the target symbols."""
    rows = [(s, per_letter_prf(matrix, s)) for s in sorted(symbols)]
    weight = sum(r.support for _, r in rows)
    if weight == 0:
        return PrfResult(0.0, 0.0, 0.0, 0, True)
    p = sum(r.precision * r.support for _, r in rows) / weight
    rc = sum(r.recall * r.support for _, r in rows) / weight
    f1 = sum(r.f1 * r.support for _, r in rows) / weight
    return PrfResult(p, rc, f1, weight, any(r.zero_division for _, r in rows))


def fp_over_changes(
    matrix: ConfusionMatrix, record: CorruptionRecord
) -> tuple[dict[str, float], float | None]:
    """Per-letter FP(c)/changes(c) plus the changes-weighted average.

    Letters never changed in the input are excluded; with no changes at
    all (rate 0) the report is empty and the average None.
    """
    changes = record.changes_by_original
    per_letter: dict[str, float] = {}
    for sym, n_changed in sorted(changes.items()):
        if n_changed == 0:
            continue
        fp = matrix.col_sum(sym) - matrix.count(sym, sym)
        per_letter[sym] = fp / n_changed
    total_changes = sum(changes.values())
    if not per_letter:
        return {}, None
    weighted = (
        sum(ratio * changes[sym] for sym, ratio in per_letter.items()) / total_changes
    )
    return per_letter, weighted


@dataclass(frozen=True)
class ErrorRates:
    cer: float
    wer: float
    letter_positions: int
    words: int
    letter_errors: int
    word_errors: int


def cer_wer(
    predicted: Sequence[str],
    targets: Sequence[str],
    letters_only: bool = True,
) -> ErrorRates:
    """Positional character and word error rates over paired sequences.

    With letters_only (the default) boundary positions are excluded
    from CER; a mispredicted boundary still counts against the word to
    its left (or the following word at a sequence head). Word spans
    come from the target sequence.
    """
    letter_positions = 0
    letter_errors = 0
    words = 0
    word_errors = 0
    for pred, tgt in zip(predicted, targets):
        if len(pred) != len(tgt):
            raise LengthMismatchError(
                f"predicted length {len(pred)} != target length {len(tgt)}"
            )
        spans: list[tuple[int, int]] = []
        start = None
        for i, ch in enumerate(tgt):
            if is_letter_symbol(ch):
                if start is None:
                    start = i
            elif start is not None:
                spans.append((start, i))
                start = None
        if start is not None:
            spans.append((start, len(tgt)))
        words += len(spans)

        wrong_words = set()
        for i, (p, t) in enumerate(zip(pred, tgt)):
            is_letter = is_letter_symbol(tgt[i])
            if is_letter or not letters_only:
                letter_positions += 1
            if p == t:
                continue
            if is_letter or not letters_only:
                letter_errors += 1
            # attribute the error to a word for WER
            owner = None
            for wi, (a, b) in enumerate(spans):
                if a <= i < b:
                    owner = wi
                    break
                if i < a:
                    # boundary error: word on the left, else the next one
                    owner = wi - 1 if wi > 0 else wi
                    break
            if owner is None and spans:
                owner = len(spans) - 1
            if owner is not None:
                wrong_words.add(owner)
        word_errors += len(wrong_words)

    cer = letter_errors / letter_positions if letter_positions else 0.0
    wer = word_errors / words if words else 0.0
    return ErrorRates(cer, wer, letter_positions, words, letter_errors, word_errors)


def correction_rate(
    predicted: Sequence[str],
    targets: Sequence[str],
    record: CorruptionRecord,
) -> float:
    """Fraction of injected positions whose prediction matches the
    target; sequence ids in the record are corpus order indices."""
    if not record.entries:
        return 0.0
    fixed = 0
    for e in record.entries:
        idx = int(e.seq_id)
        if idx >= len(predicted) or e.position >= len(predicted[idx]):
            raise LengthMismatchError(f"change log entry {e} outside the corpus")
        if predicted[idx][e.position] == targets[idx][e.position]:
            fixed += 1
    return fixed / len(record.entries)


@dataclass
class MetricsReport:
    """Everything the evaluation emits, JSON-shaped."""

    accuracy: float
    weighted: PrfResult
    per_letter: dict[str, dict]
    rates: ErrorRates
    all_chars_cer: float
    correction_rate: float | None = None
    fp_over_changes_weighted: float | None = None
    fp_over_changes: dict[str, float] = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "weighted_precision": self.weighted.precision,
            "weighted_recall": self.weighted.recall,
            "weighted_f1": self.weighted.f1,
            "target_support": self.weighted.support,
            "cer": self.rates.cer,
            "wer": self.rates.wer,
            "all_chars_cer": self.all_chars_cer,
            "letter_positions": self.rates.letter_positions,
            "words": self.rates.words,
            "correction_rate": self.correction_rate,
            "fp_over_changes_weighted": self.fp_over_changes_weighted,
            "fp_over_changes": self.fp_over_changes,
            "per_letter": self.per_letter,
            "config": self.config,
        }

    def to_table(self) -> str:
        lines = [
            f"accuracy            {self.accuracy:.6f}",
            f"weighted precision  {self.weighted.precision:.6f}",
            f"weighted recall     {self.weighted.recall:.6f}",
            f"weighted F1         {self.weighted.f1:.6f}",
            f"CER                 {self.rates.cer:.6f}",
            f"WER                 {self.rates.wer:.6f}",
        ]
        if self.correction_rate is not None:
            lines.append(f"correction rate     {self.correction_rate:.6f}")
        if self.fp_over_changes_weighted is not None:
            lines.append(f"FP/Changes          {self.fp_over_changes_weighted:.6f}")
        lines.append("")
        lines.append(
            f"{'symbol':8s} {'support':>8s} {'prec':>9s} {'recall':>9s}"
            f" {'F1':>9s} {'binacc':>9s}"
        )
        for sym, row in self.per_letter.items():
            lines.append(
                f"{row['display']:8s} {row['support']:8d} {row['precision']:9.5f}"
                f" {row['recall']:9.5f} {row['f1']:9.5f} {row['binary_accuracy']:9.5f}"
            )
        return "\n".join(lines)


def build_report(
    matrix: ConfusionMatrix,
    predicted: Sequence[str],
    targets: Sequence[str],
    record: CorruptionRecord | None = None,
    config: Mapping | None = None,
) -> MetricsReport:
    from .arabic import CODE_EXPANSIONS

    per_letter = {}
    for sym in sorted(TARGET_SYMBOLS, key=lambda s: -matrix.row_sum(s)):
        r = per_letter_prf(matrix, sym)
        per_letter[sym] = {
            "display": CODE_EXPANSIONS.get(sym, sym),
            "support": r.support,
            "precision": r.precision,
            "recall": r.recall,
            "f1": r.f1,
            "binary_accuracy": binary_accuracy(matrix, sym) if matrix.total else 0.0,
            "zero_division": r.zero_division,
        }
    rates = cer_wer(predicted, targets)
    all_chars = cer_wer(predicted, targets, letters_only=False)
    report = MetricsReport(
        accuracy=accuracy(matrix),
        weighted=weighted_summary(matrix),
        per_letter=per_letter,
        rates=rates,
        all_chars_cer=all_chars.cer,
        config=dict(config or {}),
    )
    if record is not None:
        report.correction_rate = correction_rate(predicted, targets, record)
        per, weighted = fp_over_changes(matrix, record)
        report.fp_over_changes = per
        report.fp_over_changes_weighted = weighted
    return report
