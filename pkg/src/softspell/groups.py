"""Confusion groups and the two ways of corrupting clean sequences.

Four groups of intermediate symbols are mutually confusable:

    hamza     ء آ أ ؤ إ ئ ا J    canonical ء   (ا only when not word-final)
    teh_end   ة T H              canonical ة
    waw_end   O A                canonical O
    alef_end  ا ى                canonical ى   (ا only when word-final)

Plain alef is the one positional member: word-final it is confusable
with alef maksura, anywhere else with the hamza family. The union of
the groups is the 14-symbol target set that evaluation metrics weight
over.

Two corruption regimes produce training inputs from clean targets:
`transform_input` collapses every group member to its canonical symbol
(the model learns to restore the correct form from context), while
`inject_errors` replaces group members with a random other member of
their group at rate p, logging every change so the evaluation can count
false positives per change.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import arabic
from .arabic import word_final_positions
from .errors import DataError
from .seeding import make_rng

HAMZA_GROUP = "hamza"
TEH_END_GROUP = "teh_end"
WAW_END_GROUP = "waw_end"
ALEF_END_GROUP = "alef_end"

GROUP_MEMBERS: dict[str, tuple[str, ...]] = {
    HAMZA_GROUP: (
        arabic.HAMZA,
        arabic.ALEF_MADDA,
        arabic.ALEF_HAMZA_ABOVE,
        arabic.WAW_HAMZA,
        arabic.ALEF_HAMZA_BELOW,
        arabic.YEH_HAMZA,
        arabic.ALEF,
        "J",
    ),
    TEH_END_GROUP: (arabic.TEH_MARBUTA, "T", "H"),
    WAW_END_GROUP: ("O", "A"),
    ALEF_END_GROUP: (arabic.ALEF, arabic.ALEF_MAKSURA),
}

GROUP_CANONICAL: dict[str, str] = {
    HAMZA_GROUP: arabic.HAMZA,
    TEH_END_GROUP: arabic.TEH_MARBUTA,
    WAW_END_GROUP: "O",
    ALEF_END_GROUP: arabic.ALEF_MAKSURA,
}

ALL_GROUPS = tuple(GROUP_MEMBERS)

# The 14 symbols evaluation metrics are weighted over (union of groups).
TARGET_SYMBOLS: frozenset[str] = frozenset(
    s for members in GROUP_MEMBERS.values() for s in members
)

_UNPOSITIONAL: dict[str, str] = {
    s: g
    for g, members in GROUP_MEMBERS.items()
    for s in members
    if s != arabic.ALEF
}


def resolve_group(symbol: str, is_word_final: bool) -> str | None:
    """Group id for a symbol at a position, or None if not confusable.

    Plain alef resolves by position; every other member belongs to its
    group regardless of position.
    """
    if symbol == arabic.ALEF:
        return ALEF_END_GROUP if is_word_final else HAMZA_GROUP
    return _UNPOSITIONAL.get(symbol)


@dataclass(frozen=True)
class InjectionConfig:
    """Error injection settings: rate p, PRNG seed, and enabled groups."""

    rate: float
    seed: int = 0
    enabled_groups: frozenset[str] = frozenset(ALL_GROUPS)

    def __post_init__(self):
        if not 0.0 <= self.rate <= 1.0:
            raise DataError(f"injection rate must be in [0, 1], got {self.rate}")
        unknown = set(self.enabled_groups) - set(ALL_GROUPS)
        if unknown:
            raise DataError(f"unknown group(s): {sorted(unknown)}")


@dataclass(frozen=True)
class Change:
    """One injected replacement."""

    seq_id: int | str
    position: int
    original: str
    injected: str


@dataclass
class CorruptionRecord:
    """Log of every injected change, with per-symbol change counts.

    `changes_by_original` is the denominator of the FP/Changes metric:
    how many times each symbol was altered in the input.
    """

    entries: list[Change] = field(default_factory=list)

    def extend(self, other: "CorruptionRecord") -> None:
        self.entries.extend(other.entries)

    @property
    def changes_by_original(self) -> Counter:
        return Counter(e.original for e in self.entries)

    def by_sequence(self) -> dict[int | str, list[Change]]:
        out: dict[int | str, list[Change]] = {}
        for e in self.entries:
            out.setdefault(e.seq_id, []).append(e)
        return out

    def __len__(self) -> int:
        return len(self.entries)

    def write_tsv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for e in self.entries:
                fh.write(f"{e.seq_id}\t{e.position}\t{e.original}\t{e.injected}\n")

    @classmethod
    def read_tsv(cls, path) -> "CorruptionRecord":
        rec = cls()
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh):
                line = line.rstrip("\n")
                if not line:
                    continue
                parts = line.split("\t")
                if len(parts) != 4:
                    raise DataError(
                        f"{path}: line {line_no + 1}: expected 4 tab-separated fields"
                    )
                sid, pos, orig, injected = parts
                rec.entries.append(Change(int(sid), int(pos), orig, injected))
        return rec


def transform_input(seq: str) -> str:
    """Collapse every group member to its canonical symbol.

    Length-preserving and idempotent; symbols with no group pass through.
    """
    finals = word_final_positions(seq)
    out = []
    for i, ch in enumerate(seq):
        group = resolve_group(ch, i in finals)
        out.append(GROUP_CANONICAL[group] if group else ch)
    return "".join(out)


def eligible_count(seq: str, enabled_groups: Iterable[str] = ALL_GROUPS) -> int:
    """Number of symbols that could be corrupted under the given groups."""
    enabled = set(enabled_groups)
    finals = word_final_positions(seq)
    return sum(
        1
        for i, ch in enumerate(seq)
        if resolve_group(ch, i in finals) in enabled
    )


def inject_errors(
    seq: str, cfg: InjectionConfig, seq_id: int | str = 0
) -> tuple[str, CorruptionRecord]:
    """Corrupt one sequence by intra-group substitution at rate p.

    Each eligible symbol is independently hit with probability p; a hit
    is replaced by a uniformly random *other* member of its group, so
    every logged change is a real change. Draw order is fixed (one
    uniform per eligible position, plus one choice per hit, left to
    right) which makes the output a pure function of (seq, cfg, seq_id).
    """
    rng = make_rng(cfg.seed, seq_id)
    finals = word_final_positions(seq)
    out = list(seq)
    record = CorruptionRecord()
    for i, ch in enumerate(seq):
        group = resolve_group(ch, i in finals)
        if group is None or group not in cfg.enabled_groups:
            continue
        if rng.random() >= cfg.rate:
            continue
        others = [m for m in GROUP_MEMBERS[group] if m != ch]
        injected = others[rng.integers(len(others))]
        out[i] = injected
        record.entries.append(Change(seq_id, i, ch, injected))
    return "".join(out), record


def inject_corpus(
    seqs: Sequence[str], cfg: InjectionConfig
) -> tuple[list[str], CorruptionRecord]:
    """Corrupt a list of sequences; seq ids are corpus order indices.

    Each sequence derives its own sub-seed from (cfg.seed, index), so
    corrupting sequences in parallel or serially gives identical output.
    """
    out: list[str] = []
    record = CorruptionRecord()
    for idx, seq in enumerate(seqs):
        corrupted, rec = inject_errors(seq, cfg, seq_id=idx)
        out.append(corrupted)
        record.extend(rec)
    return out, record


def apply_record(seqs: Sequence[str], record: CorruptionRecord) -> list[str]:
    """Replay a change log onto clean sequences, reproducing the corrupted
    corpus exactly. Sequence ids must be corpus order indices."""
    out = [list(s) for s in seqs]
    for e in record.entries:
        idx = int(e.seq_id)
        if not 0 <= idx < len(out) or e.position >= len(out[idx]):
            raise DataError(f"change log entry {e} does not fit the corpus")
        if out[idx][e.position] != e.original:
            raise DataError(
                f"change log mismatch at sequence {idx} position {e.position}: "
                f"expected {e.original!r}, found {out[idx][e.position]!r}"
            )
        out[idx][e.position] = e.injected
    return ["".join(s) for s in out]
