"""One-hot tensorization and deterministic batching.

Batches are dense (B, T, C) one-hot inputs with integer targets and a
boolean mask; padded timesteps carry an all-zero input row, target 0 and
mask False, so they contribute nothing to the loss or gradients.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import LengthMismatchError
from .seeding import make_rng
from .vocab import PAD_INDEX, Vocabulary


@dataclass
class Batch:
    x: np.ndarray  # (B, T, C) one-hot, float
    y: np.ndarray  # (B, T) int target indices, PAD at masked steps
    mask: np.ndarray  # (B, T) bool, True at real steps

    @property
    def size(self) -> int:
        return self.x.shape[0]

    @property
    def steps(self) -> int:
        return self.x.shape[1]


def encode_batch(
    pairs: Sequence[tuple[str, str]],
    vocab: Vocabulary,
    max_len: int | None = None,
    dtype=np.float64,
) -> Batch:
    """One-hot a list of (input, target) sequence pairs.

    Pads to the longest pair in the batch unless max_len forces a fixed
    width. Raises LengthMismatchError when a pair violates the
    one-to-one contract.
    """
    for i, (src, tgt) in enumerate(pairs):
        if len(src) != len(tgt):
            raise LengthMismatchError(
                f"pair {i}: input length {len(src)} != target length {len(tgt)}"
            )
    batch_size = len(pairs)
    width = max((len(src) for src, _ in pairs), default=0)
    if max_len is not None:
        width = max_len
    n_classes = len(vocab)
    x = np.zeros((batch_size, width, n_classes), dtype=dtype)
    y = np.full((batch_size, width), PAD_INDEX, dtype=np.int32)
    mask = np.zeros((batch_size, width), dtype=bool)
    for b, (src, tgt) in enumerate(pairs):
        idx = vocab.encode_seq(src)
        x[b, np.arange(len(idx)), idx] = 1.0
        y[b, : len(tgt)] = vocab.encode_seq(tgt)
        mask[b, : len(src)] = True
    return Batch(x, y, mask)


def batches(
    pairs: Sequence[tuple[str, str]],
    vocab: Vocabulary,
    batch_size: int = 64,
    max_len: int = 400,
    shuffle_seed: int | None = None,
    fixed_length: bool = False,
    dtype=np.float64,
) -> Iterator[Batch]:
    """Yield batches over the pairs, the last one possibly partial.

    Sequences must already be wrapped to max_len. A shuffle seed
    permutes the pairs deterministically (same seed, same stream);
    None keeps corpus order. fixed_length pads every batch to max_len
    instead of the batch's longest sequence.
    """
    order = np.arange(len(pairs))
    if shuffle_seed is not None:
        order = make_rng("shuffle", shuffle_seed).permutation(len(pairs))
    for start in range(0, len(pairs), batch_size):
        chunk = [pairs[i] for i in order[start : start + batch_size]]
        yield encode_batch(
            chunk, vocab, max_len=max_len if fixed_length else None, dtype=dtype
        )
