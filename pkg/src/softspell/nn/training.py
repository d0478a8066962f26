"""Training loop: both corruption regimes, early stopping, prediction.

Targets are clean intermediate sequences; inputs are derived from them
by the chosen approach. Transformed input is a fixed deterministic
collapse, so it is built once. Stochastic injection redraws the
corruption each epoch by default (per-epoch derived seeds keep the run
reproducible); validation inputs are corrupted once with their own
fixed seed so the early-stopping signal is comparable across epochs.

Early stopping watches validation loss with the configured patience and
restores the best epoch's weights before returning.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..batching import batches, encode_batch
from ..corpus import wrap_text
from ..errors import DivergenceError, EmptyCorpusError
from ..groups import ALL_GROUPS, InjectionConfig, inject_corpus, transform_input
from ..seeding import derive_seed, make_rng
from ..vocab import NUM_RESERVED, Vocabulary
from .losses import masked_xent_from_logits
from .model import BiLstmTranscriber, ModelSpec
from .rmsprop import RmsProp


@dataclass(frozen=True)
class TransformedInput:
    name: str = "transformed"


@dataclass(frozen=True)
class StochasticInjection:
    rate: float
    resample_each_epoch: bool = True
    enabled_groups: tuple[str, ...] = ALL_GROUPS
    name: str = "inject"


@dataclass
class TrainConfig:
    batch_size: int = 64
    max_len: int = 400
    max_epochs: int = 50
    patience: int = 5
    seed: int = 0
    lr: float = 1e-3
    rho: float = 0.9
    epsilon: float = 1e-7
    precision: str = "float64"

    def __post_init__(self):
        if self.patience >= self.max_epochs:
            raise ValueError("patience must be smaller than max_epochs")

    @property
    def dtype(self):
        return np.float32 if self.precision == "float32" else np.float64


class EarlyStopping:
    """Stop after `patience` consecutive epochs without a new best
    validation loss; remembers which epoch was best."""

    def __init__(self, patience: int):
        self.patience = patience
        self.best_loss = np.inf
        self.best_epoch = -1
        self.stall = 0

    def update(self, epoch: int, val_loss: float) -> bool:
        """Record one epoch; returns True when training should stop."""
        if val_loss < self.best_loss:
            self.best_loss = val_loss
            self.best_epoch = epoch
            self.stall = 0
            return False
        self.stall += 1
        return self.stall >= self.patience


def _derive_inputs(targets: list[str], approach, seed: int) -> list[str]:
    if isinstance(approach, TransformedInput):
        return [transform_input(t) for t in targets]
    cfg = InjectionConfig(
        rate=approach.rate,
        seed=seed,
        enabled_groups=frozenset(approach.enabled_groups),
    )
    corrupted, _ = inject_corpus(targets, cfg)
    return corrupted


def _evaluate(model, pairs, cfg) -> tuple[float, float]:
    """(loss, accuracy) over unmasked steps, dropout off."""
    total_loss = 0.0
    correct = 0
    count = 0
    for batch in batches(pairs, model.vocab, cfg.batch_size, cfg.max_len, dtype=cfg.dtype):
        logits, _ = model.forward(batch.x, batch.mask)
        loss, _ = masked_xent_from_logits(logits, batch.y, batch.mask)
        n = int(batch.mask.sum())
        total_loss += loss * n
        count += n
        pred = logits.argmax(axis=2)
        correct += int(((pred == batch.y) & batch.mask).sum())
    if count == 0:
        return 0.0, 0.0
    return total_loss / count, correct / count


def train(
    spec: ModelSpec,
    train_targets: Sequence[str],
    valid_targets: Sequence[str],
    approach,
    cfg: TrainConfig,
    vocab: Vocabulary | None = None,
) -> tuple[BiLstmTranscriber, list[dict]]:
    """Train a transcriber; returns (model with best weights, history).

    Sequences longer than cfg.max_len are wrapped before batching.
    Raises EmptyCorpusError for empty inputs and DivergenceError when
    the loss goes non-finite.
    """
    train_targets = [c for t in train_targets for c in wrap_text(t, cfg.max_len)]
    valid_targets = [c for t in valid_targets for c in wrap_text(t, cfg.max_len)]
    if not train_targets or not valid_targets:
        raise EmptyCorpusError("training and validation corpora must be non-empty")

    if vocab is None:
        vocab = Vocabulary.from_sequences(train_targets)
    if spec.vocab_size != len(vocab):
        spec = ModelSpec(**{**spec.to_dict(), "vocab_size": len(vocab)})

    model = BiLstmTranscriber.initialize(
        spec, vocab, seed=cfg.seed, dtype=cfg.dtype
    )
    optimizer = RmsProp(cfg.lr, cfg.rho, cfg.epsilon)
    dropout_rng = make_rng("dropout", cfg.seed)
    use_dropout = spec.dropout > 0 or spec.recurrent_dropout > 0

    valid_inputs = _derive_inputs(
        valid_targets, approach, derive_seed(cfg.seed, "valid")
    )
    valid_pairs = list(zip(valid_inputs, valid_targets))

    fixed_train_inputs = None
    if isinstance(approach, TransformedInput) or not approach.resample_each_epoch:
        fixed_train_inputs = _derive_inputs(
            train_targets, approach, derive_seed(cfg.seed, "train", 0)
        )

    history: list[dict] = []
    stopper = EarlyStopping(cfg.patience)
    best_params = model.copy_params()

    for epoch in range(cfg.max_epochs):
        t0 = time.monotonic()
        inputs = fixed_train_inputs
        if inputs is None:
            inputs = _derive_inputs(
                train_targets, approach, derive_seed(cfg.seed, "train", epoch)
            )
        pairs = list(zip(inputs, train_targets))
        epoch_loss = 0.0
        epoch_correct = 0
        epoch_count = 0
        for batch in batches(
            pairs,
            vocab,
            cfg.batch_size,
            cfg.max_len,
            shuffle_seed=derive_seed(cfg.seed, "shuffle", epoch),
            dtype=cfg.dtype,
        ):
            masks = (
                model.sample_dropout_masks(batch.size, dropout_rng)
                if use_dropout
                else None
            )
            logits, cache = model.forward(batch.x, batch.mask, masks, want_cache=True)
            loss, dlogits = masked_xent_from_logits(logits, batch.y, batch.mask)
            if not np.isfinite(loss):
                raise DivergenceError(f"non-finite training loss at epoch {epoch}")
            grads = model.backward(cache, dlogits)
            optimizer.step(model, grads)
            n = int(batch.mask.sum())
            epoch_loss += loss * n
            epoch_count += n
            epoch_correct += int(((logits.argmax(axis=2) == batch.y) & batch.mask).sum())

        val_loss, val_acc = _evaluate(model, valid_pairs, cfg)
        record = {
            "epoch": epoch,
            "train_loss": epoch_loss / max(epoch_count, 1),
            "train_accuracy": epoch_correct / max(epoch_count, 1),
            "valid_loss": val_loss,
            "valid_accuracy": val_acc,
            "seconds": time.monotonic() - t0,
        }
        history.append(record)

        improved = stopper.best_loss > val_loss
        stop = stopper.update(epoch, val_loss)
        if improved:
            best_params = model.copy_params()
        if stop:
            break

    model.load_params(best_params)
    model.provenance.update(
        {
            "approach": approach.name,
            "rate": getattr(approach, "rate", None),
            "seed": cfg.seed,
            "epochs_trained": len(history),
            "best_epoch": stopper.best_epoch,
            "best_valid_loss": stopper.best_loss
            if np.isfinite(stopper.best_loss)
            else None,
        }
    )
    return model, history


def predict(
    model: BiLstmTranscriber,
    seq: str,
    max_len: int = 400,
    copy_unknown: bool = True,
) -> str:
    """Transcribe one intermediate sequence; output length == input
    length.

    Long inputs are wrapped into chunks and the predictions re-joined.
    The argmax runs over real symbol indices only (ties break to the
    lowest index), so the output is always decodable. Positions whose
    input symbol is unknown to the vocabulary copy the input through
    when copy_unknown is set: the model cannot meaningfully correct a
    symbol it never saw.
    """
    if not seq:
        return ""
    chunks = wrap_text(seq, max_len)
    out: list[str] = []
    batch = encode_batch([(c, c) for c in chunks], model.vocab)
    probs = model.predict_probs(batch.x, batch.mask)
    picked = NUM_RESERVED + probs[:, :, NUM_RESERVED:].argmax(axis=2)
    for row, chunk in enumerate(chunks):
        for pos, ch in enumerate(chunk):
            if copy_unknown and ch not in model.vocab:
                out.append(ch)
            else:
                out.append(model.vocab.decode(int(picked[row, pos])))
    return "".join(out)


def predict_corpus(
    model: BiLstmTranscriber, seqs: Sequence[str], max_len: int = 400
) -> list[str]:
    return [predict(model, s, max_len) for s in seqs]
