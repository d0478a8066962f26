"""Stacked bidirectional LSTM transcriber with a per-step softmax head.

Every layer runs one LSTM over the sequence left to right and an
independent one right to left, concatenating their per-step outputs, so
layer l > 1 consumes 2H-wide features. The final features feed a dense
layer applied identically at every timestep. The backward direction is
run by reversing the time axis (mask included): state passthrough at
masked steps then makes the reversed head padding a no-op, which is
exactly "skip the padded tail".
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ShapeMismatchError
from ..seeding import make_rng
from ..vocab import Vocabulary
from .losses import masked_xent_from_logits, softmax
from .lstm import LstmParams, init_lstm_params, lstm_backward, lstm_forward


@dataclass
class ModelSpec:
    vocab_size: int
    layers: int = 2
    hidden: int = 256
    dropout: float = 0.1
    recurrent_dropout: float = 0.3
    peepholes: bool = True

    def __post_init__(self):
        if self.layers < 1:
            raise ValueError("need at least one bidirectional layer")
        if not (0 <= self.dropout < 1 and 0 <= self.recurrent_dropout < 1):
            raise ValueError("dropout rates must be in [0, 1)")

    def to_dict(self) -> dict:
        return {
            "vocab_size": self.vocab_size,
            "layers": self.layers,
            "hidden": self.hidden,
            "dropout": self.dropout,
            "recurrent_dropout": self.recurrent_dropout,
            "peepholes": self.peepholes,
        }


@dataclass
class DenseParams:
    W: np.ndarray  # (C_out, 2H)
    b: np.ndarray  # (C_out,)

    def named_arrays(self):
        return [("W", self.W), ("b", self.b)]


@dataclass
class BiLayer:
    fwd: LstmParams
    bwd: LstmParams


class BiLstmTranscriber:
    """The trainable model: weights, vocabulary and provenance."""

    def __init__(
        self,
        spec: ModelSpec,
        vocab: Vocabulary,
        layers: list[BiLayer],
        dense: DenseParams,
        provenance: dict | None = None,
    ):
        if len(vocab) != spec.vocab_size:
            raise ShapeMismatchError(
                f"vocabulary size {len(vocab)} != spec.vocab_size {spec.vocab_size}"
            )
        self.spec = spec
        self.vocab = vocab
        self.layers = layers
        self.dense = dense
        self.provenance = provenance or {}

    @classmethod
    def initialize(
        cls,
        spec: ModelSpec,
        vocab: Vocabulary,
        seed: int = 0,
        dtype=np.float64,
    ) -> "BiLstmTranscriber":
        rng = make_rng("init", seed)
        layers = []
        n_in = spec.vocab_size
        for _ in range(spec.layers):
            fwd = init_lstm_params(n_in, spec.hidden, spec.peepholes, rng, dtype)
            bwd = init_lstm_params(n_in, spec.hidden, spec.peepholes, rng, dtype)
            layers.append(BiLayer(fwd, bwd))
            n_in = 2 * spec.hidden
        limit = np.sqrt(6.0 / (n_in + spec.vocab_size))
        dense = DenseParams(
            rng.uniform(-limit, limit, size=(spec.vocab_size, n_in)).astype(dtype),
            np.zeros(spec.vocab_size, dtype=dtype),
        )
        return cls(spec, vocab, layers, dense, {"init_seed": seed})

    # -- parameter plumbing ------------------------------------------------

    def param_items(self) -> list[tuple[str, np.ndarray]]:
        """All weight tensors in a fixed, documented order. This order
        is the serialization order and the optimizer's iteration order."""
        items = []
        for li, layer in enumerate(self.layers):
            for direction, p in (("fwd", layer.fwd), ("bwd", layer.bwd)):
                for name, arr in p.named_arrays():
                    items.append((f"layer{li}.{direction}.{name}", arr))
        for name, arr in self.dense.named_arrays():
            items.append((f"dense.{name}", arr))
        return items

    def params(self) -> dict[str, np.ndarray]:
        return dict(self.param_items())

    def set_param(self, name: str, value: np.ndarray) -> None:
        head, _, leaf = name.rpartition(".")
        if head == "dense":
            target = self.dense
        else:
            li, direction = head.split(".")
            layer = self.layers[int(li.removeprefix("layer"))]
            target = getattr(layer, direction)
        current = getattr(target, leaf)
        if current.shape != value.shape:
            raise ShapeMismatchError(f"{name}: {value.shape} != {current.shape}")
        setattr(target, leaf, value)

    def copy_params(self) -> dict[str, np.ndarray]:
        return {name: arr.copy() for name, arr in self.param_items()}

    def load_params(self, snapshot: dict[str, np.ndarray]) -> None:
        for name, arr in snapshot.items():
            self.set_param(name, arr.copy())

    # -- forward / backward ------------------------------------------------

    def sample_dropout_masks(self, batch_size: int, rng: np.random.Generator):
        """One mask per sequence per layer per direction, inverted
        scaling. Rates of zero mean no mask at all, so a model trained
        with rates 0 is bit-identical to one trained with dropout
        disabled."""
        spec = self.spec
        masks = []
        n_in = spec.vocab_size
        for layer in self.layers:
            per_dir = []
            for _ in ("fwd", "bwd"):
                dx = _inverted_mask(rng, (batch_size, n_in), spec.dropout)
                dh = _inverted_mask(
                    rng, (batch_size, spec.hidden), spec.recurrent_dropout
                )
                per_dir.append((dx, dh))
            masks.append(per_dir)
            n_in = 2 * spec.hidden
        return masks

    def forward(
        self,
        x: np.ndarray,  # (B, T, C) one-hot
        mask: np.ndarray,  # (B, T) bool
        dropout_masks=None,
        want_cache: bool = False,
    ):
        """Run the network; returns (logits (B, T, C), cache or None)."""
        if x.ndim != 3 or x.shape[2] != self.spec.vocab_size:
            raise ShapeMismatchError(f"expected (B, T, {self.spec.vocab_size}) input")
        if mask.shape != x.shape[:2]:
            raise ShapeMismatchError("mask shape does not match input")
        seq = np.ascontiguousarray(x.transpose(1, 0, 2))  # time-major
        m = mask.T
        m_rev = m[::-1]
        caches = []
        for li, layer in enumerate(self.layers):
            dm = dropout_masks[li] if dropout_masks is not None else [(None, None)] * 2
            h_f, cache_f = lstm_forward(layer.fwd, seq, m, dm[0][0], dm[0][1])
            h_b_rev, cache_b = lstm_forward(
                layer.bwd, seq[::-1], m_rev, dm[1][0], dm[1][1]
            )
            seq = np.concatenate([h_f, h_b_rev[::-1]], axis=2)
            caches.append((cache_f, cache_b))
        T, B, F = seq.shape
        logits = (seq.reshape(T * B, F) @ self.dense.W.T + self.dense.b).reshape(
            T, B, -1
        )
        logits = logits.transpose(1, 0, 2)
        cache = None
        if want_cache:
            cache = {"layer_caches": caches, "features": seq, "mask_tm": m}
        return logits, cache

    def backward(
        self, cache: dict, dlogits: np.ndarray
    ) -> dict[str, np.ndarray]:
        """Gradients for every parameter given d(loss)/d(logits)."""
        features = cache["features"]  # (T, B, 2H)
        T, B, F = features.shape
        dl = np.ascontiguousarray(dlogits.transpose(1, 0, 2)).reshape(T * B, -1)
        dW_dense = dl.T @ features.reshape(T * B, F)
        db_dense = dl.sum(axis=0)
        dseq = (dl @ self.dense.W).reshape(T, B, F)

        grads: dict[str, np.ndarray] = {
            "dense.W": dW_dense,
            "dense.b": db_dense,
        }
        for li in range(len(self.layers) - 1, -1, -1):
            layer = self.layers[li]
            cache_f, cache_b = cache["layer_caches"][li]
            H = layer.fwd.hidden
            dh_f = dseq[:, :, :H]
            dh_b = dseq[:, :, H:][::-1]
            g_f, dx_f = lstm_backward(layer.fwd, cache_f, dh_f)
            g_b, dx_b_rev = lstm_backward(layer.bwd, cache_b, dh_b)
            for name, arr in g_f.items():
                grads[f"layer{li}.fwd.{name}"] = arr
            for name, arr in g_b.items():
                grads[f"layer{li}.bwd.{name}"] = arr
            dseq = dx_f + dx_b_rev[::-1]
        return grads

    def loss_and_grads(self, batch) -> tuple[float, dict[str, np.ndarray], int]:
        """Forward + backward on one batch; returns (loss, grads,
        unmasked count)."""
        logits, cache = self.forward(batch.x, batch.mask, want_cache=True)
        loss, dlogits = masked_xent_from_logits(logits, batch.y, batch.mask)
        return loss, self.backward(cache, dlogits), int(batch.mask.sum())

    def predict_probs(self, x: np.ndarray, mask: np.ndarray) -> np.ndarray:
        """Class probabilities with dropout off."""
        logits, _ = self.forward(x, mask)
        return softmax(logits)


def _inverted_mask(rng: np.random.Generator, shape, rate: float):
    if rate == 0:
        return None
    keep = 1.0 - rate
    return (rng.random(shape) < keep).astype(np.float64) / keep


def bilstm_forward(
    layer: BiLayer, x: np.ndarray, mask: np.ndarray
) -> np.ndarray:
    """Single bidirectional layer over a time-major (T, B, C_in) batch,
    returning concatenated (T, B, 2H) features. Inference-only surface;
    training goes through BiLstmTranscriber."""
    h_f, _ = lstm_forward(layer.fwd, x, mask)
    h_b_rev, _ = lstm_forward(layer.bwd, x[::-1], mask[::-1])
    return np.concatenate([h_f, h_b_rev[::-1]], axis=2)
