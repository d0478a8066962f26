"""Time-distributed softmax output and the masked cross-entropy loss."""

from __future__ import annotations

import warnings

import numpy as np

from ..errors import VocabularyError


def softmax(logits: np.ndarray, axis: int = -1) -> np.ndarray:
    """Stable softmax (max-subtraction); rows sum to 1."""
    shifted = logits - logits.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=axis, keepdims=True)


def dense_softmax(params, h: np.ndarray) -> np.ndarray:
    """Apply the output layer to one feature vector (or a batch of
    them) and return class probabilities."""
    logits = h @ params.W.T + params.b
    return softmax(logits)


def masked_cross_entropy(
    probs: np.ndarray, targets: np.ndarray, mask: np.ndarray
) -> float:
    """Mean of -ln p[target] over unmasked steps.

    probs: (B, T, C); targets: (B, T) int; mask: (B, T) bool. Masked
    steps are excluded from both the sum and the count. An all-masked
    batch is defined as loss 0 (with a warning) rather than NaN.
    """
    n_classes = probs.shape[-1]
    if targets[mask].size and (targets[mask].max() >= n_classes or targets[mask].min() < 0):
        raise VocabularyError("target index outside the vocabulary")
    count = int(mask.sum())
    if count == 0:
        warnings.warn("all timesteps masked; loss defined as 0", stacklevel=2)
        return 0.0
    b, t = np.nonzero(mask)
    picked = probs[b, t, targets[b, t]]
    return float(-np.log(picked).sum() / count)


def masked_xent_from_logits(
    logits: np.ndarray, targets: np.ndarray, mask: np.ndarray
) -> tuple[float, np.ndarray]:
    """Fused loss and gradient from logits (log-sum-exp form, so the
    loss never sees a hard zero probability). Returns (loss, dlogits)
    where dlogits already includes the 1/count normalization and is zero
    at masked steps."""
    count = int(mask.sum())
    shifted = logits - logits.max(axis=-1, keepdims=True)
    logsumexp = np.log(np.exp(shifted).sum(axis=-1, keepdims=True))
    log_probs = shifted - logsumexp
    if count == 0:
        warnings.warn("all timesteps masked; loss defined as 0", stacklevel=2)
        return 0.0, np.zeros_like(logits)
    b, t = np.nonzero(mask)
    loss = float(-log_probs[b, t, targets[b, t]].sum() / count)
    dlogits = np.exp(log_probs)
    dlogits[b, t, targets[b, t]] -= 1.0
    dlogits *= mask[:, :, None] / count
    return loss, dlogits
