"""Scikit-learn style wrappers so the corrector composes with the
wider ecosystem: the text transforms are TransformerMixins and the
trainable corrector is an estimator with fit/predict/score and
get_params/set_params/clone support.

All estimators take and return lists of strings, one sequence per
element. Following sklearn conventions, __init__ only stores
parameters; validation happens in fit/transform, and fitted state lives
in trailing-underscore attributes.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from . import arabic
from .groups import ALL_GROUPS, InjectionConfig, inject_corpus, transform_input
from .metrics import ConfusionMatrix, accuracy
from .nn.model import ModelSpec
from .nn.training import (
    StochasticInjection,
    TrainConfig,
    TransformedInput,
    predict as predict_sequence,
    train,
)


def check_text_sequences(X, name: str = "X") -> list[str]:
    """Validate list-of-strings input, the text analogue of sklearn's
    array checks."""
    if isinstance(X, str):
        raise TypeError(f"{name} must be a sequence of strings, not a single string")
    try:
        items = list(X)
    except TypeError as exc:
        raise TypeError(f"{name} must be an iterable of strings") from exc
    for i, item in enumerate(items):
        if not isinstance(item, str):
            raise TypeError(f"{name}[{i}] is {type(item).__name__}, expected str")
    return items


class DiacriticStripper(TransformerMixin, BaseEstimator):
    """Remove Arabic diacritics from every sequence. Stateless."""

    def fit(self, X, y=None):
        check_text_sequences(X)
        return self

    def transform(self, X):
        return [arabic.strip_diacritics(s) for s in check_text_sequences(X)]


class IntermediateTranscoder(TransformerMixin, BaseEstimator):
    """Reversible raw-text <-> intermediate-code transcoding."""

    def fit(self, X, y=None):
        check_text_sequences(X)
        return self

    def transform(self, X):
        return [arabic.to_intermediate(s) for s in check_text_sequences(X)]

    def inverse_transform(self, X):
        return [arabic.from_intermediate(s) for s in check_text_sequences(X)]


class GroupCollapser(TransformerMixin, BaseEstimator):
    """Collapse every confusable symbol to its group canonical
    (the transformed-input regime as a standalone transform)."""

    def fit(self, X, y=None):
        check_text_sequences(X)
        return self

    def transform(self, X):
        return [transform_input(s) for s in check_text_sequences(X)]


class ErrorInjector(TransformerMixin, BaseEstimator):
    """Corrupt intermediate sequences by seeded intra-group
    substitution at the configured rate; the change log of the last
    transform is kept in ``record_``."""

    def __init__(self, rate=0.1, random_state=0, groups=None):
        self.rate = rate
        self.random_state = random_state
        self.groups = groups

    def fit(self, X, y=None):
        check_text_sequences(X)
        return self

    def transform(self, X):
        cfg = InjectionConfig(
            rate=self.rate,
            seed=self.random_state,
            enabled_groups=frozenset(self.groups or ALL_GROUPS),
        )
        corrupted, record = inject_corpus(check_text_sequences(X), cfg)
        self.record_ = record
        return corrupted


class BiLstmCorrector(BaseEstimator):
    """Character-level soft-spelling corrector.

    fit(X) takes clean raw-text sequences; training inputs are derived
    internally by the chosen approach ("transformed" collapses
    confusable letters to one form, "inject" corrupts at
    injection_rate). predict(X) returns corrected raw text of the same
    line count, preserving length except where the two-letter units
    legitimately expand or contract.
    """

    def __init__(
        self,
        layers=2,
        hidden=256,
        dropout=0.1,
        recurrent_dropout=0.3,
        peepholes=True,
        approach="inject",
        injection_rate=0.4,
        resample_errors=True,
        batch_size=64,
        max_len=400,
        max_epochs=50,
        patience=5,
        learning_rate=1e-3,
        rho=0.9,
        epsilon=1e-7,
        validation_fraction=0.1,
        strip_diacritics=True,
        random_state=0,
    ):
        self.layers = layers
        self.hidden = hidden
        self.dropout = dropout
        self.recurrent_dropout = recurrent_dropout
        self.peepholes = peepholes
        self.approach = approach
        self.injection_rate = injection_rate
        self.resample_errors = resample_errors
        self.batch_size = batch_size
        self.max_len = max_len
        self.max_epochs = max_epochs
        self.patience = patience
        self.learning_rate = learning_rate
        self.rho = rho
        self.epsilon = epsilon
        self.validation_fraction = validation_fraction
        self.strip_diacritics = strip_diacritics
        self.random_state = random_state

    def _encode(self, X) -> list[str]:
        texts = check_text_sequences(X)
        if self.strip_diacritics:
            texts = [arabic.strip_diacritics(t) for t in texts]
        return [arabic.to_intermediate(t) for t in texts]

    def fit(self, X, y=None):
        if y is not None:
            raise ValueError(
                "y is not used: pass clean text as X; corrupted training "
                "inputs are derived by the configured approach"
            )
        targets = self._encode(X)
        if self.approach == "transformed":
            approach = TransformedInput()
        elif self.approach == "inject":
            approach = StochasticInjection(
                rate=self.injection_rate,
                resample_each_epoch=self.resample_errors,
            )
        else:
            raise ValueError(
                f"approach must be 'transformed' or 'inject', got {self.approach!r}"
            )
        n_valid = max(1, int(round(len(targets) * self.validation_fraction)))
        if n_valid >= len(targets):
            raise ValueError("not enough sequences for a validation split")
        train_targets = targets[: len(targets) - n_valid]
        valid_targets = targets[len(targets) - n_valid :]
        spec = ModelSpec(
            vocab_size=0,
            layers=self.layers,
            hidden=self.hidden,
            dropout=self.dropout,
            recurrent_dropout=self.recurrent_dropout,
            peepholes=self.peepholes,
        )
        cfg = TrainConfig(
            batch_size=self.batch_size,
            max_len=self.max_len,
            max_epochs=self.max_epochs,
            patience=self.patience,
            seed=self.random_state,
            lr=self.learning_rate,
            rho=self.rho,
            epsilon=self.epsilon,
        )
        self.model_, self.history_ = train(
            spec, train_targets, valid_targets, approach, cfg
        )
        self.vocab_ = self.model_.vocab
        return self

    def _check_fitted(self):
        if not hasattr(self, "model_"):
            raise NotFittedError(
                "this BiLstmCorrector instance is not fitted yet; call fit first"
            )

    def predict(self, X) -> list[str]:
        self._check_fitted()
        out = []
        for seq in self._encode(X):
            corrected = predict_sequence(self.model_, seq, max_len=self.max_len)
            out.append(arabic.from_intermediate(corrected))
        return out

    def transcribe(self, X) -> list[str]:
        """predict in intermediate space (no decoding), for evaluation
        pipelines that work positionally."""
        self._check_fitted()
        return [
            predict_sequence(self.model_, seq, max_len=self.max_len)
            for seq in self._encode(X)
        ]

    def score(self, X, y=None) -> float:
        """Per-character transcription accuracy of predict(X) against
        clean references y (defaults to X itself)."""
        self._check_fitted()
        refs = self._encode(X if y is None else check_text_sequences(y))
        preds = self.transcribe(X)
        matrix = ConfusionMatrix()
        for p, t in zip(preds, refs):
            matrix.accumulate(p, t)
        return accuracy(matrix)
