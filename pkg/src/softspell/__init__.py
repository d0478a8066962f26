"""Correct Arabic soft spelling mistakes with a character-level BiLSTM.

Soft errors confuse same-sounding orthographic variants: hamza carrier
forms, word-final teh/teh-marbuta/heh, alef vs alef maksura, and waw vs
waw-alef endings. Raw text is transcoded into an intermediate alphabet
where every confusable unit is one symbol, a bidirectional LSTM is
trained as a one-to-one sequence transcriber (from corrupted or
collapsed inputs back to clean text), and predictions decode back to
readable Arabic.
"""

from .arabic import (
    from_intermediate,
    strip_diacritics,
    to_intermediate,
    word_final_positions,
)
from .corpus import Corpus, SplitSpec, corpus_stats, load_corpus, split, wrap_sequences
from .estimators import (
    BiLstmCorrector,
    DiacriticStripper,
    ErrorInjector,
    GroupCollapser,
    IntermediateTranscoder,
)
from .groups import (
    InjectionConfig,
    eligible_count,
    inject_errors,
    resolve_group,
    transform_input,
)
from .metrics import ConfusionMatrix, MetricsReport, build_report, cer_wer
from .nn import (
    BiLstmTranscriber,
    ModelSpec,
    StochasticInjection,
    TrainConfig,
    TransformedInput,
    load_model,
    predict,
    save_model,
    train,
)
from .synthetic import SyntheticConfig, generate_corpus
from .vocab import Vocabulary

__version__ = "0.1.0"

__all__ = [
    "BiLstmCorrector",
    "BiLstmTranscriber",
    "ConfusionMatrix",
    "Corpus",
    "DiacriticStripper",
    "ErrorInjector",
    "GroupCollapser",
    "InjectionConfig",
    "IntermediateTranscoder",
    "MetricsReport",
    "ModelSpec",
    "SplitSpec",
    "StochasticInjection",
    "SyntheticConfig",
    "TrainConfig",
    "TransformedInput",
    "Vocabulary",
    "build_report",
    "cer_wer",
    "corpus_stats",
    "eligible_count",
    "from_intermediate",
    "generate_corpus",
    "inject_errors",
    "load_corpus",
    "load_model",
    "predict",
    "resolve_group",
    "save_model",
    "split",
    "strip_diacritics",
    "to_intermediate",
    "train",
    "transform_input",
    "word_final_positions",
    "wrap_sequences",
]
