from .lstm import LstmParams, init_lstm_params, lstm_step
from .model import BiLstmTranscriber, DenseParams, ModelSpec
from .losses import dense_softmax, masked_cross_entropy
from .rmsprop import RmsProp, rmsprop_update
from .serialize import load_model, save_model
from .training import TrainConfig, StochasticInjection, TransformedInput, predict, train

__all__ = [
    "BiLstmTranscriber",
    "DenseParams",
    "LstmParams",
    "ModelSpec",
    "RmsProp",
    "StochasticInjection",
    "TrainConfig",
    "TransformedInput",
    "dense_softmax",
    "init_lstm_params",
    "load_model",
    "lstm_step",
    "masked_cross_entropy",
    "predict",
    "rmsprop_update",
    "save_model",
    "train",
]
