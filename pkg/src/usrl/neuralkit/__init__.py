"""Small deterministic neural kernel shared by both neural stages."""

from .autodiff import (NonFiniteError, Tensor, check_gradients, concat, exp,
                       log, relu, rows, set_finite_checks, sigmoid, softmax,
                       stack, tanh, tensor)
from .layers import Affine, BiLSTM, LSTMCell
from .optim import ADAGRAD_EPS, adagrad_step, sgd_step
from .store import CheckpointError, ParameterStore

__all__ = [
    "ADAGRAD_EPS", "Affine", "BiLSTM", "CheckpointError", "LSTMCell",
    "NonFiniteError", "ParameterStore", "Tensor", "adagrad_step",
    "check_gradients", "concat", "exp", "log", "relu", "rows",
    "set_finite_checks", "sgd_step", "sigmoid", "softmax", "stack", "tanh",
    "tensor",
]
