from .checkpoint import load_checkpoint, save_checkpoint
from .layers import (
    ParameterSet,
    conv1d_circular,
    gru_sequence,
    gru_step,
    he_uniform,
    linear,
    sliding_windows,
    xavier_uniform,
)
from .optim import Adam
from .rng import Rng
from .tensor import (
    Tensor,
    add,
    clamp,
    concat,
    cosine_similarity,
    default_dtype,
    exp,
    grad,
    log,
    matmul,
    tmean,
    minimum,
    mul,
    neg,
    no_grad,
    reciprocal,
    relu,
    reshape,
    scale,
    set_default_dtype,
    sigmoid,
    sqrt,
    square,
    sub,
    tsum,
    take,
    tanh,
    tensor,
    transpose,
)

__all__ = [
    "Adam",
    "ParameterSet",
    "Rng",
    "Tensor",
    "add",
    "clamp",
    "concat",
    "conv1d_circular",
    "cosine_similarity",
    "default_dtype",
    "exp",
    "grad",
    "gru_sequence",
    "gru_step",
    "he_uniform",
    "linear",
    "load_checkpoint",
    "log",
    "matmul",
    "tmean",
    "minimum",
    "mul",
    "neg",
    "no_grad",
    "reciprocal",
    "relu",
    "reshape",
    "save_checkpoint",
    "scale",
    "set_default_dtype",
    "sigmoid",
    "sliding_windows",
    "sqrt",
    "square",
    "sub",
    "tsum",
    "take",
    "tanh",
    "tensor",
    "transpose",
]
