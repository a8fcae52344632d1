"""Reference stereo model with a hand-written reverse pass.

Forward, per view and with weights shared between the views::

    x  = (I − 127.5) / 127.5
    a1 = softplus(conv3x3(x; W1) + b1)
    f  = softplus(conv3x3(a1; W2) + b2)

then a correlation cost and a soft-argmin readout::

    c(x, y, d) = −Σ_ch f_L(x, y) · f_R(x − d, y),      d = 0 … d_max
    D(x, y)    = Σ_d d · softmax_d(−β · c(x, y, d)),   β = exp(log_beta)

The correlation is not normalized: on identical views d = 0 loses wherever a
neighbour's features are stronger. A right sample with ``x − d < 0`` takes the
worst (largest) valid cost of its row; in the reverse pass its gradient flows
to the entry that supplied it.
Convolutions are 3×3, stride 1, zero padded.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.special import expit

from zole.core.rng import Rng
from zole.core.types import DisparityMap, StereoPair
from zole.model.base import ModelParams, ParamGrad, ParamLayout, ParamSpec
from zole.model.errors import ModelError, ModelNumericsError
from zole.schemas.config import ToyModelConfig

logger = logging.getLogger(__name__)

CONV1_WEIGHT = "conv1.weight"
CONV1_BIAS = "conv1.bias"
CONV2_WEIGHT = "conv2.weight"
CONV2_BIAS = "conv2.bias"
LOG_BETA = "log_beta"

_KERNEL = 3
# Rng stream reserved for parameter initialisation
INIT_STREAM = 7


def _softplus(z: np.ndarray) -> np.ndarray:
    return np.logaddexp(0.0, z)


def _check_finite(values: np.ndarray, layer: str) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise ModelNumericsError(layer)
    return values


def _im2col(x: np.ndarray) -> np.ndarray:
    """H×W×C → (H·W, C·9); column index is ``c·9 + dy·3 + dx``."""
    h, w, c = x.shape
    padded = np.pad(x, ((1, 1), (1, 1), (0, 0)))
    windows = sliding_window_view(padded, (_KERNEL, _KERNEL), axis=(0, 1))
    return windows.reshape(h * w, c * _KERNEL * _KERNEL)


def _col2im(grad_cols: np.ndarray, h: int, w: int, c: int) -> np.ndarray:
    """Adjoint of :func:`_im2col`."""
    g = grad_cols.reshape(h, w, c, _KERNEL, _KERNEL)
    padded = np.zeros((h + 2, w + 2, c))
    for dy in range(_KERNEL):
        for dx in range(_KERNEL):
            padded[dy:dy + h, dx:dx + w, :] += g[:, :, :, dy, dx]
    return padded[1:-1, 1:-1, :]


def _conv_forward(x: np.ndarray, weight: np.ndarray, bias: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    h, w, _ = x.shape
    cols = _im2col(x)
    z = cols @ weight.reshape(weight.shape[0], -1).T + bias
    return cols, z.reshape(h, w, weight.shape[0])


def _conv_backward(
    grad_z: np.ndarray, cols: np.ndarray, weight: np.ndarray, in_shape: tuple[int, int, int]
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    cout = weight.shape[0]
    gz = grad_z.reshape(-1, cout)
    grad_w = (gz.T @ cols).reshape(weight.shape)
    grad_b = gz.sum(axis=0)
    grad_x = _col2im(gz @ weight.reshape(cout, -1), *in_shape)
    return grad_w, grad_b, grad_x


@dataclass
class _FeatureTrace:
    x: np.ndarray
    cols1: np.ndarray
    z1: np.ndarray
    a1: np.ndarray
    cols2: np.ndarray
    z2: np.ndarray
    f: np.ndarray


@dataclass
class _ForwardTrace:
    left: _FeatureTrace
    right: _FeatureTrace
    valid: np.ndarray          # (W, D+1): x − d >= 0
    worst_index: np.ndarray    # per row, flat (x, d) index of the worst valid cost
    cost: np.ndarray
    logits: np.ndarray
    prob: np.ndarray
    beta: float
    disparity: np.ndarray


class ToyStereoModel:
    """Small correlation network implementing the :class:`StereoModel` contract."""

    def __init__(self, config: ToyModelConfig | None = None) -> None:
        self.config = config or ToyModelConfig()
        width, cin = self.config.width, self.config.in_channels
        self._layout = ParamLayout(
            entries=(
                ParamSpec(name=CONV1_WEIGHT, shape=(width, cin, _KERNEL, _KERNEL)),
                ParamSpec(name=CONV1_BIAS, shape=(width,)),
                ParamSpec(name=CONV2_WEIGHT, shape=(width, width, _KERNEL, _KERNEL)),
                ParamSpec(name=CONV2_BIAS, shape=(width,)),
                ParamSpec(name=LOG_BETA, shape=(1,)),
            )
        )
        self._disparities = np.arange(self.config.max_disparity + 1, dtype=np.float64)

    def __repr__(self) -> str:
        return f"ToyStereoModel({self.config!r})"

    @property
    def max_disparity(self) -> int:
        return self.config.max_disparity

    @property
    def layout(self) -> ParamLayout:
        return self._layout

    def init_params(self, rng: Rng) -> ModelParams:
        """Glorot-uniform filters, zero biases, β = 1."""
        tensors: dict[str, np.ndarray] = {}
        for name in (CONV1_WEIGHT, CONV2_WEIGHT):
            shape = self._layout.shape_of(name)
            fan_out = shape[0] * _KERNEL * _KERNEL
            fan_in = shape[1] * _KERNEL * _KERNEL
            limit = float(np.sqrt(6.0 / (fan_in + fan_out)))
            tensors[name] = rng.uniform(-limit, limit, size=shape)
        tensors[CONV1_BIAS] = np.zeros(self.config.width)
        tensors[CONV2_BIAS] = np.zeros(self.config.width)
        tensors[LOG_BETA] = np.zeros(1)
        logger.debug("[model] init %d parameters from %r", self._layout.size, rng)
        return ModelParams.from_tensors(self._layout, tensors)

    def init_from_seed(self, seed: int) -> ModelParams:
        """Initial parameters for a run seeded with ``seed``."""
        return self.init_params(Rng(seed, stream=(INIT_STREAM,)))

    # ------------------------------------------------------------------ forward

    def _check_inputs(self, pair: StereoPair, theta: ModelParams) -> None:
        if theta.layout != self._layout:
            raise ModelError("parameter layout does not match this model")
        if pair.left.channels != self.config.in_channels:
            raise ModelError(
                f"model expects {self.config.in_channels}-channel views, got {pair.left.channels}"
            )

    def _features(self, image: np.ndarray, theta: ModelParams) -> _FeatureTrace:
        x = (image - 127.5) / 127.5
        cols1, z1 = _conv_forward(x, theta.tensor(CONV1_WEIGHT), theta.tensor(CONV1_BIAS))
        a1 = _check_finite(_softplus(z1), "conv1")
        cols2, z2 = _conv_forward(a1, theta.tensor(CONV2_WEIGHT), theta.tensor(CONV2_BIAS))
        f = _check_finite(_softplus(z2), "conv2")
        return _FeatureTrace(x, cols1, z1, a1, cols2, z2, f)

    def _trace(self, pair: StereoPair, theta: ModelParams) -> _ForwardTrace:
        self._check_inputs(pair, theta)
        left = self._features(pair.left.data, theta)
        right = self._features(pair.right.data, theta)

        h, w, _ = left.f.shape
        n_disp = self.config.max_disparity + 1
        cost = np.zeros((h, w, n_disp))
        valid = np.zeros((w, n_disp), dtype=bool)
        for d in range(min(n_disp, w)):
            cost[:, d:, d] = -np.einsum("ijk,ijk->ij", left.f[:, d:], right.f[:, : w - d])
            valid[d:, d] = True

        flat = np.where(valid[None], cost, -np.inf).reshape(h, -1)
        worst_index = flat.argmax(axis=1)
        worst = flat[np.arange(h), worst_index]
        cost = _check_finite(np.where(valid[None], cost, worst[:, None, None]), "cost_volume")

        beta = float(np.exp(theta.tensor(LOG_BETA)[0]))
        logits = -beta * cost
        shifted = np.exp(logits - logits.max(axis=2, keepdims=True))
        prob = shifted / shifted.sum(axis=2, keepdims=True)
        disparity = np.clip(prob @ self._disparities, 0.0, float(self.config.max_disparity))
        _check_finite(disparity, "soft_argmin")
        return _ForwardTrace(left, right, valid, worst_index, cost, logits, prob, beta, disparity)

    def forward(self, pair: StereoPair, theta: ModelParams) -> DisparityMap:
        return DisparityMap(self._trace(pair, theta).disparity)

    def cost_volume(self, pair: StereoPair, theta: ModelParams) -> np.ndarray:
        """H×W×(d_max+1) matching costs after out-of-bounds filling."""
        return self._trace(pair, theta).cost.copy()

    # ----------------------------------------------------------------- backward

    def _feature_backward(
        self, trace: _FeatureTrace, grad_f: np.ndarray, theta: ModelParams
    ) -> dict[str, np.ndarray]:
        grad_z2 = grad_f * expit(trace.z2)
        g_w2, g_b2, grad_a1 = _conv_backward(
            grad_z2, trace.cols2, theta.tensor(CONV2_WEIGHT), trace.a1.shape
        )
        grad_z1 = grad_a1 * expit(trace.z1)
        g_w1, g_b1, _ = _conv_backward(grad_z1, trace.cols1, theta.tensor(CONV1_WEIGHT), trace.x.shape)
        return {CONV1_WEIGHT: g_w1, CONV1_BIAS: g_b1, CONV2_WEIGHT: g_w2, CONV2_BIAS: g_b2}

    def backward(self, pair: StereoPair, theta: ModelParams, cotangent: np.ndarray) -> ParamGrad:
        trace = self._trace(pair, theta)
        g = np.asarray(cotangent, dtype=np.float64)
        if g.shape != trace.disparity.shape:
            raise ModelError(f"cotangent shape {g.shape} does not match output {trace.disparity.shape}")

        # soft-argmin
        grad_logits = g[:, :, None] * trace.prob * (self._disparities - trace.disparity[:, :, None])
        grad_log_beta = float(np.sum(grad_logits * trace.logits))
        grad_cost = -trace.beta * grad_logits

        # out-of-bounds entries copied the row's worst valid cost
        h, w, n_disp = grad_cost.shape
        spill = np.where(trace.valid[None], 0.0, grad_cost).sum(axis=(1, 2))
        grad_cost = np.where(trace.valid[None], grad_cost, 0.0).reshape(h, -1)
        grad_cost[np.arange(h), trace.worst_index] += spill
        grad_cost = grad_cost.reshape(h, w, n_disp)

        f_l, f_r = trace.left.f, trace.right.f
        grad_fl = np.zeros_like(f_l)
        grad_fr = np.zeros_like(f_r)
        for d in range(min(n_disp, w)):
            gd = grad_cost[:, d:, d, None]
            grad_fl[:, d:] -= gd * f_r[:, : w - d]
            grad_fr[:, : w - d] -= gd * f_l[:, d:]

        left = self._feature_backward(trace.left, grad_fl, theta)
        right = self._feature_backward(trace.right, grad_fr, theta)
        tensors = {name: left[name] + right[name] for name in left}
        tensors[LOG_BETA] = np.array([grad_log_beta])
        for name, value in tensors.items():
            _check_finite(value, f"grad:{name}")
        return ParamGrad.from_tensors(self._layout, tensors)
