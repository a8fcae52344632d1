"""Central finite differences for gradient tests."""

from __future__ import annotations

from typing import Callable

import numpy as np


def numeric_grad(fn: Callable[[np.ndarray], float], x: np.ndarray, eps: float = 1e-6) -> np.ndarray:
    x = np.array(x, dtype=np.float64)
    out = np.zeros_like(x)
    flat = x.reshape(-1)
    grad = out.reshape(-1)
    for i in range(flat.size):
        old = flat[i]
        flat[i] = old + eps
        hi = fn(x)
        flat[i] = old - eps
        lo = fn(x)
        flat[i] = old
        grad[i] = (hi - lo) / (2.0 * eps)
    return out


def directional_derivative(fn: Callable[[np.ndarray], float], x: np.ndarray, direction: np.ndarray, eps: float = 1e-6) -> float:
    x = np.asarray(x, dtype=np.float64)
    return (fn(x + eps * direction) - fn(x - eps * direction)) / (2.0 * eps)


def relative_error(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))), 1e-12)
    return float(np.max(np.abs(a - b))) / scale
