"""The trainable student: a fully connected network with explicit
forward and backward passes, plus the Adam optimizer and a decimal-text
serialization format.

Hidden layers use ReLU; the output layer is linear.  Parameters are kept
as a flat list ``[W1, b1, W2, b2, ...]`` with W of shape (fan_in,
fan_out), so the optimizer is generic over the list.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class StudentModel:
    def __init__(self, layer_dims: list[int], weights=None, biases=None):
        if len(layer_dims) < 2 or any(d < 1 for d in layer_dims):
            raise ValueError("layer_dims needs at least [d_in, d_out], all positive")
        self.layer_dims = list(int(d) for d in layer_dims)
        n_layers = len(self.layer_dims) - 1
        if weights is None:
            weights = [np.zeros((self.layer_dims[i], self.layer_dims[i + 1])) for i in range(n_layers)]
            biases = [np.zeros(self.layer_dims[i + 1]) for i in range(n_layers)]
        self.weights = [np.asarray(w, dtype=float) for w in weights]
        self.biases = [np.asarray(b, dtype=float) for b in biases]
        for i in range(n_layers):
            if self.weights[i].shape != (self.layer_dims[i], self.layer_dims[i + 1]):
                raise ValueError("weight shapes incompatible with layer_dims")
            if self.biases[i].shape != (self.layer_dims[i + 1],):
                raise ValueError("bias shapes incompatible with layer_dims")

    @property
    def input_dim(self) -> int:
        return self.layer_dims[0]

    @property
    def output_dim(self) -> int:
        return self.layer_dims[-1]

    def parameters(self) -> list[np.ndarray]:
        params = []
        for w, b in zip(self.weights, self.biases):
            params.append(w)
            params.append(b)
        return params

    def _forward_cache(self, batch: np.ndarray):
        x = np.asarray(batch, dtype=float)
        if x.ndim != 2 or x.shape[1] != self.input_dim:
            raise ValueError(f"input of dim {x.shape} does not match model input dim {self.input_dim}")
        activations = [x]
        pre = []
        out = x
        last = len(self.weights) - 1
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            z = out @ w + b
            pre.append(z)
            out = z if i == last else np.maximum(z, 0.0)
            activations.append(out)
        return out, activations, pre

    def forward(self, batch: np.ndarray) -> np.ndarray:
        """Map a B x D_in batch to B x D_out embeddings."""
        out, _, _ = self._forward_cache(batch)
        return out

    def backward(self, batch: np.ndarray, grad_y: np.ndarray) -> list[np.ndarray]:
        """Exact parameter gradients for a loss whose embedding gradient is ``grad_y``.

        ``grad_y`` must correspond to a forward pass on this same batch.
        Returns gradients in the same order as :meth:`parameters`.
        """
        grad_y = np.asarray(grad_y, dtype=float)
        _, activations, pre = self._forward_cache(batch)
        if grad_y.shape != (batch.shape[0], self.output_dim):
            raise ValueError(f"grad_y shape {grad_y.shape} does not match the forward output")
        grads: list[np.ndarray] = [np.empty(0)] * (2 * len(self.weights))
        delta = grad_y
        for i in range(len(self.weights) - 1, -1, -1):
            grads[2 * i] = activations[i].T @ delta
            grads[2 * i + 1] = delta.sum(axis=0)
            if i > 0:
                delta = (delta @ self.weights[i].T) * (pre[i - 1] > 0.0)
        return grads


def init_student(layer_dims: list[int], seed: int) -> StudentModel:
    """Glorot-uniform weights, zero biases, seeded."""
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(layer_dims[:-1], layer_dims[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return StudentModel(layer_dims, weights, biases)


@dataclass
class AdamState:
    lr: float = 1e-4
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step: int = 0
    m: list[np.ndarray] = field(default_factory=list)
    v: list[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        if self.lr <= 0 or self.eps <= 0:
            raise ValueError("lr and eps must be positive")
        if not (0 < self.beta1 < 1 and 0 < self.beta2 < 1):
            raise ValueError("betas must lie in (0, 1)")


def init_adam(params: list[np.ndarray], lr: float = 1e-4, beta1: float = 0.9,
              beta2: float = 0.999, eps: float = 1e-8) -> AdamState:
    state = AdamState(lr=lr, beta1=beta1, beta2=beta2, eps=eps)
    state.m = [np.zeros_like(p) for p in params]
    state.v = [np.zeros_like(p) for p in params]
    return state


def adam_step(state: AdamState, params: list[np.ndarray], grads: list[np.ndarray]) -> AdamState:
    """One bias-corrected Adam update, applied to ``params`` in place."""
    if len(params) != len(state.m) or len(grads) != len(params):
        raise ValueError("parameter/gradient lists do not match the optimizer state")
    state.step += 1
    c1 = 1.0 - state.beta1 ** state.step
    c2 = 1.0 - state.beta2 ** state.step
    for i, (p, g) in enumerate(zip(params, grads)):
        if g.shape != p.shape:
            raise ValueError("gradient shape mismatch")
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * (g * g)
        m_hat = state.m[i] / c1
        v_hat = state.v[i] / c2
        p -= state.lr * m_hat / (np.sqrt(v_hat) + state.eps)
    return state


MODEL_HEADER = "PKT-MODEL v1"


def save_model(model: StudentModel, path) -> None:
    """Decimal-text serialization, round-trip exact for doubles (17 significant digits)."""
    lines = [MODEL_HEADER, "dims " + " ".join(str(d) for d in model.layer_dims)]
    for w, b in zip(model.weights, model.biases):
        for row in w:
            lines.append(" ".join(f"{x:.17g}" for x in row))
        lines.append(" ".join(f"{x:.17g}" for x in b))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_model(path) -> StudentModel:
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0] != MODEL_HEADER:
        raise ValueError(f"not a {MODEL_HEADER} file: {path}")
    if len(lines) < 2 or not lines[1].startswith("dims "):
        raise ValueError("missing dims line")
    dims = [int(tok) for tok in lines[1].split()[1:]]
    if len(dims) < 2:
        raise ValueError("dims line needs at least two entries")
    pos = 2
    weights, biases = [], []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        block = lines[pos : pos + fan_in + 1]
        if len(block) != fan_in + 1:
            raise ValueError("model file truncated")
        w = np.array([[float(tok) for tok in ln.split()] for ln in block[:fan_in]])
        b = np.array([float(tok) for tok in block[fan_in].split()])
        if w.shape != (fan_in, fan_out) or b.shape != (fan_out,):
            raise ValueError("layer block does not match dims")
        weights.append(w)
        biases.append(b)
        pos += fan_in + 1
    return StudentModel(dims, weights, biases)
