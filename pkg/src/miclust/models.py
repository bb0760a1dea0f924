"""Discriminative clustering models p(y|x) with exact analytic gradients.

Every model maps an n x d matrix to an n x K row-stochastic responsibility
matrix through a softmax. `backward` propagates an objective gradient taken
with respect to the responsibilities down to every parameter; `backward_from_logits`
skips the softmax Jacobian (used by the contrastive critic, which consumes
raw logits).
"""

from __future__ import annotations

import hashlib
import json
import math

import numpy as np

from miclust.data import make_rng
from miclust.kernels import KernelSpec, gram


def softmax(Z: np.ndarray) -> np.ndarray:
    """Row-wise softmax with per-row max subtraction."""
    shifted = Z - Z.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def log_softmax(Z: np.ndarray) -> np.ndarray:
    """Row-wise log-probabilities computed as logits - logsumexp."""
    shifted = Z - Z.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def softmax_backward(P: np.ndarray, dP: np.ndarray) -> np.ndarray:
    """Map a gradient w.r.t. softmax outputs to a gradient w.r.t. logits."""
    inner = (dP * P).sum(axis=1, keepdims=True)
    return P * (dP - inner)


class ClusterModel:
    """Shared forward/backward plumbing; subclasses provide logits."""

    kind = "abstract"
    # parameter names whose Frobenius norm is penalized by RIM
    weight_keys: tuple = ()

    @property
    def params(self) -> dict:
        raise NotImplementedError

    def logits(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def backward_from_logits(self, X: np.ndarray, dZ: np.ndarray) -> dict:
        raise NotImplementedError

    def forward(self, X: np.ndarray) -> np.ndarray:
        return softmax(self.logits(X))

    def backward(self, X: np.ndarray, dP: np.ndarray) -> dict:
        P = self.forward(X)
        if dP.shape != P.shape:
            raise ValueError(f"gradient shape {dP.shape} does not match responsibilities {P.shape}")
        if not np.all(np.isfinite(dP)):
            raise ValueError("gradient w.r.t. responsibilities contains non-finite entries")
        return self.backward_from_logits(X, softmax_backward(P, dP))

    @property
    def n_clusters(self) -> int:
        raise NotImplementedError

    def weight_norm_sq(self) -> float:
        return float(sum(np.sum(self.params[k] ** 2) for k in self.weight_keys))

    def _extra_dict(self) -> dict:
        return {}

    def to_json(self) -> str:
        doc = {
            "kind": self.kind,
            "params": {k: v.tolist() for k, v in self.params.items()},
        }
        doc.update(self._extra_dict())
        return json.dumps(doc)


class LinearModel(ClusterModel):
    """Logistic regression: softmax(W^T x + b)."""

    kind = "linear"
    weight_keys = ("W",)

    def __init__(self, W: np.ndarray, b: np.ndarray):
        self.W = np.asarray(W, dtype=np.float64)
        self.b = np.asarray(b, dtype=np.float64)
        if self.W.ndim != 2 or self.b.shape != (self.W.shape[1],):
            raise ValueError("W must be d x K and b length K")
        if not (np.all(np.isfinite(self.W)) and np.all(np.isfinite(self.b))):
            raise ValueError("parameters must be finite")

    @property
    def params(self):
        return {"W": self.W, "b": self.b}

    @property
    def n_clusters(self):
        return self.W.shape[1]

    def logits(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.shape[1] != self.W.shape[0]:
            raise ValueError(f"input dimension {X.shape[1]} does not match model d={self.W.shape[0]}")
        return X @ self.W + self.b

    def backward_from_logits(self, X, dZ):
        X = np.asarray(X, dtype=np.float64)
        return {"W": X.T @ dZ, "b": dZ.sum(axis=0)}


class KernelModel(ClusterModel):
    """Kernelized softmax over a fixed reference set: softmax(A^T kappa(x) + b)."""

    kind = "kernel"
    weight_keys = ("A",)

    def __init__(self, A: np.ndarray, b: np.ndarray, X_ref: np.ndarray, spec: KernelSpec):
        self.A = np.asarray(A, dtype=np.float64)
        self.b = np.asarray(b, dtype=np.float64)
        self.X_ref = np.asarray(X_ref, dtype=np.float64)
        self.spec = spec.resolve(self.X_ref)
        if self.A.shape[0] != self.X_ref.shape[0] or self.b.shape != (self.A.shape[1],):
            raise ValueError("A must be n_ref x K with b length K")

    @property
    def params(self):
        return {"A": self.A, "b": self.b}

    @property
    def n_clusters(self):
        return self.A.shape[1]

    def _kappa(self, X):
        return gram(np.asarray(X, dtype=np.float64), self.X_ref, self.spec).values

    def logits(self, X):
        return self._kappa(X) @ self.A + self.b

    def backward_from_logits(self, X, dZ):
        return {"A": self._kappa(X).T @ dZ, "b": dZ.sum(axis=0)}

    def _extra_dict(self):
        return {"X_ref": self.X_ref.tolist(), "kernel": self.spec.to_dict()}


class MlpModel(ClusterModel):
    """One-hidden-layer rectifier network: softmax(W2^T relu(W1^T x + b1) + b2)."""

    kind = "mlp"
    weight_keys = ("W1", "W2")

    def __init__(self, W1, b1, W2, b2):
        self.W1 = np.asarray(W1, dtype=np.float64)
        self.b1 = np.asarray(b1, dtype=np.float64)
        self.W2 = np.asarray(W2, dtype=np.float64)
        self.b2 = np.asarray(b2, dtype=np.float64)
        if self.W1.shape[1] != self.W2.shape[0]:
            raise ValueError("hidden dimensions of W1 and W2 disagree")
        if self.b1.shape != (self.W1.shape[1],) or self.b2.shape != (self.W2.shape[1],):
            raise ValueError("bias shapes do not match weights")

    @property
    def params(self):
        return {"W1": self.W1, "b1": self.b1, "W2": self.W2, "b2": self.b2}

    @property
    def n_clusters(self):
        return self.W2.shape[1]

    def logits(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.shape[1] != self.W1.shape[0]:
            raise ValueError(f"input dimension {X.shape[1]} does not match model d={self.W1.shape[0]}")
        H = np.maximum(X @ self.W1 + self.b1, 0.0)
        return H @ self.W2 + self.b2

    def backward_from_logits(self, X, dZ):
        X = np.asarray(X, dtype=np.float64)
        pre = X @ self.W1 + self.b1
        H = np.maximum(pre, 0.0)
        dH = (dZ @ self.W2.T) * (pre > 0)
        return {
            "W1": X.T @ dH,
            "b1": dH.sum(axis=0),
            "W2": H.T @ dZ,
            "b2": dZ.sum(axis=0),
        }


def dataset_fingerprint(X: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(np.asarray(X, dtype=np.float64)).tobytes()).hexdigest()


class NonparametricModel(ClusterModel):
    """Free per-sample logit table, defined only on the bound training set."""

    kind = "nonparametric"
    weight_keys = ()

    def __init__(self, L: np.ndarray, fingerprint: str):
        self.L = np.asarray(L, dtype=np.float64)
        if self.L.ndim != 2:
            raise ValueError("L must be n x K")
        self.fingerprint = fingerprint

    @property
    def params(self):
        return {"L": self.L}

    @property
    def n_clusters(self):
        return self.L.shape[1]

    def _check_bound(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.shape[0] != self.L.shape[0] or dataset_fingerprint(X) != self.fingerprint:
            raise ValueError("nonparametric model does not generalise: X is not the bound training set")

    def logits(self, X):
        self._check_bound(X)
        return self.L.copy()

    def backward_from_logits(self, X, dZ):
        self._check_bound(X)
        return {"L": dZ.copy()}

    def _extra_dict(self):
        return {"fingerprint": self.fingerprint}


def init_model(kind: str, dims: dict, scale: float | None = None, rng=0, **kwargs) -> ClusterModel:
    """Random initialization: weights i.i.d. N(0, scale^2), biases 0.

    Default scale is 1/sqrt(fan-in) per weight matrix, except the kernel
    model which defaults to 1/n_ref. `dims` carries the
    model-specific sizes: d, k, hidden (mlp), n (nonparametric).

    Extra keyword arguments:
      kernel: X_ref and spec for the kernel model.
      X: bound training set for the nonparametric model.
    """
    gen = make_rng(rng)
    K = dims["k"]
    if K < 1:
        raise ValueError(f"k must be >= 1, got {K}")

    def draw(shape, fan_in):
        s = scale if scale is not None else 1.0 / math.sqrt(fan_in)
        if s < 0:
            raise ValueError(f"scale must be >= 0, got {s}")
        return gen.normal(0.0, 1.0, size=shape) * s

    if kind == "linear":
        d = dims["d"]
        return LinearModel(draw((d, K), d), np.zeros(K))
    if kind == "kernel":
        X_ref = np.asarray(kwargs["X_ref"], dtype=np.float64)
        spec = kwargs.get("spec") or KernelSpec("rbf")
        n_ref = X_ref.shape[0]
        # kernel features are O(1) each and there are n_ref of them, so the
        # logits need a much smaller init than 1/sqrt(fan-in) to start near
        # the uniform responsibilities that gradient ascent escapes cleanly
        s = scale if scale is not None else 1.0 / n_ref
        A = gen.normal(0.0, 1.0, size=(n_ref, K)) * s
        return KernelModel(A, np.zeros(K), X_ref, spec)
    if kind == "mlp":
        d, H = dims["d"], dims.get("hidden", 20)
        if H < 1:
            raise ValueError(f"hidden width must be >= 1, got {H}")
        return MlpModel(draw((d, H), d), np.zeros(H), draw((H, K), H), np.zeros(K))
    if kind == "nonparametric":
        X = np.asarray(kwargs["X"], dtype=np.float64)
        return NonparametricModel(draw((X.shape[0], K), 1), dataset_fingerprint(X))
    raise ValueError(f"unknown model kind {kind!r}")


def load_model(doc) -> ClusterModel:
    """Rebuild a model from its JSON document (string or parsed dict)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    kind = doc["kind"]
    p = {k: np.asarray(v, dtype=np.float64) for k, v in doc["params"].items()}
    if kind == "linear":
        return LinearModel(p["W"], p["b"])
    if kind == "kernel":
        return KernelModel(p["A"], p["b"], np.asarray(doc["X_ref"]), KernelSpec.from_dict(doc["kernel"]))
    if kind == "mlp":
        return MlpModel(p["W1"], p["b1"], p["W2"], p["b2"])
    if kind == "nonparametric":
        return NonparametricModel(p["L"], doc["fingerprint"])
    raise ValueError(f"unknown model kind {kind!r}")
