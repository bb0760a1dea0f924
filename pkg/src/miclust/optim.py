"""Full-batch Adam gradient ascent, fit reports, and a finite-difference checker."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from miclust.data import DataMatrix
from miclust.errors import NumericError
from miclust.kernels import KernelSpec, gram
from miclust.models import ClusterModel
from miclust.objectives import mi, mmd_gemini_ova, rim

OBJECTIVES = ("mi", "rim", "mmd-gemini")


@dataclass
class TrainConfig:
    """Hyperparameters of one training run. Defaults follow the circles setups."""

    epochs: int = 1000
    learning_rate: float = 1e-3
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    seed: int = 0
    objective: str = "mi"
    lam: float = 0.0
    kernel: KernelSpec | None = None

    def __post_init__(self):
        if self.epochs < 0:
            raise ValueError(f"epochs must be >= 0, got {self.epochs}")
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be positive, got {self.learning_rate}")
        if not (0 < self.adam_beta1 < 1 and 0 < self.adam_beta2 < 1):
            raise ValueError("adam betas must lie in (0, 1)")
        if self.adam_eps <= 0:
            raise ValueError("adam_eps must be positive")
        if self.objective not in OBJECTIVES:
            raise ValueError(f"unknown objective {self.objective!r}; expected one of {OBJECTIVES}")
        if self.lam < 0:
            raise ValueError(f"lam must be >= 0, got {self.lam}")

    def to_dict(self) -> dict:
        return {
            "epochs": self.epochs,
            "learning_rate": self.learning_rate,
            "adam_beta1": self.adam_beta1,
            "adam_beta2": self.adam_beta2,
            "adam_eps": self.adam_eps,
            "seed": self.seed,
            "objective": self.objective,
            "lam": self.lam,
            "kernel": self.kernel.to_dict() if self.kernel is not None else None,
        }


@dataclass
class FitReport:
    """Training history, final model, labels, metrics and the echoed config."""

    history: list
    final_model: dict
    labels: list
    config: dict
    elapsed: float
    metrics: dict = field(default_factory=dict)

    def to_json(self) -> str:
        # elapsed is intentionally excluded: identical seeded runs must
        # serialize byte-identically
        return json.dumps(
            {
                "config": self.config,
                "history": self.history,
                "labels": self.labels,
                "metrics": self.metrics,
                "model": self.final_model,
            }
        )


class Adam:
    """Adam over a dict of named parameter arrays, stepping in ascent direction."""

    def __init__(self, params: dict, lr: float, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.params = params
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = {k: np.zeros_like(v) for k, v in params.items()}
        self.v = {k: np.zeros_like(v) for k, v in params.items()}

    def step(self, grads: dict) -> None:
        self.t += 1
        for k, p in self.params.items():
            g = grads[k]
            self.m[k] = self.beta1 * self.m[k] + (1 - self.beta1) * g
            self.v[k] = self.beta2 * self.v[k] + (1 - self.beta2) * g**2
            m_hat = self.m[k] / (1 - self.beta1**self.t)
            v_hat = self.v[k] / (1 - self.beta2**self.t)
            p += self.lr * m_hat / (np.sqrt(v_hat) + self.eps)


def _as_values(X) -> np.ndarray:
    if isinstance(X, DataMatrix):
        return X.values
    return np.asarray(X, dtype=np.float64)


def evaluate_objective(model: ClusterModel, P: np.ndarray, objective: str, lam: float = 0.0, gram_values=None):
    """Evaluate the named objective on the responsibilities of `model`."""
    if objective == "mi":
        return mi(P)
    if objective == "rim":
        return rim(P, {k: model.params[k] for k in model.weight_keys}, lam)
    if objective == "mmd-gemini":
        if gram_values is None:
            raise ValueError("mmd-gemini requires a kernel Gram matrix of the training set")
        return mmd_gemini_ova(P, gram_values)
    raise ValueError(f"unknown objective {objective!r}")


def training_gram(X, cfg: TrainConfig):
    """Training-set Gram for mmd-gemini; None for the other objectives."""
    if cfg.objective != "mmd-gemini":
        return None
    values = _as_values(X)
    spec = (cfg.kernel or KernelSpec("rbf")).resolve(values)
    return gram(values, values, spec)


def fit(model: ClusterModel, X, cfg: TrainConfig) -> FitReport:
    """Full-batch Adam ascent of the configured objective.

    Deterministic given (model init, cfg); raises NumericError when the
    objective turns non-finite.
    """
    values = _as_values(X)
    G = training_gram(values, cfg)
    opt = Adam(model.params, cfg.learning_rate, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps)
    history = []
    start = time.perf_counter()
    for epoch in range(cfg.epochs):
        P = model.forward(values)
        obj = evaluate_objective(model, P, cfg.objective, cfg.lam, G)
        if not np.isfinite(obj.value):
            raise NumericError(f"objective became non-finite at epoch {epoch}: {obj.value}")
        history.append(obj.value)
        grads = model.backward(values, obj.grad_resp)
        for name, extra in obj.grad_params.items():
            grads[name] = grads[name] + extra
        opt.step(grads)
    elapsed = time.perf_counter() - start
    labels = predict(model, values)
    config = dict(cfg.to_dict(), model=model.kind)
    if G is not None:
        config["kernel"] = G.spec.to_dict()
    return FitReport(
        history=history,
        final_model=json.loads(model.to_json()),
        labels=labels.tolist(),
        config=config,
        elapsed=elapsed,
    )


def predict(model: ClusterModel, X) -> np.ndarray:
    """Argmax cluster per sample; ties break toward the lowest index."""
    return np.argmax(model.forward(_as_values(X)), axis=1)


@dataclass
class GradCheckReport:
    max_rel_err: float
    per_param: dict
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_rel_err < self.tol


def check_gradients(
    model: ClusterModel,
    objective: str,
    X,
    h: float = 1e-5,
    tol: float = 1e-4,
    lam: float = 0.0,
    kernel: KernelSpec | None = None,
) -> GradCheckReport:
    """Central finite differences over every parameter of the model.

    Intended for small n; cost is two objective evaluations per scalar
    parameter.
    """
    values = _as_values(X)
    G = None
    if objective == "mmd-gemini":
        spec = (kernel or KernelSpec("rbf")).resolve(values)
        G = gram(values, values, spec)

    def total(m):
        obj = evaluate_objective(m, m.forward(values), objective, lam, G)
        return obj.value

    P = model.forward(values)
    obj = evaluate_objective(model, P, objective, lam, G)
    analytic = model.backward(values, obj.grad_resp)
    for name, extra in obj.grad_params.items():
        analytic[name] = analytic[name] + extra

    max_rel = 0.0
    per_param = {}
    for name, arr in model.params.items():
        numeric = np.zeros(arr.size)
        for i in range(arr.size):
            orig = arr.flat[i]
            arr.flat[i] = orig + h
            up = total(model)
            arr.flat[i] = orig - h
            down = total(model)
            arr.flat[i] = orig
            numeric[i] = (up - down) / (2 * h)
        numeric = numeric.reshape(arr.shape)
        a = np.asarray(analytic[name], dtype=np.float64)
        denom = np.maximum(np.maximum(np.abs(a), np.abs(numeric)), 1e-8)
        rel = float(np.max(np.abs(a - numeric) / denom)) if a.size else 0.0
        per_param[name] = rel
        max_rel = max(max_rel, rel)
    return GradCheckReport(max_rel, per_param, tol)
