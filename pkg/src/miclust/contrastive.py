"""Contrastive clustering: augmentations, the diagonal-softmax InfoNCE loss,
and a training loop for a cosine critic.

The critic is a plain MlpModel consumed through its raw logits; there is no
terminal softmax, and the final outputs are not clustering probabilities.
Clusters are extracted as the per-sample argmax of the critic outputs.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from miclust.data import DataMatrix, make_rng
from miclust.errors import NumericError
from miclust.models import MlpModel
from miclust.optim import Adam, FitReport, TrainConfig


@dataclass(frozen=True)
class GaussianNoise:
    """Adds i.i.d. N(0, sigma^2) per entry."""

    sigma: float

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")

    def describe(self) -> str:
        return f"noise:{self.sigma}"


@dataclass(frozen=True)
class Rotation2D:
    """Rotates the whole batch about the origin by one shared random angle."""

    lo: float = 0.0
    hi: float = 2 * np.pi

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"angle range is empty: [{self.lo}, {self.hi}]")

    def describe(self) -> str:
        return f"rotation:{self.lo}:{self.hi}"


def init_critic(d: int, hidden: int = 20, k: int = 2, rng=0) -> MlpModel:
    """Default critic initialization.

    Weights and biases are drawn uniformly from +-1.5/sqrt(fan-in). The
    InfoNCE loss is invariant to rotations of the output space, so the
    orientation the representation settles into is fixed by the init; a
    uniform draw with nonzero biases spreads those orientations well, where
    zero-bias gaussian inits concentrate them near the axes.
    """
    if d < 1 or hidden < 1 or k < 1:
        raise ValueError("d, hidden and k must all be >= 1")
    gen = make_rng(rng)
    b1 = 1.5 / np.sqrt(d)
    b2 = 1.5 / np.sqrt(hidden)
    return MlpModel(
        gen.uniform(-b1, b1, (d, hidden)),
        gen.uniform(-b1, b1, hidden),
        gen.uniform(-b2, b2, (hidden, k)),
        gen.uniform(-b2, b2, k),
    )


def augment(X: np.ndarray, aug, rng) -> np.ndarray:
    """Apply one random draw of the augmentation to every row."""
    X = np.asarray(X, dtype=np.float64)
    gen = make_rng(rng)
    if isinstance(aug, GaussianNoise):
        return X + aug.sigma * gen.normal(0.0, 1.0, size=X.shape)
    if isinstance(aug, Rotation2D):
        if X.shape[1] != 2:
            raise ValueError(f"rotation2d requires d=2, got d={X.shape[1]}")
        theta = gen.uniform(aug.lo, aug.hi)
        c, s = np.cos(theta), np.sin(theta)
        rot = np.array([[c, -s], [s, c]])
        return X @ rot.T
    raise ValueError(f"unknown augmentation {aug!r}")


def info_nce_loss(Z: np.ndarray, Z_aug: np.ndarray):
    """Diagonal-softmax InfoNCE on cosine similarities.

    Rows of both representation matrices are l2-normalized, similarities
    S = Zhat @ Zhat_aug^T are softmaxed down each column, and the loss is
    the negated sum of the diagonal. The gradient flows through Z only;
    Z_aug is treated as a constant (stop-gradient on the augmented branch).
    """
    Z = np.asarray(Z, dtype=np.float64)
    Z_aug = np.asarray(Z_aug, dtype=np.float64)
    if Z.shape != Z_aug.shape:
        raise ValueError(f"shape mismatch: {Z.shape} vs {Z_aug.shape}")
    norms = np.linalg.norm(Z, axis=1, keepdims=True)
    norms_aug = np.linalg.norm(Z_aug, axis=1, keepdims=True)
    if np.any(norms == 0) or np.any(norms_aug == 0):
        raise ValueError("zero-norm representation row; cosine similarity undefined")
    Zh = Z / norms
    Zah = Z_aug / norms_aug
    S = Zh @ Zah.T
    # softmax down each column
    e = np.exp(S - S.max(axis=0, keepdims=True))
    T = e / e.sum(axis=0, keepdims=True)
    diag = np.diag(T)
    loss = -float(diag.sum())
    # d loss / d S_ij = T_ij * T_jj - delta_ij * T_jj
    dS = T * diag[None, :]
    dS[np.arange(Z.shape[0]), np.arange(Z.shape[0])] -= diag
    g = dS @ Zah
    # back through the row normalization of Z
    dZ = (g - (g * Zh).sum(axis=1, keepdims=True) * Zh) / norms
    return loss, dZ


def train_contrastive(critic: MlpModel, X, aug, cfg: TrainConfig) -> FitReport:
    """Contrastive training loop: one augmentation draw per epoch,
    stop-gradient on the augmented branch, full-batch Adam on the loss."""
    values = X.values if isinstance(X, DataMatrix) else np.asarray(X, dtype=np.float64)
    gen = make_rng(cfg.seed)
    opt = Adam(critic.params, cfg.learning_rate, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps)
    history = []
    start = time.perf_counter()
    for epoch in range(cfg.epochs):
        X_aug = augment(values, aug, gen)
        Z = critic.logits(values)
        Z_aug = critic.logits(X_aug)
        loss, dZ = info_nce_loss(Z, Z_aug)
        if not np.isfinite(loss):
            raise NumericError(f"contrastive loss became non-finite at epoch {epoch}")
        history.append(loss)
        grads = critic.backward_from_logits(values, -dZ)  # ascend the negated loss
        opt.step(grads)
    elapsed = time.perf_counter() - start
    labels = extract_clusters(critic, values)
    config = dict(cfg.to_dict(), model="critic", augmentation=aug.describe())
    return FitReport(
        history=history,
        final_model=json.loads(critic.to_json()),
        labels=labels.tolist(),
        config=config,
        elapsed=elapsed,
    )


def extract_clusters(critic: MlpModel, X) -> np.ndarray:
    """Per-row argmax of the raw critic outputs; ties go to the lowest index."""
    values = X.values if isinstance(X, DataMatrix) else np.asarray(X, dtype=np.float64)
    return np.argmax(critic.logits(values), axis=1)
