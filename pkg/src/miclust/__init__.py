"""miclust: discriminative clustering with mutual-information-family objectives.

Train softmax-ended models (linear, kernel, MLP, nonparametric) by gradient
ascent on MI, RIM or MMD-GEMINI, train a contrastive InfoNCE critic with data
augmentations, and evaluate with internal/external clustering metrics.
"""

from miclust.errors import NumericError
from miclust.data import DataMatrix, make_circles, make_gaussian_blobs, standardize
from miclust.kernels import KernelSpec, KernelMatrix, gram, default_gamma
from miclust.models import (
    LinearModel,
    KernelModel,
    MlpModel,
    NonparametricModel,
    init_model,
    load_model,
)
from miclust.objectives import ObjectiveValue, proportions, mi, fairness_firmness, rim, mmd_gemini_ova
from miclust.optim import TrainConfig, FitReport, fit, predict, check_gradients
from miclust.baselines import kmeans, kernel_kmeans_score, spectral
from miclust.metrics import ari, silhouette
from miclust.contrastive import (
    GaussianNoise,
    Rotation2D,
    init_critic,
    augment,
    info_nce_loss,
    train_contrastive,
    extract_clusters,
)


__all__ = [
    "DataMatrix",
    "make_circles",
    "make_gaussian_blobs",
    "standardize",
    "KernelSpec",
    "KernelMatrix",
    "gram",
    "default_gamma",
    "LinearModel",
    "KernelModel",
    "MlpModel",
    "NonparametricModel",
    "init_model",
    "load_model",
    "ObjectiveValue",
    "proportions",
    "mi",
    "fairness_firmness",
    "rim",
    "mmd_gemini_ova",
    "TrainConfig",
    "FitReport",
    "fit",
    "predict",
    "check_gradients",
    "kmeans",
    "kernel_kmeans_score",
    "spectral",
    "ari",
    "silhouette",
    "GaussianNoise",
    "Rotation2D",
    "init_critic",
    "augment",
    "info_nce_loss",
    "train_contrastive",
    "extract_clusters",
    "NumericError",
]
