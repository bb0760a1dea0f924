"""Contrastive clustering: the augmentation choice encodes the invariance.

An InfoNCE critic is trained to match each point with its own augmented
copy against the rest of the batch. With a random-rotation augmentation the
only thing a point shares with its copy is its radius, so the critic learns
a radial representation and the rings fall out of its argmax. With additive
noise of the rings' scale, the "positive" pair shares almost nothing and no
usable structure emerges.
"""

import numpy as np

import miclust as mc
from miclust import TrainConfig

dm = mc.standardize(mc.make_circles(200, noise=0.05, factor=0.1, rng=0))
cfg = TrainConfig(epochs=5000, learning_rate=1e-4, seed=0)

for aug in (mc.Rotation2D(0.0, 2 * np.pi), mc.GaussianNoise(1.0)):
    critic = mc.init_critic(2, hidden=20, k=2, rng=0)
    report = mc.train_contrastive(critic, dm.values, aug, cfg)
    a = mc.ari(dm.labels, report.labels)
    print(f"augmentation {aug.describe():<20} final loss {report.history[-1]:8.3f}   ARI = {a:+.3f}")

print("\nrotation preserves exactly the feature that separates the rings;")
print("unit-scale noise destroys it, and the clusters are arbitrary.")
