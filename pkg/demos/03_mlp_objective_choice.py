"""The objective matters more than the architecture.

An MLP head is expressive enough to split the circles, yet trained on plain
mutual information it rarely does: MI is maximized by any confident balanced
partition, and nothing ties that partition to the geometry. The MMD-GEMINI
objective scores clusters by how far their conditional distribution sits
from the data distribution in kernel space, which does reward geometric
structure.
"""

import numpy as np

import miclust as mc
from miclust import TrainConfig

dm = mc.standardize(mc.make_circles(200, noise=0.05, factor=0.1, rng=0))

print("same MLP (20 hidden units), two objectives, seeds 0..4:\n")
print("seed   MI-trained ARI   MMD-GEMINI ARI")
for seed in range(5):
    row = [seed]
    for objective in ("mi", "mmd-gemini"):
        model = mc.init_model("mlp", {"d": 2, "k": 2, "hidden": 20}, rng=seed)
        cfg = TrainConfig(objective=objective, seed=seed)
        report = mc.fit(model, dm.values, cfg)
        row.append(mc.ari(dm.labels, report.labels))
    print(f"  {row[0]}        {row[1]:+.3f}          {row[2]:+.3f}")

print("\nMI finds *a* confident balanced split; MMD-GEMINI finds *the* rings.")
