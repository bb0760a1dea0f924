"""Command-line front end: dataset generation, fitting, boundary grids,
hyperparameter sweeps, and contrastive training.

Exit codes: 0 success, 2 usage error, 3 numeric failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from miclust import baselines, contrastive as contrastive_mod, data as data_mod, metrics as metrics_mod
from miclust.errors import NumericError
from miclust.kernels import KernelSpec, gram
from miclust.models import MlpModel, NonparametricModel, init_model, load_model
from miclust.optim import FitReport, TrainConfig, fit

MODEL_IDS = ("kmeans", "spectral", "linear", "linear-rim", "kernel", "kernel-rim", "mlp", "nonparametric")


def _parse_means(text: str) -> np.ndarray:
    text = text.replace("−", "-")  # tolerate unicode minus
    return np.asarray([[float(v) for v in part.split(",")] for part in text.split(";")])


def _parse_aug(text: str):
    parts = text.split(":")
    if parts[0] == "noise" and len(parts) == 2:
        return contrastive_mod.GaussianNoise(float(parts[1]))
    if parts[0] == "rotation" and len(parts) == 3:
        return contrastive_mod.Rotation2D(float(parts[1]), float(parts[2]))
    raise ValueError(f"bad augmentation spec {text!r}; expected noise:SIGMA or rotation:LO:HI")


def _kernel_spec(args) -> KernelSpec:
    return KernelSpec(getattr(args, "kernel", "rbf") or "rbf", getattr(args, "gamma", None))


def _load_config_file(path: str) -> list[str]:
    """Turn `key = value` lines into leading CLI flags (explicit flags win)."""
    extra = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        extra += [f"--{key.strip().replace('_', '-')}", value.strip()]
    return extra


def _compute_metrics(X: data_mod.DataMatrix, labels: np.ndarray, spec: KernelSpec | None) -> dict:
    out = {}
    if X.labels is not None:
        out["ari"] = metrics_mod.ari(X.labels, labels)
    try:
        out["silhouette"] = metrics_mod.silhouette(X.values, labels)[0]
    except ValueError:
        out["silhouette"] = None
    score_spec = spec if spec is not None else KernelSpec("linear")
    try:
        out["kernel_kmeans_score"] = baselines.kernel_kmeans_score(
            labels, gram(X.values, X.values, score_spec)
        )
    except ValueError:
        out["kernel_kmeans_score"] = None
    return out


def cmd_generate(args) -> int:
    if args.dataset == "circles":
        dm = data_mod.make_circles(args.n, args.noise, args.factor, args.seed)
    else:
        means = _parse_means(args.means)
        dm = data_mod.make_gaussian_blobs(means, args.std, args.count, args.seed)
    if args.standardize:
        dm = data_mod.standardize(dm)
    data_mod.save_csv(dm, args.out)
    print(f"wrote {dm.n} rows to {args.out}")
    return 0


def _fit_gradient_model(args, X: data_mod.DataMatrix):
    spec = _kernel_spec(args)
    objective = args.objective
    model_id = args.model
    if objective is None:
        objective = "rim" if model_id in ("linear", "linear-rim", "kernel", "kernel-rim") else "mi"
    kind = {"linear-rim": "linear", "kernel-rim": "kernel"}.get(model_id, model_id)
    reg = args.reg
    if reg is None:
        # an unregularized linear model drifts to huge weights and an
        # arbitrary cut; the kernel model is well behaved without a penalty
        reg = 0.1 if (objective == "rim" and kind == "linear") else 0.0
    dims = {"d": X.d, "k": args.k, "hidden": args.hidden}
    if kind == "kernel":
        model = init_model("kernel", dims, rng=args.seed, X_ref=X.values, spec=spec)
    elif kind == "nonparametric":
        model = init_model("nonparametric", dims, rng=args.seed, X=X.values)
    else:
        model = init_model(kind, dims, rng=args.seed)
    cfg = TrainConfig(
        epochs=args.epochs,
        learning_rate=args.lr,
        seed=args.seed,
        objective=objective,
        lam=reg,
        kernel=spec if objective == "mmd-gemini" else None,
    )
    report = fit(model, X.values, cfg)
    used_spec = spec if kind == "kernel" or objective == "mmd-gemini" else None
    return report, np.asarray(report.labels), used_spec


def cmd_fit(args) -> int:
    X = data_mod.load_csv(args.data)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.model == "kmeans":
        start = time.perf_counter()
        labels, centroids, inertia = baselines.kmeans(X.values, args.k, n_init=args.n_init, rng=args.seed)
        report = FitReport(
            history=[],
            final_model={"kind": "kmeans", "centroids": centroids.tolist(), "inertia": inertia},
            labels=labels.tolist(),
            config={"model": "kmeans", "k": args.k, "n_init": args.n_init, "seed": args.seed},
            elapsed=time.perf_counter() - start,
        )
        spec = None
    elif args.model == "spectral":
        start = time.perf_counter()
        spec = _kernel_spec(args)
        labels = baselines.spectral(X.values, args.k, spec, rng=args.seed)
        report = FitReport(
            history=[],
            final_model={"kind": "spectral"},
            labels=labels.tolist(),
            config={"model": "spectral", "k": args.k, "seed": args.seed, "kernel": spec.resolve(X.values).to_dict()},
            elapsed=time.perf_counter() - start,
        )
    else:
        report, labels, spec = _fit_gradient_model(args, X)
    report.metrics = _compute_metrics(X, np.asarray(labels), spec)
    (out_dir / "report.json").write_text(report.to_json())
    with open(out_dir / "labels.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "label"])
        for i, lab in enumerate(labels):
            writer.writerow([i, int(lab)])
    if args.history_csv:
        with open(out_dir / "history.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["epoch", "value"])
            for e, v in enumerate(report.history):
                writer.writerow([e, repr(v)])
    for name, value in sorted(report.metrics.items()):
        print(f"{name}: {value}")
    return 0


def cmd_boundary(args) -> int:
    doc = json.loads(Path(args.model).read_text())
    if "kind" not in doc and "model" in doc:
        doc = doc["model"]  # accept a full report.json too
    if doc.get("kind") in ("nonparametric", "spectral"):
        raise ValueError("model does not generalise; cannot draw a decision boundary")
    model = load_model(doc)
    if isinstance(model, NonparametricModel):
        raise ValueError("model does not generalise; cannot draw a decision boundary")
    xs = np.linspace(args.xmin, args.xmax, args.resolution)
    ys = np.linspace(args.ymin, args.ymax, args.resolution)
    gx, gy = np.meshgrid(xs, ys)
    grid = np.column_stack([gx.ravel(), gy.ravel()])
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        if args.critic:
            if not isinstance(model, MlpModel):
                raise ValueError("--critic expects an mlp critic model")
            vals = contrastive_mod.extract_clusters(model, grid)
            writer.writerow(["x0", "x1", "argmax_value"])
            for point, v in zip(grid, vals):
                writer.writerow([repr(point[0]), repr(point[1]), int(v)])
        else:
            P = model.forward(grid)
            writer.writerow(["x0", "x1", "p_cluster2"])
            for point, p in zip(grid, P[:, 1]):
                writer.writerow([repr(point[0]), repr(point[1]), repr(float(p))])
    print(f"wrote {grid.shape[0]} grid rows to {args.out}")
    return 0


def cmd_sweep(args) -> int:
    X = data_mod.load_csv(args.data)
    k_lo, _, k_hi = args.k_range.partition(":")
    ks = list(range(int(k_lo), int(k_hi) + 1))
    seeds = [int(s) for s in args.seeds.split(",")]
    if not ks or not seeds:
        raise ValueError("empty sweep grid")
    rows = []
    for k in ks:
        for seed in seeds:
            sub = argparse.Namespace(**vars(args))
            sub.k, sub.seed = k, seed
            if args.model == "kmeans":
                labels, _, inertia = baselines.kmeans(X.values, k, n_init=args.n_init, rng=seed)
                objective_value = -inertia
                spec = None
            elif args.model == "spectral":
                spec = _kernel_spec(args)
                labels = baselines.spectral(X.values, k, spec, rng=seed)
                objective_value = float("nan")
            else:
                report, labels, spec = _fit_gradient_model(sub, X)
                objective_value = report.history[-1] if report.history else float("nan")
            labels = np.asarray(labels)
            m = _compute_metrics(X, labels, spec)
            shares = np.bincount(labels, minlength=k) / labels.size
            used = int((shares > 1.0 / (10 * k)).sum())
            rows.append(
                {
                    "model": args.model,
                    "k": k,
                    "seed": seed,
                    "ari": m.get("ari"),
                    "silhouette": m.get("silhouette"),
                    "objective": objective_value,
                    "used_clusters": used,
                }
            )
    rows.sort(key=lambda r: (r["model"], r["k"], r["seed"]))
    with open(args.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["model", "k", "seed", "ari", "silhouette", "objective", "used_clusters"])
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {len(rows)} sweep rows to {args.out}")
    return 0


def cmd_contrastive(args) -> int:
    X = data_mod.load_csv(args.data)
    aug = _parse_aug(args.aug)
    critic = contrastive_mod.init_critic(X.d, args.hidden, args.k, rng=args.seed)
    cfg = TrainConfig(epochs=args.epochs, learning_rate=args.lr, seed=args.seed)
    report = contrastive_mod.train_contrastive(critic, X.values, aug, cfg)
    labels = np.asarray(report.labels)
    report.metrics = _compute_metrics(X, labels, None)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(report.to_json())
    for name, value in sorted(report.metrics.items()):
        print(f"{name}: {value}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="miclust", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic dataset CSV")
    gen.add_argument("dataset", choices=["circles", "blobs"])
    gen.add_argument("--n", type=int, default=200)
    gen.add_argument("--noise", type=float, default=0.05)
    gen.add_argument("--factor", type=float, default=0.1)
    gen.add_argument("--means", default="0,0")
    gen.add_argument("--std", type=float, default=1.0)
    gen.add_argument("--count", type=int, default=50)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--standardize", action="store_true")
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_generate)

    def add_fit_flags(p):
        p.add_argument("--data", required=True)
        p.add_argument("--k", type=int, default=2)
        p.add_argument("--kernel", choices=["linear", "rbf"], default="rbf")
        p.add_argument("--gamma", type=float, default=None)
        p.add_argument("--reg", type=float, default=None)
        p.add_argument("--hidden", type=int, default=20)
        p.add_argument("--epochs", type=int, default=1000)
        p.add_argument("--lr", type=float, default=1e-3)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--n-init", type=int, default=10)

    fitp = sub.add_parser("fit", help="fit a clustering model and write a report")
    fitp.add_argument("--model", choices=MODEL_IDS, required=True)
    fitp.add_argument("--objective", choices=["mi", "rim", "mmd-gemini"], default=None)
    add_fit_flags(fitp)
    fitp.add_argument("--out-dir", required=True)
    fitp.add_argument("--history-csv", action="store_true", help="also write history.csv (epoch,value)")
    fitp.set_defaults(func=cmd_fit)

    bnd = sub.add_parser("boundary", help="export a decision-boundary grid CSV")
    bnd.add_argument("--model", required=True, help="model JSON file (or report model section)")
    bnd.add_argument("--critic", action="store_true", help="treat the model as a contrastive critic")
    bnd.add_argument("--xmin", type=float, default=-3.0)
    bnd.add_argument("--xmax", type=float, default=3.0)
    bnd.add_argument("--ymin", type=float, default=-3.0)
    bnd.add_argument("--ymax", type=float, default=3.0)
    bnd.add_argument("--resolution", type=int, default=100)
    bnd.add_argument("--out", required=True)
    bnd.set_defaults(func=cmd_boundary)

    swp = sub.add_parser("sweep", help="run fits across a cluster-count grid and seeds")
    swp.add_argument("--model", choices=MODEL_IDS, required=True)
    swp.add_argument("--objective", choices=["mi", "rim", "mmd-gemini"], default=None)
    add_fit_flags(swp)
    swp.add_argument("--k-range", default="2:6", help="inclusive range LO:HI")
    swp.add_argument("--seeds", default="0")
    swp.add_argument("--out", required=True)
    swp.set_defaults(func=cmd_sweep)

    con = sub.add_parser("contrastive", help="train the contrastive InfoNCE critic")
    con.add_argument("--data", required=True)
    con.add_argument("--aug", required=True, help="rotation:LO:HI or noise:SIGMA")
    con.add_argument("--k", type=int, default=2)
    con.add_argument("--hidden", type=int, default=20)
    con.add_argument("--epochs", type=int, default=5000)
    con.add_argument("--lr", type=float, default=1e-4)
    con.add_argument("--seed", type=int, default=0)
    con.add_argument("--out-dir", required=True)
    con.set_defaults(func=cmd_contrastive)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # a config file provides flag defaults; explicit flags override
    if "--config" in argv:
        i = argv.index("--config")
        path = argv[i + 1]
        argv = argv[:i] + argv[i + 2 :]
        try:
            extra = _load_config_file(path)
        except OSError as exc:
            print(f"error: cannot read config file: {exc}", file=sys.stderr)
            return 4
        argv = argv[:1] + extra + argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
