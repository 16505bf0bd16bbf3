"""Command-line pipeline: synth, train, cluster, grid, heatmap, pipeline.

Every command is deterministic given its flags and seed. Exit codes:
0 success, 2 flag/config errors, 3 I/O or file-format errors, 4 numeric
failures inside the solver.
"""

import argparse
import dataclasses
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .clustering import build_affinity, ncut_cluster
from .config import ConfigError, SolverConfig, load_config
from .matrixio import (
    MatrixIOError,
    format_value,
    read_labels,
    read_matrix,
    write_labels,
    write_matrix,
)
from .metrics import evaluate
from .network import save_model, train_network
from .solver import NumericalError
from .synth import SynthSpec, block_diagonal_score, generate_subspaces

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERIC = 4

_CONFIG_FLAGS = {
    "layers": int,
    "alpha": float,
    "lambda1": float,
    "rho": float,
    "mu0": float,
    "mu_max": float,
    "eta": float,
    "eps": float,
    "max_iter": int,
    "seed": int,
    "clusters": int,
    "kmeans_restarts": int,
}


@dataclass
class PipelineRun:
    """Record of one pipeline invocation for the manifest."""

    config: SolverConfig
    input_paths: list
    out_dir: Path
    layer_reports: list
    timings_ms: dict
    repeat: int


def _add_config_flags(parser):
    group = parser.add_argument_group("solver configuration")
    group.add_argument("--config", help="key = value config file; flags override")
    for name, kind in _CONFIG_FLAGS.items():
        group.add_argument(f"--{name.replace('_', '-')}", type=kind,
                           default=None, dest=name)


def _build_config(args):
    cfg = SolverConfig()
    if getattr(args, "config", None):
        cfg = load_config(args.config, base=cfg)
    overrides = {name: getattr(args, name) for name in _CONFIG_FLAGS
                 if getattr(args, name, None) is not None}
    return cfg.replace(**overrides).validate()


def _float_list(text):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad float list {text!r}") from None


def _int_list(text):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad int list {text!r}") from None


def _matrix_name(fmt):
    return "X.dlrm" if fmt == "binary" else "X.csv"


def write_pgm(m, path):
    """Binary PGM (P5, maxval 255): pixel = round(255 * |m| / max|m|)."""
    m = np.abs(np.asarray(m, dtype=np.float64))
    peak = m.max()
    if peak == 0:
        pixels = np.zeros(m.shape, dtype=np.uint8)
    else:
        pixels = np.rint(255.0 * m / peak).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{m.shape[1]} {m.shape[0]}\n255\n".encode("ascii"))
        fh.write(pixels.tobytes(order="C"))


def _write_history(state, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write("iter,residual_inf,objective,mu\n")
        for i in range(state.iterations):
            fh.write(",".join([
                str(i + 1),
                format_value(state.residual_history[i]),
                format_value(state.objective_history[i]),
                format_value(state.mu_history[i]),
            ]) + "\n")


def _synth_spec(args):
    spec = SynthSpec(
        ambient_dim=args.ambient_dim,
        subspace_dim=args.subspace_dim,
        n_subspaces=args.n_subspaces,
        samples_per_subspace=args.samples_per_subspace,
        noise_variance=args.noise_variance,
        seed=args.seed if args.seed is not None else 0,
    )
    try:
        spec.validate()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return spec


def cmd_synth(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    X, labels = generate_subspaces(_synth_spec(args))
    matrix_path = out / _matrix_name(args.format)
    write_matrix(X, matrix_path, args.format)
    write_labels(labels, out / "labels.txt")
    print(f"wrote {matrix_path} ({X.shape[0]}x{X.shape[1]}) and labels.txt")


def cmd_train(args):
    cfg = _build_config(args)
    X = read_matrix(args.input, args.format)
    model = train_network(X, cfg)
    out = Path(args.out)
    save_model(model, out)
    for l, state in enumerate(model.states, start=1):
        _write_history(state, out / f"layer{l}_history.csv")
        flag = "converged" if state.converged else "NOT converged"
        print(f"layer {l}: {state.iterations} iterations, "
              f"final residual {state.residual_history[-1]:.3e} ({flag})")
    print(f"model saved to {out}")


def _cluster_layer(model_dir, cfg, layer, seed, truth_path, out):
    if not 1 <= layer <= cfg.layers:
        raise ConfigError(f"layer must be in 1..{cfg.layers}, got {layer}")
    Z = read_matrix(Path(model_dir) / f"Z_{layer}.dlrm", "binary")
    result = ncut_cluster(Z, cfg.clusters, seed, cfg.kmeans_restarts)
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    write_labels(result.labels, out / "pred_labels.txt")
    if truth_path is None:
        return result, None
    truth = read_labels(truth_path)
    report = evaluate(truth, result.labels)
    block = block_diagonal_score(result.affinity, truth)
    with open(out / "metrics.csv", "w", encoding="ascii") as fh:
        fh.write("acc,nmi,f_score,block_score\n")
        fh.write(",".join(format_value(v) for v in
                          (report.acc, report.nmi, report.f_score, block)) + "\n")
    return result, report


def cmd_cluster(args):
    model_dir = Path(args.model)
    cfg = load_config(model_dir / "model.cfg")
    overrides = {name: getattr(args, name) for name in ("clusters", "seed", "kmeans_restarts")
                 if getattr(args, name, None) is not None}
    cfg = cfg.replace(**overrides).validate()
    layer = args.layer if args.layer is not None else cfg.layers
    _, report = _cluster_layer(model_dir, cfg, layer, cfg.seed, args.truth, args.out)
    if report is not None:
        print(f"acc={report.acc:.4f} nmi={report.nmi:.4f} f_score={report.f_score:.4f}")
    print(f"labels written to {Path(args.out) / 'pred_labels.txt'}")


def _summary(values):
    return float(np.mean(values)), float(np.std(values))


def cmd_grid(args):
    cfg = _build_config(args)
    X = read_matrix(args.input, args.format)
    truth = read_labels(args.truth)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for lam1 in args.lambda1_grid:
        for alpha in args.alpha_grid:
            for rho in args.rho_grid:
                for layers in args.layers_grid:
                    cell = {"lambda1": lam1, "alpha": alpha, "rho": rho,
                            "layers": layers}
                    try:
                        rows.append(_grid_cell(X, truth, cfg, cell, args.repeat))
                    except (ConfigError, NumericalError, ValueError) as exc:
                        rows.append({**cell, "status": f"failed: {exc}"})
    path = out / "grid_results.csv"
    _write_grid_csv(rows, path)
    print(f"grid results written to {path}")


def _grid_cell(X, truth, base, cell, repeat):
    cfg = base.replace(**cell).validate()
    model = train_network(X, cfg)
    scores = {"acc": [], "nmi": [], "f_score": [], "block_score": []}
    for r in range(repeat):
        result = ncut_cluster(model.layers[-1].Z, cfg.clusters,
                              cfg.seed + r, cfg.kmeans_restarts)
        report = evaluate(truth, result.labels)
        scores["acc"].append(report.acc)
        scores["nmi"].append(report.nmi)
        scores["f_score"].append(report.f_score)
        scores["block_score"].append(block_diagonal_score(result.affinity, truth))
    row = {**cell, "status": "ok"}
    for name, values in scores.items():
        mean, std = _summary(values)
        row[f"{name}_mean"] = mean
        row[f"{name}_std"] = std
    return row


_GRID_COLUMNS = ["lambda1", "alpha", "rho", "layers", "status",
                 "acc_mean", "acc_std", "nmi_mean", "nmi_std",
                 "f_score_mean", "f_score_std", "block_score_mean",
                 "block_score_std"]


def _write_grid_csv(rows, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(",".join(_GRID_COLUMNS) + "\n")
        for row in rows:
            rendered = []
            for col in _GRID_COLUMNS:
                value = row.get(col, "")
                if isinstance(value, float):
                    value = format_value(value)
                rendered.append(str(value).replace(",", ";"))
            fh.write(",".join(rendered) + "\n")


def cmd_heatmap(args):
    m = read_matrix(args.input, args.format)
    write_pgm(m, args.out)
    print(f"heatmap written to {args.out}")


def cmd_pipeline(args):
    cfg = _build_config(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    timings = {}
    artifacts = []

    def _stage(name, fn):
        start = time.perf_counter()
        try:
            value = fn()
        except Exception as exc:
            print(f"pipeline aborted at stage {name!r}: {exc}", file=sys.stderr)
            raise
        timings[name] = (time.perf_counter() - start) * 1000.0
        return value

    def _synth():
        X, labels = generate_subspaces(_synth_spec(args))
        matrix_path = out / _matrix_name(args.format)
        write_matrix(X, matrix_path, args.format)
        write_labels(labels, out / "labels.txt")
        artifacts.extend([matrix_path, out / "labels.txt"])
        return X, labels

    X, truth = _stage("synth", _synth)

    def _train():
        model = train_network(X, cfg)
        model_dir = out / "model"
        save_model(model, model_dir)
        for l in range(1, model.depth + 1):
            artifacts.extend([model_dir / f"{part}_{l}.dlrm" for part in "ZPE"])
            history = out / f"layer{l}_history.csv"
            _write_history(model.states[l - 1], history)
            artifacts.append(history)
        artifacts.append(model_dir / "model.cfg")
        return model

    model = _stage("train", _train)

    repeat = args.repeat
    layer_rows = []

    def _cluster_eval():
        for l in range(1, model.depth + 1):
            Z = model.layers[l - 1].Z
            per_metric = {"acc": [], "nmi": [], "f_score": [], "block_score": []}
            for r in range(repeat):
                result = ncut_cluster(Z, cfg.clusters, cfg.seed + r,
                                      cfg.kmeans_restarts)
                report = evaluate(truth, result.labels)
                per_metric["acc"].append(report.acc)
                per_metric["nmi"].append(report.nmi)
                per_metric["f_score"].append(report.f_score)
                per_metric["block_score"].append(
                    block_diagonal_score(result.affinity, truth))
                if l == model.depth and r == 0:
                    write_labels(result.labels, out / "pred_labels.txt")
            layer_rows.append({name: _summary(values)
                               for name, values in per_metric.items()})
        artifacts.append(out / "pred_labels.txt")
        with open(out / "metrics.csv", "w", encoding="ascii") as fh:
            fh.write("layer,metric,mean,std\n")
            for l, row in enumerate(layer_rows, start=1):
                for name, (mean, std) in row.items():
                    fh.write(f"{l},{name},{format_value(mean)},{format_value(std)}\n")
        artifacts.append(out / "metrics.csv")

    _stage("cluster", _cluster_eval)

    def _heatmap():
        write_pgm(build_affinity(model.layers[-1].Z), out / "affinity.pgm")
        artifacts.append(out / "affinity.pgm")

    _stage("heatmap", _heatmap)

    run = PipelineRun(config=cfg,
                      input_paths=[str(out / _matrix_name(args.format)),
                                   str(out / "labels.txt")],
                      out_dir=out, layer_reports=layer_rows,
                      timings_ms=timings, repeat=repeat)
    manifest = {
        "command": "pipeline",
        "out_dir": str(out),
        "repeat": run.repeat,
        "config": dataclasses.asdict(cfg),
        "artifacts": sorted(
            ({"path": str(p.relative_to(out)), "bytes": p.stat().st_size}
             for p in artifacts), key=lambda item: item["path"]),
        "timings_ms": run.timings_ms,
    }
    with open(out / "manifest.json", "w", encoding="ascii") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    deepest = layer_rows[-1]
    print(f"pipeline finished: acc={deepest['acc'][0]:.4f} "
          f"nmi={deepest['nmi'][0]:.4f} over {repeat} repetition(s)")
    print(f"manifest written to {out / 'manifest.json'}")


def _add_synth_flags(parser):
    group = parser.add_argument_group("synthetic data")
    group.add_argument("--ambient-dim", type=int, default=200)
    group.add_argument("--subspace-dim", type=int, default=10)
    group.add_argument("--n-subspaces", type=int, default=10)
    group.add_argument("--samples-per-subspace", type=int, default=9)
    group.add_argument("--noise-variance", type=float, default=0.1)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="deeplrr",
        description="Deep low-rank subspace discovery and clustering pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate the synthetic multi-subspace dataset")
    _add_synth_flags(p)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=("csv", "binary"), default="binary")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("train", help="train the layer stack on a data matrix")
    p.add_argument("--input", required=True, help="data matrix path")
    p.add_argument("--format", choices=("csv", "binary"), default=None)
    p.add_argument("--out", required=True, help="model output directory")
    _add_config_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("cluster", help="cluster a trained model's coefficients")
    p.add_argument("--model", required=True, help="model directory")
    p.add_argument("--layer", type=int, default=None,
                   help="1-based layer index (default: deepest)")
    p.add_argument("--truth", default=None, help="ground-truth label file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--clusters", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--kmeans-restarts", type=int, default=None, dest="kmeans_restarts")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("grid", help="Cartesian parameter sweep with metrics")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("csv", "binary"), default=None)
    p.add_argument("--truth", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--lambda1-grid", type=_float_list, default=[SolverConfig.lambda1])
    p.add_argument("--alpha-grid", type=_float_list, default=[SolverConfig.alpha])
    p.add_argument("--rho-grid", type=_float_list, default=[SolverConfig.rho])
    p.add_argument("--layers-grid", type=_int_list, default=[SolverConfig.layers])
    p.add_argument("--repeat", type=int, default=1)
    _add_config_flags(p)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("heatmap", help="emit a grayscale PGM of |matrix|")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("csv", "binary"), default=None)
    p.add_argument("--out", required=True, help="output .pgm path")
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser("pipeline", help="synth + train + cluster + eval + heatmap")
    _add_synth_flags(p)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "binary"), default="binary")
    p.add_argument("--repeat", type=int, default=1)
    _add_config_flags(p)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
        return EXIT_OK
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MatrixIOError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
