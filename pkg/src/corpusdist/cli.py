"""Command-line orchestration for the corpus distance experiments.

Four subcommands cover the pipeline end to end:

* ``metrics``   -- score a list of corpus metrics on two embedding files.
* ``simulate``  -- one-axis synthetic perturbation sweep, written as a
  tidy sweep CSV (optionally with per-metric box-plot SVGs).
* ``ksc``       -- known-similarity corpus distance table, from a pair of
  embedding files or the built-in synthetic paired-sample proxy.
* ``classify``  -- distributionality report from a distance table CSV.

Every option can also be supplied through a JSON config file
(``--config``); explicit flags win over the file. Outputs are
deterministic for a fixed configuration and seed. Exit codes: 0 success,
1 internal error, 2 invalid input or configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .distributionality import (
    DEFAULT_GRID,
    KDE_BANDWIDTH_FLOOR,
    classify,
    standardize,
)
from .fileio import (
    DISTANCE_HEADER,
    InputError,
    format_float,
    read_distance_csv,
    read_embeddings_jsonl,
    write_distance_csv,
    write_report_csv,
    write_sweep_csv,
)
from .ksc import distance_table
from .metrics import MetricId, evaluate_metric
from .seeding import derive_seed
from .synth import AWAY_FROM_CENTROID, RANDOM_DIRECTION, MixtureSpec, gen_paired_sample, sweep
from .vectorspace import Corpus

SEED_ENV_VAR = "CORPUSDIST_SEED"

# Child-seed stream tag for the base paired sample of simulate/ksc runs;
# tags 0 and 1 are used inside synth.sweep for per-cell streams.
_STREAM_BASE_SAMPLE = 2

_SIMULATE_METRICS = "ENERGY,AHD,IRPR,FID,PR_2,PR_5,PR_15,DC_2,DC_5,DC_15"
_KSC_METRICS = "ENERGY,AHD,IRPR,FID,PR_5,DC_5"


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"environment variable {SEED_ENV_VAR}={raw!r} is not an integer")


def _parse_metrics(text: str, computable: bool = True) -> list[MetricId]:
    mids = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            mid = MetricId.parse(token)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if computable and not mid.is_builtin:
            raise InputError(
                f"metric {token!r} is not computable here; computable families "
                f"are ENERGY, AHD, IRPR, FID, PR_<k>, DC_<k>"
            )
        mids.append(mid)
    if not mids:
        raise InputError("empty metric list")
    return mids


def _parse_float_list(text: str, what: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise InputError(f"invalid {what}: {text!r} (expected comma-separated numbers)") from None
    if not values:
        raise InputError(f"empty {what}")
    return values


def _merge_config(defaults: dict, args: argparse.Namespace) -> dict:
    """defaults < config file < explicit flags."""
    cfg = dict(defaults)
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                file_cfg = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read config file {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"config file {path} is not valid JSON: {exc.msg}") from None
        if not isinstance(file_cfg, dict):
            raise InputError(f"config file {path} must hold a JSON object")
        for key, value in file_cfg.items():
            if key not in defaults:
                raise InputError(f"config file {path}: unknown option {key!r}")
            cfg[key] = value
    for key in defaults:
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    return cfg


def _resolve_seed(cfg: dict) -> int:
    if cfg.get("seed") is None:
        cfg["seed"] = _default_seed()
    try:
        cfg["seed"] = int(cfg["seed"])
    except (TypeError, ValueError):
        raise InputError(f"seed must be an integer, got {cfg['seed']!r}")
    if cfg["seed"] < 0:
        raise InputError("seed must be >= 0")
    return cfg["seed"]


def _write_boxplot_svgs(groups: dict, xlabel: str, outdir: str):
    """One SVG per metric: boxplots of values against the x positions."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(outdir, exist_ok=True)
    for label, by_x in groups.items():
        xs = sorted(by_x)
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.boxplot([by_x[x] for x in xs], tick_labels=[f"{x:g}" for x in xs])
        ax.set_xlabel(xlabel)
        ax.set_ylabel("distance")
        ax.set_title(label)
        fig.tight_layout()
        fig.savefig(os.path.join(outdir, f"{label}.svg"))
        plt.close(fig)


def _load_pair(path_a: str, path_b: str) -> tuple[Corpus, Corpus]:
    a = read_embeddings_jsonl(path_a)
    b = read_embeddings_jsonl(path_b)
    if a.dim != b.dim:
        raise InputError(
            f"dimension mismatch between {path_a} (q={a.dim}) and {path_b} (q={b.dim})"
        )
    return a, b


def _align_paired(a: Corpus, b: Corpus, path_a: str, path_b: str) -> tuple[Corpus, Corpus]:
    """Check the one-to-one pair_id relation and reorder b to a's order."""
    if len(a) != len(b):
        raise InputError(
            f"paired corpora must have equal size: {path_a} has {len(a)}, {path_b} has {len(b)}"
        )
    for path, corpus in ((path_a, a), (path_b, b)):
        missing = [d.id for d in corpus if d.pair_id is None]
        if missing:
            raise InputError(f"{path}: document {missing[0]!r} has no pair_id")
        pids = [d.pair_id for d in corpus]
        if len(set(pids)) != len(pids):
            raise InputError(f"{path}: duplicate pair_id values")
    index_b = {d.pair_id: i for i, d in enumerate(b)}
    order = []
    for d in a:
        if d.pair_id not in index_b:
            raise InputError(
                f"{path_b}: no document paired with {d.pair_id!r} from {path_a}"
            )
        order.append(index_b[d.pair_id])
    return a, b.take(order)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

_METRICS_DEFAULTS = {
    "metrics": "ENERGY,AHD,IRPR,FID,PR_5,DC_5",
    "doc_metric": "cosine",
    "output": None,
}


def _cmd_metrics(args) -> int:
    cfg = _merge_config(_METRICS_DEFAULTS, args)
    mids = _parse_metrics(cfg["metrics"])
    if cfg["doc_metric"] not in ("cosine", "euclidean"):
        raise InputError(f"unknown document distance {cfg['doc_metric']!r}")
    a, b = _load_pair(args.corpus_a, args.corpus_b)
    rows = []
    for mid in mids:
        try:
            value = evaluate_metric(mid, a, b, cfg["doc_metric"])
        except ValueError as exc:
            raise InputError(str(exc)) from None
        rows.append((mid.name, "" if mid.k is None else str(mid.k), "", "", "", "", format_float(value)))
    meta = {
        "command": "metrics",
        "config": {**cfg, "corpus_a": args.corpus_a, "corpus_b": args.corpus_b, "output": None},
        "seed": None,
    }
    lines = [",".join(DISTANCE_HEADER)] + [",".join(r) for r in rows]
    _emit(cfg["output"], meta, lines)
    return 0


def _emit(output: str | None, meta: dict, lines: list[str]):
    from .fileio import _metadata_line

    text = _metadata_line(meta) + "\n" + "\n".join(lines) + "\n"
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_SIMULATE_DEFAULTS = {
    "axis": "delta",
    "grid": "0,0.5,1,2,3,5",
    "m": 300,
    "q": 2,
    "components": 3,
    "kappa": 1.0,
    "sigma": 0.1,
    "p": 0.1,
    "delta": 3.0,
    "reps": 20,
    "direction": AWAY_FROM_CENTROID,
    "metrics": _SIMULATE_METRICS,
    "doc_metric": "euclidean",
    "seed": None,
    "output": None,
    "svg_dir": None,
}


def _cmd_simulate(args) -> int:
    cfg = _merge_config(_SIMULATE_DEFAULTS, args)
    seed = _resolve_seed(cfg)
    mids = _parse_metrics(cfg["metrics"])
    values = _parse_float_list(str(cfg["grid"]), "grid")
    axis = cfg["axis"]
    if axis not in ("delta", "p", "q"):
        raise InputError(f"axis must be delta, p, or q; got {axis!r}")
    if cfg["doc_metric"] not in ("cosine", "euclidean"):
        raise InputError(f"unknown document distance {cfg['doc_metric']!r}")
    if cfg["direction"] not in (AWAY_FROM_CENTROID, RANDOM_DIRECTION):
        raise InputError(f"unknown direction {cfg['direction']!r}")
    m, q = int(cfg["m"]), int(cfg["q"])
    kappa, sigma = float(cfg["kappa"]), float(cfg["sigma"])
    p, delta, reps = float(cfg["p"]), float(cfg["delta"]), int(cfg["reps"])
    if reps < 1:
        raise InputError(f"reps must be >= 1, got {reps}")
    def moves_points(prop):  # same half-up rounding as the perturbation
        return math.floor(prop * m + 0.5) >= 1

    if axis == "delta" and any(v < 0 for v in values):
        raise InputError("delta grid values must be >= 0")
    if axis == "p" and any(not 0 < v <= 1 or not moves_points(v) for v in values):
        raise InputError("p grid values must be in (0, 1] and move at least one point")
    if axis == "q" and any(v != int(v) or v < 1 for v in values):
        raise InputError("q grid values must be positive integers")
    if axis != "p" and not moves_points(p):
        raise InputError(f"fixed p={p} moves no points at m={m}")

    try:
        mixture = MixtureSpec(q=q, m=m, n_components=int(cfg["components"]), kappa=kappa)
        sample = None
        if axis != "q":
            sample = gen_paired_sample(mixture, sigma, seed=derive_seed(seed, _STREAM_BASE_SAMPLE))
        records = sweep(
            sample,
            axis,
            values,
            metrics=mids,
            reps=reps,
            p=p,
            delta=delta,
            direction=cfg["direction"],
            doc_metric=cfg["doc_metric"],
            mixture=mixture,
            sigma=sigma,
            seed=seed,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None

    if not cfg["output"]:
        raise InputError("simulate requires --output")
    meta = {"command": "simulate", "seed": seed,
            "config": {k: cfg[k] for k in _SIMULATE_DEFAULTS if k not in ("output", "svg_dir")}}
    write_sweep_csv(cfg["output"], records, meta)
    if cfg["svg_dir"]:
        groups: dict = {}
        for r in records:
            groups.setdefault(r.metric.label, {}).setdefault(r.grid_value, []).append(r.value)
        _write_boxplot_svgs(groups, axis, cfg["svg_dir"])
    return 0


_KSC_DEFAULTS = {
    "corpus_a": None,
    "corpus_b": None,
    "synthetic_proxy": False,
    "K": 15,
    "R": 5,
    "n": 50,
    "q": 2,
    "components": 3,
    "kappa": 1.0,
    "sigma": 0.1,
    "metrics": _KSC_METRICS,
    "doc_metric": "default",
    "seed": None,
    "output": None,
    "svg_dir": None,
}


def _cmd_ksc(args) -> int:
    cfg = _merge_config(_KSC_DEFAULTS, args)
    seed = _resolve_seed(cfg)
    mids = _parse_metrics(cfg["metrics"])
    if cfg["doc_metric"] == "default":
        # Cosine suits embedding files; the numeric proxy lives in a plain
        # Euclidean space.
        cfg["doc_metric"] = "euclidean" if cfg["synthetic_proxy"] else "cosine"
    if cfg["doc_metric"] not in ("cosine", "euclidean"):
        raise InputError(f"unknown document distance {cfg['doc_metric']!r}")
    K, R = int(cfg["K"]), int(cfg["R"])
    if K < 1 or R < 1:
        raise InputError(f"need K >= 1 and R >= 1, got K={K}, R={R}")

    if cfg["synthetic_proxy"]:
        if cfg["corpus_a"] or cfg["corpus_b"]:
            raise InputError("--synthetic-proxy cannot be combined with corpus files")
        n, q = int(cfg["n"]), int(cfg["q"])
        try:
            mixture = MixtureSpec(q=q, m=n, n_components=int(cfg["components"]), kappa=float(cfg["kappa"]))
            proxy = gen_paired_sample(mixture, float(cfg["sigma"]),
                                      seed=derive_seed(seed, _STREAM_BASE_SAMPLE))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        a, b = proxy.A, proxy.B
    else:
        if not cfg["corpus_a"] or not cfg["corpus_b"]:
            raise InputError("ksc needs --corpus-a and --corpus-b, or --synthetic-proxy")
        a, b = _load_pair(cfg["corpus_a"], cfg["corpus_b"])
        a, b = _align_paired(a, b, cfg["corpus_a"], cfg["corpus_b"])

    if len(a) < K + 1:
        raise InputError(f"need at least K + 1 = {K + 1} paired documents, got {len(a)}")

    try:
        records = distance_table(a, b, K, R, mids, doc_metric=cfg["doc_metric"], seed=seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None

    if not cfg["output"]:
        raise InputError("ksc requires --output")
    meta = {"command": "ksc", "seed": seed,
            "config": {k: cfg[k] for k in _KSC_DEFAULTS if k not in ("output", "svg_dir")}}
    write_distance_csv(cfg["output"], records, meta)
    if cfg["svg_dir"]:
        groups: dict = {}
        for r in records:
            groups.setdefault(r.metric.label, {}).setdefault(r.ell, []).append(r.value)
        _write_boxplot_svgs(groups, "separation level", cfg["svg_dir"])
    return 0


_CLASSIFY_DEFAULTS = {
    "grid": None,
    "output": None,
}


def _cmd_classify(args) -> int:
    cfg = _merge_config(_CLASSIFY_DEFAULTS, args)
    grid = DEFAULT_GRID
    if cfg["grid"]:
        parts = _parse_float_list(str(cfg["grid"]), "grid")
        if len(parts) != 3 or parts[2] < 1 or not parts[0] < parts[1]:
            raise InputError(f"grid must be 'a,b,c' with a < b and c >= 1, got {cfg['grid']!r}")
        grid = (parts[0], parts[1], int(parts[2]))

    records, source_meta = read_distance_csv(args.table)
    by_metric: dict[MetricId, list] = {}
    for r in records:
        by_metric.setdefault(r.metric, []).append(r)

    energy_id, ahd_id = MetricId("ENERGY"), MetricId("AHD")
    for proto in (energy_id, ahd_id):
        if proto not in by_metric:
            raise InputError(f"{args.table}: missing prototype metric {proto.label} rows")
    candidates = sorted(
        (m for m in by_metric if m not in (energy_id, ahd_id)),
        key=lambda m: m.sort_key,
    )
    if not candidates:
        raise InputError(f"{args.table}: no candidate metrics beyond the prototypes")

    try:
        energy_table = standardize(by_metric[energy_id])
        ahd_table = standardize(by_metric[ahd_id])
        reports = [
            classify(standardize(by_metric[mid]), energy_table, ahd_table, grid)
            for mid in candidates
        ]
    except ValueError as exc:
        raise InputError(str(exc)) from None

    if not cfg["output"]:
        raise InputError("classify requires --output")
    meta = {
        "command": "classify",
        "kernel": "gaussian",
        "bandwidth": f"silverman 0.9*min(std, iqr/1.34)*n^-0.2, floor {KDE_BANDWIDTH_FLOOR:g}",
        "grid": list(grid),
        "seed": source_meta.get("seed"),
        "config": {"table": args.table, "grid": list(grid)},
    }
    write_report_csv(cfg["output"], reports, meta)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corpusdist",
        description="Corpus distance metrics, known-similarity corpus experiments, "
        "and distributionality reports.",
        epilog=f"The default master seed is 0, or the value of ${SEED_ENV_VAR} when set; "
        "an explicit --seed always wins.",
    )
    parser.add_argument("--version", action="version", version=f"corpusdist {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file; explicit flags override it")
        p.add_argument("-o", "--output", help="output CSV path (metrics defaults to stdout)")

    p = sub.add_parser("metrics", help="score corpus metrics on two embedding JSONL files")
    p.add_argument("corpus_a")
    p.add_argument("corpus_b")
    p.add_argument("--metrics", help=f"comma list (default {_METRICS_DEFAULTS['metrics']})")
    p.add_argument("--doc-metric", dest="doc_metric", choices=("cosine", "euclidean"))
    common(p)
    p.set_defaults(run=_cmd_metrics)

    p = sub.add_parser("simulate", help="one-axis synthetic perturbation sweep")
    p.add_argument("--axis", choices=("delta", "p", "q"), help="the single varying parameter")
    p.add_argument("--grid", help="comma list of grid values for the axis")
    p.add_argument("--m", type=int, help="paired sample size (default 300)")
    p.add_argument("--q", type=int, help="sample dimension (default 2)")
    p.add_argument("--components", type=int, help="mixture component count (default 3)")
    p.add_argument("--kappa", type=float, help="component std-dev (default 1)")
    p.add_argument("--sigma", type=float, help="pair jitter std-dev (default 0.1)")
    p.add_argument("--p", type=float, help="fixed moved proportion (default 0.1)")
    p.add_argument("--delta", type=float, help="fixed shift distance (default 3)")
    p.add_argument("--reps", type=int, help="perturbation repetitions per grid value (default 20)")
    p.add_argument("--direction", choices=(AWAY_FROM_CENTROID, RANDOM_DIRECTION))
    p.add_argument("--metrics", help=f"comma list (default {_SIMULATE_METRICS})")
    p.add_argument("--doc-metric", dest="doc_metric", choices=("cosine", "euclidean"),
                   help="document distance (default euclidean for numeric samples)")
    p.add_argument("--seed", type=int)
    p.add_argument("--svg-dir", dest="svg_dir", help="also render per-metric box-plot SVGs here")
    common(p)
    p.set_defaults(run=_cmd_simulate)

    p = sub.add_parser("ksc", help="known-similarity corpus distance table")
    p.add_argument("--corpus-a", dest="corpus_a", help="embedding JSONL for source A")
    p.add_argument("--corpus-b", dest="corpus_b", help="embedding JSONL for source B")
    p.add_argument("--synthetic-proxy", dest="synthetic_proxy", action="store_const", const=True,
                   help="use a synthetic paired sample instead of input files")
    p.add_argument("--K", type=int, help="separation count (default 15)")
    p.add_argument("--R", type=int, help="sampling repetitions (default 5)")
    p.add_argument("--n", type=int, help="proxy paired sample size (default 50)")
    p.add_argument("--q", type=int, help="proxy dimension (default 2)")
    p.add_argument("--components", type=int, help="proxy mixture components (default 3)")
    p.add_argument("--kappa", type=float, help="proxy component std-dev (default 1)")
    p.add_argument("--sigma", type=float, help="proxy pair jitter std-dev (default 0.1)")
    p.add_argument("--metrics", help=f"comma list (default {_KSC_METRICS})")
    p.add_argument("--doc-metric", dest="doc_metric", choices=("cosine", "euclidean"),
                   help="document distance (default cosine for files, euclidean for the proxy)")
    p.add_argument("--seed", type=int)
    p.add_argument("--svg-dir", dest="svg_dir", help="also render per-metric box-plot SVGs here")
    common(p)
    p.set_defaults(run=_cmd_ksc)

    p = sub.add_parser("classify", help="distributionality report from a distance table")
    p.add_argument("table", help="distance CSV produced by the ksc subcommand")
    p.add_argument("--grid", help="density grid as 'a,b,c' (default -8,8,3000)")
    common(p)
    p.set_defaults(run=_cmd_classify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except InputError as exc:
        print(f"corpusdist: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal failure
        print(f"corpusdist: internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
