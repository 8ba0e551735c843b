"""Command-line pipeline: ingest, profile, build, solve, select, bench.

Exit status contract: 0 on success, 2 for usage problems (bad flags,
missing required options, unknown config keys), 3 for data problems (files
that cannot be read or violate their format), 4 when a solver guard refuses
the problem.

Every option can also be supplied through a JSON config file given with
``--config``; explicit flags override file values, which override the
built-in defaults.  Persisted artifacts never embed timestamps or measured
runtimes, so rerunning a command on identical inputs rewrites every file
byte for byte; wall-clock figures only appear on the console.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from types import SimpleNamespace

from .classify import compare_feature_sets, train_test_split
from .constraints import cardinality_equals, suggest_penalty
from .correlation import correlation_profile
from .dataset import ingest_csv_with_report
from .errors import DataError, SolverGuardError
from .model import QuboModel
from .preprocess import encode_categorical_with_maps, normalize
from .selection import build_qubo
from .serialize import dump_document, load_document, render_table
from .solvers import SOLVERS, SolveParams, compare_solvers, render_comparison_table, solve

_SOLVER_DEFAULTS = {
    "solver": "simulated_annealing",
    "seed": 0,
    "sweeps": 1000,
    "restarts": 10,
    "t_initial": None,
    "t_final": 1e-3,
}

DEFAULTS = {
    "ingest": {"delimiter": ",", "out": "qubokit-out"},
    "profile": {"delimiter": ",", "out": "qubokit-out"},
    "build": {
        "delimiter": ",",
        "out": "qubokit-out",
        "alpha": 0.5,
        "signed": False,
        "cardinality": None,
        "penalty": None,
    },
    "solve": {"out": "qubokit-out", **_SOLVER_DEFAULTS},
    "bench": {"out": "qubokit-out", **{k: v for k, v in _SOLVER_DEFAULTS.items() if k != "solver"}},
    "select": {
        "delimiter": ",",
        "out": "qubokit-out",
        "alpha": 0.5,
        "signed": False,
        "cardinality": None,
        "penalty": None,
        "split_ratio": 0.7,
        "split_seed": 0,
        **_SOLVER_DEFAULTS,
    },
}

REQUIRED = {
    "ingest": ("input", "target"),
    "profile": ("input", "target"),
    "build": ("input", "target"),
    "solve": ("model",),
    "bench": ("model",),
    "select": ("input", "target"),
}


class _UsageError(Exception):
    pass


def _add_io_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", help="path to the delimited input file")
    parser.add_argument("--target", help="name of the binary target column")
    parser.add_argument("--delimiter", help="field delimiter (default ,)")


def _add_objective_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, help="reward/redundancy trade-off in [0, 1]")
    parser.add_argument(
        "--signed",
        action="store_true",
        default=argparse.SUPPRESS,
        help="use signed correlations instead of absolute values",
    )
    parser.add_argument("--cardinality", type=int, help="constrain the subset to exactly k features")
    parser.add_argument("--penalty", type=float, help="penalty weight for the cardinality constraint")


def _add_solver_options(parser: argparse.ArgumentParser, with_name: bool = True) -> None:
    if with_name:
        parser.add_argument("--solver", help="registered solver name")
    parser.add_argument("--seed", type=int, help="base seed; restart r uses seed XOR r")
    parser.add_argument("--sweeps", type=int, help="full passes per restart")
    parser.add_argument("--restarts", type=int, help="independent restarts")
    parser.add_argument("--t-initial", dest="t_initial", type=float, help="starting temperature")
    parser.add_argument("--t-final", dest="t_final", type=float, help="final temperature")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubokit",
        description="Correlation-driven QUBO feature selection pipeline.",
        epilog="exit status: 0 ok, 2 usage error, 3 data error, 4 solver guard",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    specs = {
        "ingest": "parse and encode a dataset, writing the audit report",
        "profile": "compute rank correlations of features and target",
        "build": "build the feature-selection model from a dataset",
        "solve": "run one solver on a serialized model",
        "select": "full pipeline: ingest, build, solve, evaluate",
        "bench": "run every registered solver on a serialized model",
    }
    parsers = {}
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text, argument_default=argparse.SUPPRESS)
        p.add_argument("--out", help="directory for artifacts (default qubokit-out)")
        p.add_argument("--config", help="JSON file with option defaults")
        parsers[name] = p

    for name in ("ingest", "profile", "build", "select"):
        _add_io_options(parsers[name])
    for name in ("build", "select"):
        _add_objective_options(parsers[name])
    for name in ("solve", "bench"):
        parsers[name].add_argument("--model", help="path to a serialized model document")
    _add_solver_options(parsers["solve"])
    _add_solver_options(parsers["bench"], with_name=False)
    _add_solver_options(parsers["select"])
    parsers["select"].add_argument("--split-ratio", dest="split_ratio", type=float, help="train fraction")
    parsers["select"].add_argument("--split-seed", dest="split_seed", type=int, help="split seed")
    return parser


def _merge_config(command: str, ns: argparse.Namespace) -> SimpleNamespace:
    given = {k: v for k, v in vars(ns).items() if k not in ("command", "config")}
    merged = dict(DEFAULTS[command])
    config_path = getattr(ns, "config", None)
    if config_path:
        try:
            raw = Path(config_path).read_text()
            file_values = json.loads(raw)
        except OSError as exc:
            raise DataError(f"cannot read config {config_path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise DataError(f"config {config_path} is not valid JSON: {exc}") from exc
        if not isinstance(file_values, dict):
            raise DataError(f"config {config_path} must hold a JSON object")
        allowed = set(merged) | set(REQUIRED[command])
        unknown = sorted(set(file_values) - allowed)
        if unknown:
            raise _UsageError(f"unknown config keys for {command}: {', '.join(unknown)}")
        merged.update(file_values)
    merged.update(given)
    missing = [k for k in REQUIRED[command] if not merged.get(k)]
    if missing:
        raise _UsageError(f"{command} requires: {', '.join('--' + m for m in missing)}")
    if "solver" in merged and merged["solver"] not in SOLVERS:
        raise _UsageError(f"unknown solver {merged['solver']!r}; registered: {sorted(SOLVERS)}")
    return SimpleNamespace(**merged)


def _out_dir(cfg: SimpleNamespace) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _ingest_encoded(cfg: SimpleNamespace):
    ds, report = ingest_csv_with_report(cfg.input, cfg.target, cfg.delimiter)
    encoded, mappings = encode_categorical_with_maps(ds)
    return encoded, report.with_encodings(mappings)


def _write_ingest_artifacts(out: Path, encoded, report) -> None:
    dump_document(encoded.to_dict(), out / "dataset.json")
    dump_document(report.to_dict(), out / "ingest_report.json")


def _solve_params(cfg: SimpleNamespace) -> SolveParams:
    return SolveParams(
        seed=cfg.seed,
        sweeps=cfg.sweeps,
        restarts=cfg.restarts,
        t_initial=cfg.t_initial,
        t_final=cfg.t_final,
    )


def _build_model(profile, cfg: SimpleNamespace) -> tuple[QuboModel, float | None]:
    model = build_qubo(profile, cfg.alpha, use_absolute=not cfg.signed)
    weight = None
    if cfg.cardinality is not None:
        weight = cfg.penalty if cfg.penalty is not None else suggest_penalty(model)
        model = cardinality_equals(model, cfg.cardinality, weight)
    return model, weight


def cmd_ingest(cfg: SimpleNamespace) -> int:
    out = _out_dir(cfg)
    encoded, report = _ingest_encoded(cfg)
    _write_ingest_artifacts(out, encoded, report)
    kinds = report.kinds
    print(f"ingested {report.rows} rows x {report.n_features} features from {cfg.input}")
    print(f"target {report.target_column!r} mapped as {report.target_mapping}")
    n_cat = sum(1 for k in kinds.values() if k == "categorical")
    print(f"columns: {report.n_features - n_cat} numeric, {n_cat} categorical")
    for note in report.warnings:
        print(f"note: {note}")
    print(f"artifacts written to {out}")
    return 0


def cmd_profile(cfg: SimpleNamespace) -> int:
    out = _out_dir(cfg)
    encoded, report = _ingest_encoded(cfg)
    _write_ingest_artifacts(out, encoded, report)
    profile = correlation_profile(normalize(encoded))
    dump_document({"features": list(encoded.names), **profile.to_dict()}, out / "profile.json")
    rows = [
        [name, f"{rho:+.4f}"]
        for name, rho in sorted(
            zip(encoded.names, profile.target_corr), key=lambda nr: -abs(nr[1])
        )
    ]
    print(render_table(["feature", "target corr"], rows), end="")
    print(f"artifacts written to {out}")
    return 0


def cmd_build(cfg: SimpleNamespace) -> int:
    out = _out_dir(cfg)
    encoded, report = _ingest_encoded(cfg)
    _write_ingest_artifacts(out, encoded, report)
    profile = correlation_profile(normalize(encoded))
    dump_document({"features": list(encoded.names), **profile.to_dict()}, out / "profile.json")
    model, weight = _build_model(profile, cfg)
    dump_document(model.to_dict(), out / "qubo.json")
    dump_document(
        {
            "alpha": cfg.alpha,
            "use_absolute": not cfg.signed,
            "cardinality": cfg.cardinality,
            "penalty": weight,
        },
        out / "build.json",
    )
    print(f"built model over {model.n} variables (alpha={cfg.alpha}, absolute={not cfg.signed})")
    if cfg.cardinality is not None:
        print(f"cardinality constraint k={cfg.cardinality} with penalty {weight}")
    print(f"artifacts written to {out}")
    return 0


def cmd_solve(cfg: SimpleNamespace) -> int:
    out = _out_dir(cfg)
    model = QuboModel.from_dict(load_document(cfg.model))
    params = _solve_params(cfg)
    result = solve(model, cfg.solver, params)
    dump_document(
        {
            **result.to_dict(),
            "params": {
                "seed": cfg.seed,
                "sweeps": cfg.sweeps,
                "restarts": cfg.restarts,
                "t_initial": cfg.t_initial,
                "t_final": cfg.t_final,
            },
        },
        out / "solve.json",
    )
    print(f"{result.solver}: best energy {result.best_energy:.6f}, {result.selected_count} variables set")
    print(f"prep {result.prep_seconds:.3f} s, optimization {result.solve_seconds:.3f} s")
    print(f"artifacts written to {out}")
    return 0


def cmd_bench(cfg: SimpleNamespace) -> int:
    out = _out_dir(cfg)
    model = QuboModel.from_dict(load_document(cfg.model))
    params = _solve_params(cfg)
    report = compare_solvers(model, params)
    dump_document(report.to_dict(), out / "bench.json")
    stable = render_comparison_table(report, include_timing=False)
    (out / "bench_table.txt").write_text(stable)
    print(render_comparison_table(report, include_timing=True), end="")
    print(f"artifacts written to {out}")
    return 0


def cmd_select(cfg: SimpleNamespace) -> int:
    out = _out_dir(cfg)
    encoded, report = _ingest_encoded(cfg)
    _write_ingest_artifacts(out, encoded, report)
    normalized = normalize(encoded)
    split = train_test_split(normalized, cfg.split_ratio, cfg.split_seed)
    # The model is built from the training partition only; test rows stay
    # unseen until evaluation.
    profile = correlation_profile(normalized.take(split.train_indices))
    dump_document({"features": list(encoded.names), **profile.to_dict()}, out / "profile.json")
    model, weight = _build_model(profile, cfg)
    dump_document(model.to_dict(), out / "qubo.json")
    params = _solve_params(cfg)
    result = solve(model, cfg.solver, params)
    dump_document(result.to_dict(), out / "solve.json")

    mask = result.best.astype(bool)
    comparison = compare_feature_sets(normalized, split, [mask])
    selected = [n for n, keep in zip(encoded.names, mask) if keep]
    dropped = [n for n, keep in zip(encoded.names, mask) if not keep]
    doc = {
        "alpha": cfg.alpha,
        "use_absolute": not cfg.signed,
        "cardinality": cfg.cardinality,
        "penalty": weight,
        "solver": cfg.solver,
        "seed": cfg.seed,
        "sweeps": cfg.sweeps,
        "restarts": cfg.restarts,
        "t_initial": cfg.t_initial,
        "t_final": cfg.t_final,
        "split_ratio": cfg.split_ratio,
        "split_seed": cfg.split_seed,
        "best_energy": result.best_energy,
        "mask": mask.astype(int).tolist(),
        "selected": selected,
        "dropped": dropped,
        "metrics": {
            "selected": comparison.reports[0].to_dict(),
            "all_features": comparison.baseline.to_dict(),
            "deltas": comparison.deltas[0],
        },
    }
    dump_document(doc, out / "selection.json")

    print(f"selected {len(selected)}/{encoded.n_features} features (alpha={cfg.alpha}, solver={cfg.solver})")
    print(f"kept: {', '.join(selected) if selected else '(none)'}")
    print(f"dropped: {', '.join(dropped) if dropped else '(none)'}")
    print(f"best energy {result.best_energy:.6f}")
    rows = []
    for label, rep in (("selected", comparison.reports[0]), ("all features", comparison.baseline)):
        rows.append([label, f"{rep.accuracy:.4f}", f"{rep.precision:.4f}", f"{rep.recall:.4f}"])
    delta = comparison.deltas[0]
    rows.append(
        ["delta", f"{delta['accuracy']:+.4f}", f"{delta['precision']:+.4f}", f"{delta['recall']:+.4f}"]
    )
    print(render_table(["feature set", "accuracy", "precision", "recall"], rows), end="")
    print(f"artifacts written to {out}")
    return 0


_COMMANDS = {
    "ingest": cmd_ingest,
    "profile": cmd_profile,
    "build": cmd_build,
    "solve": cmd_solve,
    "select": cmd_select,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        cfg = _merge_config(ns.command, ns)
        return _COMMANDS[ns.command](cfg)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SolverGuardError as exc:
        print(f"solver guard: {exc}", file=sys.stderr)
        return 4
    except (DataError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())
