"""Command line experiment runner: single seeded runs, multi-run comparisons, reference fronts."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .core import ControlParams, StructuralError, nsga2_params
from .engine import ALGORITHMS, RunResult
from .metrics import METRIC_NAMES, MetricReport, all_metrics
from .problems import PROBLEMS, get_problem, true_front_sample

log = logging.getLogger("pareto_forge")

REFERENCE_SIZE = 1000
PARAM_FIELDS = {f.name for f in dataclasses.fields(ControlParams)}
CONFIG_KEYS = {"problem", "algo", "seed", "runs", "out", "som_units", "trace_metrics"} | PARAM_FIELDS

# flag dest -> config key
FLAG_KEYS = {
    "problem": "problem",
    "algo": "algo",
    "seed": "seed",
    "runs": "runs",
    "out": "out",
    "generations": "generations",
    "pop": "pop_size",
    "xi": "xi",
    "xi_mode": "xi_mode",
    "pmut": "p_mut",
    "pool": "pool_size",
    "som_units": "som_units",
    "archive_cap": "archive_cap",
    "trace_metrics": "trace_metrics",
}


class ConfigError(Exception):
    pass


@dataclass
class ExperimentConfig:
    problem: str = "zdt1"
    algorithms: tuple[str, ...] = ("sslpsa",)
    overrides: dict = field(default_factory=dict)
    runs: int = 1
    base_seed: int = 0
    out: Path = Path("out")
    trace_metrics: bool = False

    def params_for(self, algorithm: str) -> ControlParams:
        base = ControlParams() if algorithm == "sslpsa" else nsga2_params()
        try:
            return base.replace(**self.overrides)
        except (StructuralError, TypeError) as exc:
            raise ConfigError(str(exc)) from None

    def to_flat(self, algorithm: Optional[str] = None) -> dict:
        flat = {
            "problem": self.problem,
            "algo": algorithm or ",".join(self.algorithms),
            "seed": self.base_seed,
            "runs": self.runs,
            "out": str(self.out),
            "trace_metrics": self.trace_metrics,
        }
        flat.update(self.overrides)
        return flat


def _parse_algorithms(value) -> tuple[str, ...]:
    names = [v.strip().lower() for v in str(value).split(",") if v.strip()]
    if names == ["all"]:
        names = list(ALGORITHMS)
    bad = [n for n in names if n not in ALGORITHMS]
    if not names or bad:
        raise ConfigError(f"unknown algorithm(s) {bad or value!r}; choose from {sorted(ALGORITHMS)} or 'all'")
    return tuple(names)


def load_config_file(path) -> dict:
    """Read a flat JSON config; a result.json (with a top-level "config" object) is accepted too."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if isinstance(data, dict) and isinstance(data.get("config"), dict):
        data = data["config"]
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return data


def build_config(flat: dict, default_algos: Sequence[str] = ("sslpsa",)) -> ExperimentConfig:
    unknown = set(flat) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    flat = dict(flat)
    problem = str(flat.pop("problem", "zdt1")).lower()
    if problem not in PROBLEMS:
        raise ConfigError(f"unknown problem {problem!r}; choose from {sorted(PROBLEMS)}")
    algos = _parse_algorithms(flat.pop("algo")) if "algo" in flat else tuple(default_algos)
    runs = flat.pop("runs", 1)
    seed = flat.pop("seed", 0)
    out = Path(flat.pop("out", "out"))
    trace_metrics = bool(flat.pop("trace_metrics", False))
    if not isinstance(runs, int) or runs < 1:
        raise ConfigError(f"runs must be a positive integer, got {runs!r}")
    if not isinstance(seed, int) or seed < 0:
        raise ConfigError(f"seed must be a non-negative integer, got {seed!r}")
    units = flat.pop("som_units", None)
    if units is not None:
        flat["nu_qabc"] = flat["nu_tbga"] = units
    config = ExperimentConfig(problem, algos, flat, runs, seed, out, trace_metrics)
    for algo in algos:
        config.params_for(algo)
    return config


def _write_csv(path: Path, header: Sequence[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def execute(problem_id: str, algorithm: str, params: ControlParams, seed: int, trace_metrics: bool = False) -> RunResult:
    problem = get_problem(problem_id)
    observer = None
    if trace_metrics:
        ref = true_front_sample(problem, REFERENCE_SIZE)

        def observer(gen, pop, archive):
            return all_metrics(archive.objectives, ref)

    return ALGORITHMS[algorithm](problem, params, seed=seed, observer=observer)


def write_run(result: RunResult, out: Path, config: dict) -> None:
    out.mkdir(parents=True, exist_ok=True)
    members = sorted(result.archive_members, key=lambda s: tuple(s.objectives))
    _write_csv(out / "front.csv", ["f1", "f2"], ([_fmt(v) for v in s.objectives] for s in members))
    dim = len(members[0].decision) if members else 0
    _write_csv(out / "decisions.csv", [f"x{i + 1}" for i in range(dim)],
               ([_fmt(v) for v in s.decision] for s in members))
    metric_cols = list(METRIC_NAMES) if any(t.metrics for t in result.trace) else []
    _write_csv(
        out / "trace.csv",
        ["generation", "archive_size", "n_qabc", "n_tbga", *metric_cols],
        ([t.generation, t.archive_size, t.n_qabc, t.n_tbga, *[_fmt(t.metrics[m]) for m in metric_cols]]
         for t in result.trace),
    )
    payload = {"config": config, "result": result.metadata()}
    (out / "result.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_run(config: ExperimentConfig) -> int:
    algo = config.algorithms[0]
    params = config.params_for(algo)
    result = execute(config.problem, algo, params, config.base_seed, config.trace_metrics)
    write_run(result, config.out, config.to_flat(algo))
    log.info("%s on %s seed %d: archive %d, %.2fs", algo, config.problem, config.base_seed,
             len(result.archive_members), result.wall_time)
    return 0


def _compare_job(args):
    problem_id, algo, params, seed, run, out = args
    result = execute(problem_id, algo, params, seed)
    ref = true_front_sample(get_problem(problem_id), REFERENCE_SIZE)
    row = {"problem": problem_id, "algorithm": algo, "run": run, "seed": seed}
    row.update(all_metrics(result.front, ref))
    row["archive_size"] = len(result.archive_members)
    row["wall_time"] = result.wall_time
    members = sorted(result.archive_members, key=lambda s: tuple(s.objectives))
    run_dir = out / "runs" / f"{algo}_{run:03d}"
    run_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(run_dir / "front.csv", ["f1", "f2"], ([_fmt(v) for v in s.objectives] for s in members))
    return row


def max_workers(n_jobs: int) -> int:
    cap = os.environ.get("PARETO_FORGE_THREADS")
    workers = os.cpu_count() or 1
    if cap:
        try:
            workers = min(workers, max(1, int(cap)))
        except ValueError:
            raise ConfigError(f"PARETO_FORGE_THREADS must be an integer, got {cap!r}") from None
    return max(1, min(workers, n_jobs))


def compare_rows(config: ExperimentConfig) -> list[dict]:
    jobs = [
        (config.problem, algo, config.params_for(algo), config.base_seed + run, run, config.out)
        for algo in config.algorithms
        for run in range(config.runs)
    ]
    workers = max_workers(len(jobs))
    if workers == 1:
        rows = [_compare_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_compare_job, jobs))
    return rows


def cmd_compare(config: ExperimentConfig) -> int:
    config.out.mkdir(parents=True, exist_ok=True)
    rows = compare_rows(config)
    cols = ["problem", "algorithm", "run", "seed", *METRIC_NAMES, "archive_size", "wall_time"]
    _write_csv(config.out / "metrics.csv", cols, ([_fmt(r[c]) for c in cols] for r in rows))

    reports = {a: MetricReport.from_runs(config.problem, a, [r for r in rows if r["algorithm"] == a])
               for a in config.algorithms}
    header, values = ["problem", "runs"], [config.problem, config.runs]
    for stat in ("mean", "std"):
        for metric in METRIC_NAMES:
            for algo in config.algorithms:
                header.append(f"{stat}_{metric}_{algo}")
                values.append(_fmt(getattr(reports[algo], stat)[metric]))
    _write_csv(config.out / "summary.csv", header, [values])
    (config.out / "config.json").write_text(json.dumps(config.to_flat(), indent=2, sort_keys=True) + "\n")
    for algo, rep in reports.items():
        log.info("%s %s: %s", config.problem, algo,
                 ", ".join(f"{m}={rep.mean[m]:.3e}+-{rep.std[m]:.1e}" for m in METRIC_NAMES))
    return 0


def cmd_front(problem_id: str, k: int, path) -> int:
    front = true_front_sample(get_problem(problem_id), k)
    front = front[np.lexsort(front.T[::-1])]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    _write_csv(path, ["f1", "f2"], ([_fmt(v) for v in row] for row in front))
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat JSON config; command-line flags take precedence")
    p.add_argument("--problem", help=f"one of {', '.join(PROBLEMS)}")
    p.add_argument("--algo", help="sslpsa, nsga2, a comma list, or 'all'")
    p.add_argument("--seed", type=int, help="seed (base seed for compare)")
    p.add_argument("--runs", type=int)
    p.add_argument("--generations", type=int)
    p.add_argument("--pop", type=int)
    p.add_argument("--xi", type=float)
    p.add_argument("--xi-mode", choices=["fixed", "uniform_per_generation"])
    p.add_argument("--pmut", type=float)
    p.add_argument("--pool", type=int)
    p.add_argument("--som-units", type=int)
    p.add_argument("--archive-cap", type=int)
    p.add_argument("--trace-metrics", action="store_true", default=None,
                   help="record all four metrics for every generation in trace.csv")
    p.add_argument("--out", help="output directory")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pareto-forge", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("run", help="one seeded run"))
    _add_common(sub.add_parser("compare", help="multi-run metric comparison"))
    front = sub.add_parser("front", help="write a reference Pareto front sample")
    front.add_argument("--problem", required=True)
    front.add_argument("--k", type=int, default=REFERENCE_SIZE)
    front.add_argument("--out", required=True, help="CSV path")
    return parser


def config_from_args(args, default_algos) -> ExperimentConfig:
    flat = load_config_file(args.config) if args.config else {}
    for dest, key in FLAG_KEYS.items():
        value = getattr(args, dest, None)
        if value is not None:
            flat[key] = value
    return build_config(flat, default_algos)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "front":
            if args.problem.lower() not in PROBLEMS:
                raise ConfigError(f"unknown problem {args.problem!r}; choose from {sorted(PROBLEMS)}")
            if args.k < 2:
                raise ConfigError("--k must be at least 2")
            return cmd_front(args.problem, args.k, args.out)
        if args.command == "run":
            config = config_from_args(args, ("sslpsa",))
            if len(config.algorithms) != 1:
                raise ConfigError("run takes exactly one algorithm")
            return cmd_run(config)
        return cmd_compare(config_from_args(args, tuple(ALGORITHMS)))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - any runtime failure maps to exit 1
        log.debug("run failed", exc_info=True)
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
