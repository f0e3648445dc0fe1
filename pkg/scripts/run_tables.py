"""Multi-run comparison of SSLPSA and NSGA-II across the benchmark problems.

Prints mean and sample std of gamma, delta, igd and spread per problem and algorithm.

    python3 scripts/run_tables.py --runs 30 --problems zdt1,sch
"""

import argparse

from pareto_forge.engine import run_nsga2, run_sslpsa
from pareto_forge.metrics import METRIC_NAMES, MetricReport, all_metrics
from pareto_forge.problems import PROBLEMS, get_problem, true_front_sample

RUNNERS = {"sslpsa": run_sslpsa, "nsga2": run_nsga2}


def study(pid: str, algo: str, runs: int, base_seed: int) -> MetricReport:
    problem = get_problem(pid)
    ref = true_front_sample(problem, 1000)
    rows = [all_metrics(RUNNERS[algo](problem, seed=base_seed + i).front, ref) for i in range(runs)]
    return MetricReport.from_runs(pid, algo, rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--runs", type=int, default=30)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--problems", default=",".join(PROBLEMS))
    ap.add_argument("--algos", default="sslpsa,nsga2")
    args = ap.parse_args()

    print("problem  algo    " + "  ".join(f"{m:>22}" for m in METRIC_NAMES))
    for pid in args.problems.split(","):
        for algo in args.algos.split(","):
            rep = study(pid, algo, args.runs, args.seed)
            cells = "  ".join(f"{rep.mean[m]:.3e} +- {rep.std[m]:.2e}" for m in METRIC_NAMES)
            print(f"{pid:<8} {algo:<7} {cells}")


if __name__ == "__main__":
    main()
