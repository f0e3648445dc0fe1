"""How SSLPSA convergence on one problem scales with the generation budget.

    python3 scripts/generation_sweep.py --problem zdt1 --generations 100,300,1000 --runs 3
"""

import argparse

import numpy as np

from pareto_forge.core import ControlParams
from pareto_forge.engine import run_sslpsa
from pareto_forge.metrics import gamma
from pareto_forge.problems import get_problem, true_front_sample


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--problem", default="zdt1")
    ap.add_argument("--generations", default="100,300,1000")
    ap.add_argument("--runs", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    problem = get_problem(args.problem)
    ref = true_front_sample(problem, 1000)
    for g in (int(v) for v in args.generations.split(",")):
        params = ControlParams(generations=g)
        gs, sizes, secs = [], [], []
        for i in range(args.runs):
            res = run_sslpsa(problem, params, seed=args.seed + i)
            gs.append(gamma(res.front, ref))
            sizes.append(len(res.archive_members))
            secs.append(res.wall_time)
        print(f"generations {g:>5}: gamma {np.mean(gs):.3e}  archive {np.mean(sizes):7.0f}  {np.mean(secs):6.1f}s/run")


if __name__ == "__main__":
    main()
