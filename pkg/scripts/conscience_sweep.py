"""Top-unit win share when one fixed input is presented repeatedly to a fresh SOM center.

Reports the distribution over seeds, with and without weight learning.

    python3 scripts/conscience_sweep.py --problem zdt1 --seeds 50
"""

import argparse

import numpy as np

from pareto_forge.core import ControlParams, RngStream, Solution
from pareto_forge.problems import get_problem
from pareto_forge.som import make_center, present, select_bmu, update_conscience


def top_share(problem, seed, presentations, units, learn):
    root = RngStream(seed)
    center = make_center(problem, units, ControlParams(), root.child("c5c"))
    x = problem.random_decision(root.child("c5c-input"))
    inp = Solution(x, problem.evaluate(x))
    for _ in range(presentations):
        if learn:
            present(center, inp, problem)
        else:
            j = select_bmu(center, inp)
            center.wins[j] += 1
            update_conscience(center, j)
    return center.wins.max() / center.wins.sum()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--problem", default="zdt1")
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--presentations", type=int, default=100)
    ap.add_argument("--units", type=int, default=10)
    args = ap.parse_args()

    problem = get_problem(args.problem)
    for learn in (True, False):
        shares = np.array([top_share(problem, s, args.presentations, args.units, learn) for s in range(args.seeds)])
        label = "with learning" if learn else "bias only"
        print(f"{label:>14}: max {shares.max():.2f}  mean {shares.mean():.2f}  "
              f"share>0.6 in {np.mean(shares > 0.6):.0%} of seeds  (seed 0: {shares[0]:.2f})")


if __name__ == "__main__":
    main()
