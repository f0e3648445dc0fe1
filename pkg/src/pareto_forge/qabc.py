"""Quasi artificial bee colony phase: employed and onlooker bees with no scouts.

Food sources are never abandoned, so the phase only intensifies around the
solutions it was handed.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .core import ControlParams, RngStream, Solution, clamp_to_bounds
from .dominance import crowded_compare, dominates, sort_and_crowd
from .problems import ProblemSpec, evaluate
from .som import SomCenter, make_center, train


def neighbor_candidate(
    i: int,
    foods: list[Solution],
    rng: RngStream,
    problem: ProblemSpec,
    phi: Optional[float] = None,
    j: Optional[int] = None,
) -> Solution:
    """Perturb one dimension of foods[i] relative to a random partner."""
    x = foods[i].decision
    if j is None:
        j = int(rng.uniform_int(0, problem.dim - 1))
    if len(foods) > 1:
        k = int(rng.uniform_int(0, len(foods) - 2))
        partner = foods[k + 1 if k >= i else k].decision
    else:
        partner = problem.random_decision(rng)
    if phi is None:
        phi = rng.uniform(-1.0, 1.0)
    v = x.copy()
    v[j] = x[j] + phi * (x[j] - partner[j])
    v = clamp_to_bounds(v, problem.bounds)
    return Solution(v, evaluate(problem, v))


def greedy_select(old: Solution, new: Solution) -> Solution:
    """Pareto greedy choice; incomparable pairs fall back to rank then crowding, ties keep old."""
    if dominates(new.objectives, old.objectives):
        return new
    if dominates(old.objectives, new.objectives):
        return old
    return new if crowded_compare(new, old) < 0 else old


def onlooker_pick(foods: list[Solution], rng: RngStream) -> int:
    if len(foods) == 1:
        return 0
    a = int(rng.uniform_int(0, len(foods) - 1))
    b = int(rng.uniform_int(0, len(foods) - 1))
    return b if crowded_compare(foods[a], foods[b]) > 0 else a


def _visit(i: int, foods: list[Solution], rng: RngStream, problem: ProblemSpec, produced: list[Solution]) -> None:
    cand = neighbor_candidate(i, foods, rng, problem)
    produced.append(cand)
    old = foods[i]
    if not (dominates(cand.objectives, old.objectives) or dominates(old.objectives, cand.objectives)):
        # stamp crowding of the candidate against the current food sources
        trial = foods + [cand]
        sort_and_crowd(trial)
    chosen = greedy_select(old, cand)
    if chosen is not old:
        foods[i] = chosen
    # keep rank and crowding current for the onlooker tournaments
    sort_and_crowd(foods)


def run_qabc_phase(
    subpop: list[Solution],
    center: Optional[SomCenter],
    archive,
    params: ControlParams,
    problem: ProblemSpec,
    rng: RngStream,
):
    """One QABC generation. Returns (foods, center)."""
    foods = [s.copy() for s in subpop]
    fs = sort_and_crowd(foods)
    if center is None:
        center = make_center(problem, params.nu_qabc, params, rng.child("som-init"))
    elite = [foods[i] for i in fs.fronts[0]]
    center, new_weights = train(center, elite, problem, rng.child("som"))
    archive.offer_all(new_weights)

    produced: list[Solution] = []
    bees = rng.child("bees")
    for i in range(len(foods)):
        _visit(i, foods, bees, problem, produced)

    n_onlookers = len(foods) if params.onlookers is None else params.onlookers
    for _ in range(n_onlookers):
        i = onlooker_pick(foods, bees)
        _visit(i, foods, bees, problem, produced)

    archive.offer_all(produced)
    archive.offer_all([s for s in foods if s.rank == 0])
    return foods, center
