"""Tournament-based GA phase: feasibility-first binary tournaments, SBX, polynomial mutation."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .core import ControlParams, RngStream, Solution, clamp_to_bounds
from .dominance import crowded_compare, crowded_truncate, sort_and_crowd
from .problems import ProblemSpec, evaluate
from .som import SomCenter, make_center, train

ETA_C = 15.0
ETA_M = 20.0
SBX_VAR_PROB = 0.5


def violation(s: Solution, problem: Optional[ProblemSpec]) -> float:
    """Total amount by which the decision vector leaves the problem box."""
    if problem is None:
        return 0.0
    x = s.decision
    return float(np.sum(np.maximum(0.0, problem.lower - x)) + np.sum(np.maximum(0.0, x - problem.upper)))


def tournament_select(pop: list[Solution], rng: RngStream, problem: Optional[ProblemSpec] = None) -> Solution:
    if len(pop) < 2:
        return pop[0]
    i, j = rng.generator.choice(len(pop), size=2, replace=False)
    a, b = pop[i], pop[j]
    va, vb = violation(a, problem), violation(b, problem)
    if va > 0 or vb > 0:
        if va == 0:
            return a
        if vb == 0:
            return b
        return a if va <= vb else b
    return b if crowded_compare(a, b) > 0 else a


def sbx_pair(x1, x2, rng: RngStream, eta: float = ETA_C, var_prob: float = SBX_VAR_PROB):
    """Symmetric simulated binary crossover on raw decision vectors (no repair)."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    u = rng.uniform(0.0, 1.0, x1.shape)
    apply = rng.uniform(0.0, 1.0, x1.shape) < var_prob
    beta = np.where(u <= 0.5, (2.0 * u) ** (1.0 / (eta + 1.0)), (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta + 1.0)))
    beta = np.where(apply, beta, 1.0)
    # midpoint/half-spread form: identical parents reproduce themselves exactly
    mid = 0.5 * (x1 + x2)
    half = 0.5 * beta * (x2 - x1)
    c1, c2 = mid - half, mid + half
    swap = rng.uniform(0.0, 1.0, x1.shape) < 0.5
    return np.where(swap, c2, c1), np.where(swap, c1, c2)


def crossover(p1: Solution, p2: Solution, rng: RngStream, problem: ProblemSpec):
    c1, c2 = sbx_pair(p1.decision, p2.decision, rng)
    children = []
    for c in (c1, c2):
        c = clamp_to_bounds(c, problem.bounds)
        children.append(Solution(c, evaluate(problem, c)))
    return children[0], children[1]


def polynomial_mutation(x, lower, upper, rng: RngStream, eta: float = ETA_M, prob: Optional[float] = None):
    """Deb's bounded polynomial mutation; each variable mutates with probability prob (default 1/d)."""
    x = np.asarray(x, dtype=float).copy()
    prob = 1.0 / len(x) if prob is None else prob
    mask = rng.uniform(0.0, 1.0, x.shape) < prob
    u = rng.uniform(0.0, 1.0, x.shape)
    span = upper - lower
    idx = np.flatnonzero(mask & (span > 0))
    if idx.size == 0:
        return x
    xs, lo, sp, uu = x[idx], lower[idx], span[idx], u[idx]
    d1 = (xs - lo) / sp
    d2 = (lo + sp - xs) / sp
    power = 1.0 / (eta + 1.0)
    left = uu < 0.5
    val_l = 2.0 * uu + (1.0 - 2.0 * uu) * (1.0 - d1) ** (eta + 1.0)
    val_r = 2.0 * (1.0 - uu) + 2.0 * (uu - 0.5) * (1.0 - d2) ** (eta + 1.0)
    dq = np.where(left, np.abs(val_l) ** power - 1.0, 1.0 - np.abs(val_r) ** power)
    x[idx] = xs + dq * sp
    return x


def mutate(p: Solution, rng: RngStream, problem: ProblemSpec, prob: Optional[float] = None) -> Solution:
    c = polynomial_mutation(p.decision, problem.lower, problem.upper, rng, prob=prob)
    c = clamp_to_bounds(c, problem.bounds)
    return Solution(c, evaluate(problem, c))


def breed(pop: list[Solution], n_children: int, p_mut: float, problem: ProblemSpec, rng: RngStream):
    """Produce n_children; each two-child slot mutates with probability p_mut, else crosses over.

    Returns (children, gates) where gates[k] is True when slot k used mutation.
    """
    children: list[Solution] = []
    gates: list[bool] = []
    while len(children) < n_children:
        use_mutation = bool(rng.uniform() < p_mut)
        gates.append(use_mutation)
        a = tournament_select(pop, rng, problem)
        b = tournament_select(pop, rng, problem)
        if use_mutation:
            pair = (mutate(a, rng, problem), mutate(b, rng, problem))
        else:
            pair = crossover(a, b, rng, problem)
        children.extend(pair)
    return children[:n_children], gates


def run_tbga_phase(
    subpop: list[Solution],
    center: Optional[SomCenter],
    archive,
    params: ControlParams,
    problem: ProblemSpec,
    rng: RngStream,
    out_size: Optional[int] = None,
):
    """One TBGA generation. Returns (survivors, center)."""
    pop = [s.copy() for s in subpop]
    fs = sort_and_crowd(pop)
    if center is None:
        center = make_center(problem, params.nu_tbga, params, rng.child("som-init"))
    elite = [pop[i] for i in fs.fronts[0]]
    center, new_weights = train(center, elite, problem, rng.child("som"))
    archive.offer_all(new_weights)

    children, _ = breed(pop, params.pool_size, params.p_mut, problem, rng.child("breed"))
    size = len(pop) if out_size is None else out_size
    survivors = crowded_truncate(pop + children, size)
    archive.offer_all(children)
    archive.offer_all([s for s in survivors if s.rank == 0])
    return survivors, center
