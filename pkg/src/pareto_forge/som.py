"""Dominance-gated adaptive self-organizing map with a conscience mechanism.

Each unit carries a weight vector in decision space, its evaluated objectives,
a learning rate and a conscience bias. Non-dominated solutions are presented as
online inputs; a unit only moves toward an input that dominates it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import ControlParams, RngStream, Solution, StructuralError, clamp_to_bounds
from .dominance import dominates
from .problems import ProblemSpec, evaluate

SL_FLOOR = 1e-9
H_INIT = 0.95
BIAS_PENALTY = 0.3
BIAS_DECAY = 0.8


@dataclass
class SomUnit:
    weight: Solution
    learning_rate: float = H_INIT
    bias: float = 0.0


@dataclass
class SomCenter:
    units: list[SomUnit]
    e1: np.ndarray
    e2: np.ndarray
    sl: float
    alpha: float = 0.4
    mu: float = 0.5
    s_f: float = 1000.0
    epochs: int = 5
    wins: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.wins is None:
            self.wins = np.zeros(len(self.units), dtype=int)

    @property
    def biases(self) -> np.ndarray:
        return np.array([u.bias for u in self.units])

    @property
    def weights(self) -> list[Solution]:
        return [u.weight for u in self.units]


def make_center(problem: ProblemSpec, n_units: int, params: ControlParams, rng: RngStream) -> SomCenter:
    """Random weights over the problem box and small random running moments."""
    units = []
    for _ in range(n_units):
        w = problem.random_decision(rng)
        units.append(SomUnit(Solution(w, evaluate(problem, w))))
    e1 = rng.uniform(0.0, 0.01, problem.dim)
    e2 = rng.uniform(0.0, 0.01, problem.dim)
    return SomCenter(
        units, e1, e2, _scale(e1, e2),
        alpha=params.alpha, mu=params.mu, s_f=params.s_f, epochs=params.som_epochs,
    )


def squash_f(z: float) -> float:
    if z < 0:
        raise StructuralError(f"squash_f is defined for z >= 0, got {z}")
    return 1.0 - 1.0 / (1.0 + z)


def gate_y(inp: Solution, unit: SomUnit) -> int:
    return int(dominates(inp.objectives, unit.weight.objectives))


def _scale(e1, e2) -> float:
    return float(np.sqrt(max(SL_FLOOR, float((e2 - e1 * e1).mean()))))


def update_scaling(center: SomCenter, x) -> SomCenter:
    """Exponential running first/second moments of the inputs; sl is their mean standard deviation."""
    x = np.asarray(x, dtype=float)
    center.e1 = center.e1 + center.mu * (x - center.e1)
    center.e2 = center.e2 + center.mu * (x**2 - center.e2)
    center.sl = _scale(center.e1, center.e2)
    return center


def update_learning_rate(unit: SomUnit, inp: Solution, center: SomCenter) -> float:
    diff = inp.decision - unit.weight.decision
    z = float(np.sqrt(diff @ diff)) / (center.s_f * center.sl)
    h = unit.learning_rate + center.alpha * (squash_f(z) - unit.learning_rate)
    unit.learning_rate = min(1.0, max(0.0, h))
    return unit.learning_rate


def select_bmu(center: SomCenter, inp: Solution) -> int:
    if not center.units:
        raise StructuralError("SOM center has no units")
    W = np.array([u.weight.decision for u in center.units])
    dist = np.sqrt(((W - inp.decision) ** 2).sum(axis=1))
    return int(np.argmin(dist - center.biases))


def update_conscience(center: SomCenter, winner: int) -> np.ndarray:
    for j, unit in enumerate(center.units):
        if j == winner:
            unit.bias -= BIAS_PENALTY
        else:
            unit.bias *= BIAS_DECAY
    return center.biases


def move_weight(w, r, y: int, h: float) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    return w + y * h * (np.asarray(r, dtype=float) - w)


def present(center: SomCenter, inp: Solution, problem: ProblemSpec):
    """One online presentation. Returns the moved weight when it is incomparable with the old one."""
    update_scaling(center, inp.decision)
    j = select_bmu(center, inp)
    center.wins[j] += 1
    update_conscience(center, j)
    unit = center.units[j]
    h = update_learning_rate(unit, inp, center)
    y = gate_y(inp, unit)
    if not y or h == 0.0:
        return None
    old = unit.weight
    w = clamp_to_bounds(move_weight(old.decision, inp.decision, y, h), problem.bounds)
    moved = Solution(w, evaluate(problem, w))
    if dominates(moved.objectives, old.objectives):
        unit.weight = moved
        return None
    if dominates(old.objectives, moved.objectives) or np.array_equal(old.objectives, moved.objectives):
        return None
    return moved


def train(center: SomCenter, inputs: list[Solution], problem: ProblemSpec, rng: RngStream):
    """Run the configured epochs over inputs in random order.

    Returns (center, new_weights) where new_weights are moved weights that were
    neither better nor worse than the unit they came from, for archive insertion.
    """
    new_weights: list[Solution] = []
    if not inputs:
        return center, new_weights
    for _ in range(center.epochs):
        for i in rng.permutation(len(inputs)):
            moved = present(center, inputs[i], problem)
            if moved is not None:
                new_weights.append(moved)
    return center, new_weights
