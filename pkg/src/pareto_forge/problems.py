"""The seven dual-objective benchmarks and samplers of their analytic Pareto fronts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import StructuralError

INV_SQRT3 = 1.0 / np.sqrt(3.0)

# optimal f1 intervals of ZDT3 (its Pareto set is x1 in these ranges, x2..d = 0)
ZDT3_SEGMENTS = (
    (0.0, 0.0830015349),
    (0.1822287280, 0.2577623634),
    (0.4093136748, 0.4538821041),
    (0.6183967944, 0.6525117038),
    (0.8233317983, 0.8518328654),
)


def _zdt1(x):
    f1 = x[0]
    g = 1.0 + 9.0 * np.sum(x[1:]) / (len(x) - 1)
    return f1, g * (1.0 - np.sqrt(f1 / g))


def _zdt2(x):
    f1 = x[0]
    g = 1.0 + 9.0 * np.sum(x[1:]) / (len(x) - 1)
    return f1, g * (1.0 - (f1 / g) ** 2)


def _zdt3(x):
    f1 = x[0]
    g = 1.0 + 9.0 * np.sum(x[1:]) / (len(x) - 1)
    r = f1 / g
    return f1, g * (1.0 - np.sqrt(r) - r * np.sin(10.0 * np.pi * f1))


def _zdt4(x):
    f1 = x[0]
    rest = x[1:]
    g = 1.0 + 10.0 * (len(x) - 1) + np.sum(rest**2 - 10.0 * np.cos(4.0 * np.pi * rest))
    return f1, g * (1.0 - np.sqrt(f1 / g))


def _zdt6(x):
    f1 = 1.0 - np.exp(-4.0 * x[0]) * np.sin(6.0 * np.pi * x[0]) ** 6
    g = 1.0 + 9.0 * (np.sum(x[1:]) / (len(x) - 1)) ** 0.25
    return f1, g * (1.0 - (f1 / g) ** 2)


def _sch(x):
    return x[0] ** 2, (x[0] - 2.0) ** 2


def _fon(x):
    return (
        1.0 - np.exp(-np.sum((x - INV_SQRT3) ** 2)),
        1.0 - np.exp(-np.sum((x + INV_SQRT3) ** 2)),
    )


def _front_zdt1(k):
    f1 = np.linspace(0.0, 1.0, k)
    return np.column_stack([f1, 1.0 - np.sqrt(f1)])


def _front_zdt2(k):
    f1 = np.linspace(0.0, 1.0, k)
    return np.column_stack([f1, 1.0 - f1**2])


def _front_zdt3(k):
    # spread k points over the optimal segments in proportion to their f1 length
    lengths = np.array([hi - lo for lo, hi in ZDT3_SEGMENTS])
    t = np.linspace(0.0, lengths.sum(), k)
    edges = np.concatenate([[0.0], np.cumsum(lengths)])
    seg = np.clip(np.searchsorted(edges, t, side="right") - 1, 0, len(lengths) - 1)
    lows = np.array([lo for lo, _ in ZDT3_SEGMENTS])
    f1 = lows[seg] + (t - edges[seg])
    return np.column_stack([f1, 1.0 - np.sqrt(f1) - f1 * np.sin(10.0 * np.pi * f1)])


def _front_zdt6(k):
    # minimum of f1 over x1 in [0, 1], reached at x1 ~ 0.0814578
    f1_min = 0.28077531881536977
    f1 = np.linspace(f1_min, 1.0, k)
    return np.column_stack([f1, 1.0 - f1**2])


def _front_sch(k):
    x = np.linspace(0.0, 2.0, k)
    return np.column_stack([x**2, (x - 2.0) ** 2])


def _front_fon(k):
    s = np.linspace(-INV_SQRT3, INV_SQRT3, k)
    f1 = 1.0 - np.exp(-3.0 * (s - INV_SQRT3) ** 2)
    f2 = 1.0 - np.exp(-3.0 * (s + INV_SQRT3) ** 2)
    return np.column_stack([f1, f2])[::-1]


@dataclass(frozen=True)
class ProblemSpec:
    id: str
    dim: int
    lower: np.ndarray
    upper: np.ndarray
    func: Callable
    front: Callable
    n_obj: int = 2

    @property
    def bounds(self) -> np.ndarray:
        return np.column_stack([self.lower, self.upper])

    def evaluate(self, x) -> np.ndarray:
        return evaluate(self, x)

    def random_decision(self, rng) -> np.ndarray:
        return rng.uniform(self.lower, self.upper)


def _box(d, lo, hi):
    return np.full(d, float(lo)), np.full(d, float(hi))


def _make(pid, d, lower, upper, func, front):
    lower.setflags(write=False)
    upper.setflags(write=False)
    return ProblemSpec(pid, d, lower, upper, func, front)


def _zdt4_bounds():
    lo, hi = _box(10, -5, 5)
    lo[0], hi[0] = 0.0, 1.0
    return lo, hi


PROBLEMS: dict[str, ProblemSpec] = {
    "zdt1": _make("zdt1", 30, *_box(30, 0, 1), _zdt1, _front_zdt1),
    "zdt2": _make("zdt2", 30, *_box(30, 0, 1), _zdt2, _front_zdt2),
    "zdt3": _make("zdt3", 30, *_box(30, 0, 1), _zdt3, _front_zdt3),
    "zdt4": _make("zdt4", 10, *_zdt4_bounds(), _zdt4, _front_zdt1),
    "zdt6": _make("zdt6", 10, *_box(10, 0, 1), _zdt6, _front_zdt6),
    "sch": _make("sch", 1, *_box(1, -1000, 1000), _sch, _front_sch),
    "fon": _make("fon", 3, *_box(3, -4, 4), _fon, _front_fon),
}


def get_problem(pid: str) -> ProblemSpec:
    try:
        return PROBLEMS[pid.lower()]
    except KeyError:
        raise StructuralError(f"unknown problem {pid!r}; choose from {sorted(PROBLEMS)}") from None


def evaluate(spec: ProblemSpec, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.dim,):
        raise StructuralError(f"{spec.id} expects {spec.dim} variables, got shape {x.shape}")
    if np.any(x < spec.lower) or np.any(x > spec.upper):
        raise StructuralError(f"decision vector outside {spec.id} bounds")
    return np.array(spec.func(x), dtype=float)


def true_front_sample(spec: ProblemSpec, k: int = 1000) -> np.ndarray:
    """k points on the analytic Pareto front as a (k, 2) array."""
    if k < 2:
        raise StructuralError(f"k must be at least 2, got {k}")
    return spec.front(k)
