"""Front quality indicators (convergence, diversity, IGD, spread) and run aggregation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import cdist

from .core import StructuralError

METRIC_NAMES = ("gamma", "delta", "igd", "spread")


def _points(a, name: str, min_size: int = 1) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] < min_size:
        raise StructuralError(f"{name} needs at least {min_size} points, got shape {a.shape}")
    return a


def gamma(front, ref) -> float:
    """Mean distance from each obtained point to its nearest reference point."""
    F = _points(front, "front")
    R = _points(ref, "ref")
    return float(cdist(F, R).min(axis=1).mean())


def igd(front, ref) -> float:
    """Mean distance from each reference point to its nearest obtained point."""
    F = _points(front, "front")
    R = _points(ref, "ref")
    return float(cdist(R, F).min(axis=1).mean())


def _by_first_objective(a: np.ndarray) -> np.ndarray:
    return a[np.lexsort(a.T[::-1])]


def _extreme_gaps(F: np.ndarray, ref) -> tuple[float, float]:
    R = _by_first_objective(_points(ref, "ref"))
    return float(np.linalg.norm(F[0] - R[0])), float(np.linalg.norm(F[-1] - R[-1]))


def _normalised_deviation(gaps: np.ndarray, d_f: float, d_l: float) -> float:
    mean = gaps.mean()
    num = d_f + d_l + np.abs(gaps - mean).sum()
    den = d_f + d_l + len(gaps) * mean
    return 0.0 if den == 0 else float(num / den)


def delta(front, ref) -> float:
    """Deb's diversity metric over consecutive gaps of the front sorted by f1."""
    F = _by_first_objective(_points(front, "front", 2))
    gaps = np.linalg.norm(np.diff(F, axis=0), axis=1)
    return _normalised_deviation(gaps, *_extreme_gaps(F, ref))


def spread(front, ref) -> float:
    """Like delta, but each point contributes its nearest-neighbour distance."""
    F = _by_first_objective(_points(front, "front", 2))
    D = cdist(F, F)
    np.fill_diagonal(D, np.inf)
    return _normalised_deviation(D.min(axis=1), *_extreme_gaps(F, ref))


def all_metrics(front, ref) -> dict[str, float]:
    front = np.asarray(front, dtype=float)
    out = {"gamma": gamma(front, ref), "igd": igd(front, ref)}
    if len(front) >= 2:
        out["delta"] = delta(front, ref)
        out["spread"] = spread(front, ref)
    else:
        out["delta"] = out["spread"] = float("nan")
    return {k: out[k] for k in METRIC_NAMES}


def aggregate(values) -> tuple[float, float]:
    """Arithmetic mean and sample standard deviation (0 for a single value)."""
    v = np.asarray(list(values), dtype=float)
    if v.size == 0:
        raise StructuralError("cannot aggregate an empty list")
    std = float(v.std(ddof=1)) if v.size > 1 else 0.0
    return float(v.mean()), std


@dataclass
class MetricReport:
    problem: str
    algorithm: str
    runs: int
    mean: dict[str, float] = field(default_factory=dict)
    std: dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_runs(cls, problem: str, algorithm: str, rows: list[dict]) -> "MetricReport":
        report = cls(problem, algorithm, len(rows))
        for name in METRIC_NAMES:
            report.mean[name], report.std[name] = aggregate(r[name] for r in rows)
        return report
