"""Shared types: solutions, control parameters, bounds repair and seeded streams."""

from __future__ import annotations

import dataclasses
import math
import zlib
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np


class StructuralError(ValueError):
    """Raised when inputs violate a structural precondition (shape, emptiness, bounds)."""


@dataclass
class Solution:
    decision: np.ndarray
    objectives: np.ndarray
    rank: int = 0
    crowding: float = 0.0

    def copy(self) -> "Solution":
        return Solution(self.decision.copy(), self.objectives.copy(), self.rank, self.crowding)


XI_MODES = ("fixed", "uniform_per_generation")


@dataclass
class ControlParams:
    """Control parameters of one optimizer run.

    Defaults are the SSLPSA experiment configuration (mutation probability 0.1,
    30 solutions, sharing factor 0.65, 100 generations, 5 SOM epochs,
    s_f=1000, alpha=0.4, mu=0.5).
    """

    p_mut: float = 0.1
    pop_size: int = 30
    xi: float = 0.65
    generations: int = 100
    som_epochs: int = 5
    s_f: float = 1000.0
    alpha: float = 0.4
    mu: float = 0.5
    pool_size: int = 20
    nu_qabc: int = 10
    nu_tbga: int = 10
    xi_mode: str = "fixed"
    archive_cap: Optional[int] = None
    reshuffle_each_generation: bool = True
    # test hook: None means one onlooker per food source
    onlookers: Optional[int] = None

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if not 0.0 <= self.p_mut <= 1.0:
            raise StructuralError(f"p_mut must lie in [0, 1], got {self.p_mut}")
        if not 0.0 <= self.xi <= 1.0:
            raise StructuralError(f"xi must lie in [0, 1], got {self.xi}")
        for name in ("pop_size", "som_epochs", "pool_size", "nu_qabc", "nu_tbga"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise StructuralError(f"{name} must be a positive integer, got {value!r}")
        if not isinstance(self.generations, (int, np.integer)) or self.generations < 0:
            raise StructuralError(f"generations must be a non-negative integer, got {self.generations!r}")
        if not self.s_f > 0:
            raise StructuralError(f"s_f must be positive, got {self.s_f}")
        if not 0.0 <= self.alpha <= 1.0:
            raise StructuralError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 <= self.mu <= 1.0:
            raise StructuralError(f"mu must lie in [0, 1], got {self.mu}")
        if self.xi_mode not in XI_MODES:
            raise StructuralError(f"xi_mode must be one of {XI_MODES}, got {self.xi_mode!r}")
        if self.archive_cap is not None and self.archive_cap < 1:
            raise StructuralError(f"archive_cap must be positive, got {self.archive_cap}")
        if self.onlookers is not None and self.onlookers < 0:
            raise StructuralError(f"onlookers must be non-negative, got {self.onlookers}")

    def replace(self, **changes) -> "ControlParams":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ControlParams":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise StructuralError(f"unknown control parameters: {sorted(unknown)}")
        return cls(**data)


def nsga2_params(**overrides) -> ControlParams:
    """Baseline NSGA-II configuration: 100 chromosomes, pool 20, mutation 0.1, 100 generations."""
    base = dict(p_mut=0.1, pop_size=100, pool_size=20, generations=100)
    base.update(overrides)
    return ControlParams(**base)


class RngStream:
    """Seeded random stream with reproducible, label-addressed children."""

    def __init__(self, seed: int, path: Sequence[int] = ()):
        self.seed = int(seed)
        self.path = tuple(path)
        self.generator = np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=self.path))

    def child(self, label: str) -> "RngStream":
        return RngStream(self.seed, self.path + (zlib.crc32(label.encode("utf-8")),))

    def uniform(self, a: float = 0.0, b: float = 1.0, size=None):
        return self.generator.uniform(a, b, size)

    def uniform_int(self, lo: int, hi: int, size=None):
        """Integers in the closed range [lo, hi]."""
        return self.generator.integers(lo, hi + 1, size)

    def permutation(self, n: int) -> np.ndarray:
        return self.generator.permutation(n)


def clamp_to_bounds(x, bounds) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    bounds = np.asarray(bounds, dtype=float)
    if bounds.ndim != 2 or bounds.shape[1] != 2 or x.ndim != 1 or bounds.shape[0] != x.shape[0]:
        raise StructuralError(f"bounds shape {bounds.shape} does not match decision length {x.shape}")
    return np.minimum(bounds[:, 1], np.maximum(bounds[:, 0], x))


def split_counts(pop_size: int, xi: float) -> tuple[int, int]:
    """Return (n_qabc, n_tbga): half-up rounding of (1 - xi) * pop_size, at least one per phase."""
    if pop_size < 2:
        raise StructuralError(f"pop_size must be at least 2 to split, got {pop_size}")
    if not 0.0 <= xi <= 1.0:
        raise StructuralError(f"xi must lie in [0, 1], got {xi}")
    # round the product to 9 decimals first so 0.35 * 30 = 10.499999... still rounds up
    n_qabc = int(math.floor(round((1.0 - xi) * pop_size, 9) + 0.5))
    n_qabc = min(max(n_qabc, 1), pop_size - 1)
    return n_qabc, pop_size - n_qabc
