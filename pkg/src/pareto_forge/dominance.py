"""Pareto dominance, fast non-dominated sorting and crowding distance (minimisation)."""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .core import Solution, StructuralError


def dominates(a, b) -> bool:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise StructuralError(f"objective dimensions differ: {a.shape} vs {b.shape}")
    return bool((a <= b).all() and (a < b).any())


def domination_matrix(F: np.ndarray) -> np.ndarray:
    """D[i, j] is True when row i dominates row j."""
    F = np.asarray(F, dtype=float)
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    return le & lt


@dataclass
class FrontSet:
    fronts: list[list[int]]
    domination_count: list[int]
    dominated_set: list[list[int]]

    @property
    def ranks(self) -> list[int]:
        ranks = [0] * len(self.domination_count)
        for k, front in enumerate(self.fronts):
            for i in front:
                ranks[i] = k
        return ranks


def sort_objectives(F) -> FrontSet:
    """Deb's fast non-dominated sort on an (N, m) objective matrix."""
    F = np.asarray(F, dtype=float)
    if F.ndim != 2 or F.shape[0] == 0:
        raise StructuralError("cannot sort an empty population")
    D = domination_matrix(F)
    dominated_set = [np.flatnonzero(row).tolist() for row in D]
    domination_count = D.sum(axis=0).astype(int).tolist()
    remaining = list(domination_count)
    fronts = [[i for i, n in enumerate(remaining) if n == 0]]
    while True:
        nxt = []
        for p in fronts[-1]:
            for q in dominated_set[p]:
                remaining[q] -= 1
                if remaining[q] == 0:
                    nxt.append(q)
        if not nxt:
            break
        fronts.append(sorted(nxt))
    return FrontSet(fronts, domination_count, dominated_set)


def fast_nondominated_sort(pop: list[Solution]) -> FrontSet:
    if not pop:
        raise StructuralError("cannot sort an empty population")
    fs = sort_objectives(np.array([s.objectives for s in pop]))
    for k, front in enumerate(fs.fronts):
        for i in front:
            pop[i].rank = k
    return fs


def crowding_of(F) -> np.ndarray:
    """Crowding distances for a mutually non-dominated (N, m) objective matrix."""
    F = np.asarray(F, dtype=float)
    n = F.shape[0]
    dist = np.zeros(n)
    if n <= 2:
        dist[:] = np.inf
        return dist
    for k in range(F.shape[1]):
        # lexsort on (index, value) keeps the order independent of input permutation for ties
        order = np.lexsort((np.arange(n), F[:, k]))
        col = F[order, k]
        span = col[-1] - col[0]
        dist[order[0]] = np.inf
        dist[order[-1]] = np.inf
        if span > 0:
            dist[order[1:-1]] += (col[2:] - col[:-2]) / span
    return dist


def crowding_distance(front: list[Solution]) -> np.ndarray:
    if not front:
        return np.zeros(0)
    dist = crowding_of(np.array([s.objectives for s in front]))
    for s, d in zip(front, dist):
        s.crowding = float(d)
    return dist


def sort_and_crowd(pop: list[Solution]) -> FrontSet:
    """Stamp rank and crowding on every member of pop."""
    fs = fast_nondominated_sort(pop)
    for front in fs.fronts:
        crowding_distance([pop[i] for i in front])
    return fs


def crowded_compare(a: Solution, b: Solution) -> int:
    """Negative when a precedes b, positive when b precedes a, 0 on an exact tie."""
    if a.rank != b.rank:
        return -1 if a.rank < b.rank else 1
    if a.crowding != b.crowding:
        return -1 if a.crowding > b.crowding else 1
    return 0


def crowded_order(pop: list[Solution]) -> list[int]:
    """Indices of pop in crowded-comparison order; sorted() is stable, so ties keep input order."""
    key = functools.cmp_to_key(lambda i, j: crowded_compare(pop[i], pop[j]))
    return sorted(range(len(pop)), key=key)


def crowded_truncate(pop: list[Solution], size: int) -> list[Solution]:
    """Re-sort pop and keep the `size` best under the crowded comparison."""
    if size >= len(pop):
        sort_and_crowd(pop)
        return list(pop)
    fs = fast_nondominated_sort(pop)
    keep: list[Solution] = []
    for front in fs.fronts:
        members = [pop[i] for i in front]
        crowding_distance(members)
        if len(keep) + len(members) <= size:
            keep.extend(members)
            continue
        ordered = crowded_order(members)
        keep.extend(members[i] for i in ordered[: size - len(keep)])
        break
    return keep


def nondominated_mask(F) -> np.ndarray:
    F = np.asarray(F, dtype=float)
    if F.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    return ~domination_matrix(F).any(axis=0)
