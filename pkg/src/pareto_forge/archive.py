"""External archive of globally non-dominated solutions."""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .core import Solution
from .dominance import crowding_of


class Archive:
    def __init__(self, cap: Optional[int] = None):
        self.cap = cap
        self.members: list[Solution] = []
        self._F: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def objectives(self) -> np.ndarray:
        if not self.members:
            return np.zeros((0, 0))
        return self._F

    def offer(self, s: Solution) -> bool:
        f = np.asarray(s.objectives, dtype=float)
        if not self.members:
            self.members.append(s)
            self._F = f[None, :].copy()
            return True
        F = self._F
        le = np.all(F <= f, axis=1)
        if np.any(le & np.any(F < f, axis=1)) or np.any(le & np.all(F == f, axis=1)):
            return False
        beaten = np.all(f <= F, axis=1) & np.any(f < F, axis=1)
        if beaten.any():
            keep = np.flatnonzero(~beaten)
            self.members = [self.members[i] for i in keep]
            F = F[keep]
        self.members.append(s)
        self._F = np.vstack([F, f[None, :]])
        if self.cap is not None and len(self.members) > self.cap:
            self._evict()
        return True

    def offer_all(self, batch: Iterable[Solution]) -> "Archive":
        for s in batch:
            self.offer(s)
        return self

    def _evict(self) -> None:
        dist = crowding_of(self._F)
        finite = np.isfinite(dist)
        if finite.any():
            candidates = np.flatnonzero(finite)
            victim = candidates[np.argmin(dist[candidates])]
        else:
            victim = 0
        del self.members[victim]
        self._F = np.delete(self._F, victim, axis=0)


class OfferBuffer(list):
    """Collects archive offers from a phase so they can be applied later in a fixed order."""

    def offer(self, s: Solution) -> bool:
        self.append(s)
        return True

    def offer_all(self, batch: Iterable[Solution]) -> "OfferBuffer":
        self.extend(batch)
        return self
