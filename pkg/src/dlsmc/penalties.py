"""Vertex penalties and penalty-guided vertex selection."""
from __future__ import annotations

from typing import Iterable, List, Optional

from .vertex_set import IndexedVertexSet

PENALTY_CAP = 10


class PenaltyState:
    """Per-vertex penalty counters with delayed decay.

    ``penalized`` tracks the vertices with a non-zero penalty so that decay
    cycles cost O(#penalized) instead of O(n).
    """

    __slots__ = ("n", "pd", "cap", "penalty", "update_cycles", "available",
                 "_taken", "penalized")

    def __init__(self, n: int, pd: int, cap: int = PENALTY_CAP):
        if pd < 1:
            raise ValueError(f"penalty delay must be >= 1, got {pd}")
        self.n = n
        self.pd = pd
        self.cap = cap
        self.penalty: List[int] = [0] * n
        self.available = bytearray(b"\x01") * n
        self._taken: List[int] = []
        self.penalized = IndexedVertexSet(n)
        self.update_cycles = 0

    def init_penalties(self) -> None:
        self.penalty = [0] * self.n
        self.penalized.clear()
        self.update_cycles = 0
        self.available = bytearray(b"\x01") * self.n
        self._taken = []

    def select_min_penalty(self, candidates, rng,
                           use_availability: bool = True) -> Optional[int]:
        """Uniform choice among the minimum-penalty eligible candidates.

        Eligible means available and penalty at most ``cap``. The chosen
        vertex is marked unavailable. Returns ``None`` if nothing is eligible.
        """
        if isinstance(candidates, IndexedVertexSet):
            pool = candidates.members[:candidates.size]
        else:
            pool = candidates
        penalty = self.penalty
        cap = self.cap
        best = cap + 1
        ties: List[int] = []
        if use_availability:
            avail = self.available
            for v in pool:
                if avail[v]:
                    p = penalty[v]
                    if p > cap:
                        continue
                    if p < best:
                        best = p
                        ties = [v]
                    elif p == best:
                        ties.append(v)
        else:
            for v in pool:
                p = penalty[v]
                if p > cap:
                    continue
                if p < best:
                    best = p
                    ties = [v]
                elif p == best:
                    ties.append(v)
        if not ties:
            return None
        v = ties[0] if len(ties) == 1 else ties[rng.randrange(len(ties))]
        if use_availability:
            self.available[v] = 0
            self._taken.append(v)
        return v

    def update_penalties(self, clique: Iterable[int]) -> None:
        """Increment clique members; every ``pd``-th call decay all non-zero penalties."""
        self.update_cycles += 1
        penalty = self.penalty
        penalized = self.penalized
        for v in clique:
            if penalty[v] == 0:
                penalized.add(v)
            penalty[v] += 1
        if self.update_cycles % self.pd == 0:
            for v in penalized.to_list():
                penalty[v] -= 1
                if penalty[v] == 0:
                    penalized.remove(v)

    def clear_availability(self) -> None:
        avail = self.available
        for v in self._taken:
            avail[v] = 1
        self._taken = []

    def set_penalty(self, v: int, value: int) -> None:
        if value < 0:
            raise ValueError("penalties are non-negative")
        if value and not self.penalty[v]:
            self.penalized.add(v)
        elif not value and self.penalty[v]:
            self.penalized.remove(v)
        self.penalty[v] = value

    @property
    def penalized_count(self) -> int:
        return self.penalized.size
