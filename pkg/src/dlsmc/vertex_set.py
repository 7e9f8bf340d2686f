"""Dual-array vertex set with O(1) add, swap-remove and membership."""
from __future__ import annotations

import random
from typing import Iterator, List

ABSENT = -1


class IndexedVertexSet:
    """Set of vertex ids in ``[0, capacity)``.

    ``members[:size]`` lists the elements in no particular order and
    ``position[v]`` is the slot of ``v`` in ``members`` (``ABSENT`` if not a
    member). Removal overwrites the removed slot with the last member.

    The solver reads ``members``/``position``/``size`` directly in its inner
    loops; treat them as read-only outside this class.
    """

    __slots__ = ("capacity", "members", "position", "size")

    def __init__(self, capacity: int):
        self.capacity = capacity
        self.members: List[int] = [ABSENT] * capacity
        self.position: List[int] = [ABSENT] * capacity
        self.size = 0

    def add(self, v: int) -> None:
        if not 0 <= v < self.capacity:
            raise IndexError(f"vertex {v} out of range [0, {self.capacity})")
        if self.position[v] != ABSENT:
            raise ValueError(f"vertex {v} already in set")
        self.members[self.size] = v
        self.position[v] = self.size
        self.size += 1

    def remove(self, v: int) -> None:
        if not 0 <= v < self.capacity or self.position[v] == ABSENT:
            raise KeyError(v)
        i = self.position[v]
        last = self.size - 1
        moved = self.members[last]
        self.members[i] = moved
        self.position[moved] = i
        self.position[v] = ABSENT
        self.size = last

    def contains(self, v: int) -> bool:
        return 0 <= v < self.capacity and self.position[v] != ABSENT

    __contains__ = contains

    def random_member(self, rng: random.Random) -> int:
        if self.size == 0:
            raise IndexError("random_member of empty set")
        return self.members[rng.randrange(self.size)]

    def clear(self) -> None:
        position = self.position
        for v in self.members[:self.size]:
            position[v] = ABSENT
        self.size = 0

    def __iter__(self) -> Iterator[int]:
        # snapshot, so callers may mutate the set while iterating
        return iter(self.members[:self.size])

    def __len__(self) -> int:
        return self.size

    def __bool__(self) -> bool:
        return self.size > 0

    def to_list(self) -> List[int]:
        return self.members[:self.size]

    def __repr__(self):
        return f"IndexedVertexSet({sorted(self.to_list())})"
