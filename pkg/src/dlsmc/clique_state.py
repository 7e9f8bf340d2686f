"""Current clique plus its improving and level neighbour sets.

For every vertex ``v`` we keep ``adj_count[v]``, the number of clique members
adjacent to ``v``. With ``k = |C|``:

* ``NI`` holds the non-members with ``adj_count == k`` (can be added),
* ``NL`` holds the non-members with ``adj_count == k - 1`` (can be swapped in).

Incremental updates only touch old ``NI``/``NL`` members and the neighbours of
the vertices entering or leaving ``C``; a vertex outside those cannot cross
either threshold.
"""
from __future__ import annotations

from typing import Iterable, List

from .graph import Graph
from .vertex_set import ABSENT, IndexedVertexSet


class CliqueError(ValueError):
    pass


class CliqueState:
    __slots__ = ("graph", "C", "NI", "NL", "adj_count")

    def __init__(self, graph: Graph):
        n = graph.n
        self.graph = graph
        self.C = IndexedVertexSet(n)
        self.NI = IndexedVertexSet(n)
        self.NL = IndexedVertexSet(n)
        self.adj_count: List[int] = [0] * n
        # empty clique: every vertex is improving
        for v in range(n):
            self.NI.add(v)

    @property
    def size(self) -> int:
        return self.C.size

    def clique(self) -> List[int]:
        return self.C.to_list()

    def reset_to(self, v: int) -> None:
        """``C := {v}``."""
        self.restore_to((v,), check=False)

    def restore_to(self, snapshot: Iterable[int], check: bool = True) -> None:
        """Replace ``C`` wholesale and rebuild all derived data."""
        g = self.graph
        members = list(snapshot)
        if check:
            matrix = g.matrix
            for i, u in enumerate(members):
                if not 0 <= u < g.n:
                    raise IndexError(f"vertex {u} out of range [0, {g.n})")
                for w in members[:i]:
                    if not matrix[u][w]:
                        raise CliqueError(f"{sorted(members)} is not a clique: {u} !~ {w}")
        C, NI, NL = self.C, self.NI, self.NL
        C.clear()
        NI.clear()
        NL.clear()
        count = [0] * g.n
        neighbors = g.neighbors
        for u in members:
            C.add(u)
            for w in neighbors[u]:
                count[w] += 1
        self.adj_count = count
        k = C.size
        position = C.position
        for w in range(g.n):
            if position[w] == ABSENT:
                c = count[w]
                if c == k:
                    NI.add(w)
                elif c == k - 1:
                    NL.add(w)

    def add_vertex(self, v: int) -> None:
        """Move an improving vertex into the clique."""
        NI, NL = self.NI, self.NL
        if not NI.contains(v):
            raise CliqueError(f"vertex {v} is not in the improving set")
        row = self.graph.matrix[v]
        count = self.adj_count
        for w in self.graph.neighbors[v]:
            count[w] += 1
        NI.remove(v)
        self.C.add(v)

        # old NL members not adjacent to v fall two short
        members = NL.members
        i = 0
        while i < NL.size:
            w = members[i]
            if row[w]:
                i += 1
            else:
                NL.remove(w)  # swap-remove refills slot i
        # old NI members not adjacent to v become level
        members = NI.members
        i = 0
        while i < NI.size:
            w = members[i]
            if row[w]:
                i += 1
            else:
                NI.remove(w)
                NL.add(w)

    def swap_in(self, v: int) -> int:
        """Swap a level vertex into the clique; returns the vertex it displaced."""
        NI, NL, C = self.NI, self.NL, self.C
        if not NL.contains(v):
            raise CliqueError(f"vertex {v} is not in the level set")
        g = self.graph
        row = g.matrix[v]
        u = ABSENT
        for w in C.members[:C.size]:
            if not row[w]:
                u = w
                break
        count = self.adj_count
        for w in g.neighbors[u]:
            count[w] -= 1
        for w in g.neighbors[v]:
            count[w] += 1
        C.remove(u)
        NL.remove(v)
        C.add(v)

        k = C.size
        in_c = C.position
        ni_pos = NI.position
        nl_pos = NL.position
        touched = NI.members[:NI.size]
        touched += NL.members[:NL.size]
        touched += g.neighbors[v]
        touched.append(u)
        for w in touched:
            if in_c[w] != ABSENT:
                continue
            c = count[w]
            if c == k:
                if nl_pos[w] != ABSENT:
                    NL.remove(w)
                if ni_pos[w] == ABSENT:
                    NI.add(w)
            elif c == k - 1:
                if ni_pos[w] != ABSENT:
                    NI.remove(w)
                if nl_pos[w] == ABSENT:
                    NL.add(w)
            else:
                if ni_pos[w] != ABSENT:
                    NI.remove(w)
                elif nl_pos[w] != ABSENT:
                    NL.remove(w)
        return u

    def check(self) -> None:
        """Recompute everything from ``C`` and the graph; raise on any mismatch."""
        g = self.graph
        members = self.C.to_list()
        for i, u in enumerate(members):
            for w in members[:i]:
                if not g.matrix[u][w]:
                    raise AssertionError(f"C is not a clique: {u} !~ {w}")
        k = len(members)
        in_c = set(members)
        for w in range(g.n):
            c = sum(1 for u in members if g.matrix[w][u])
            if self.adj_count[w] != c:
                raise AssertionError(f"adj_count[{w}] = {self.adj_count[w]}, expected {c}")
            ni = w not in in_c and c == k
            nl = w not in in_c and c == k - 1
            if self.NI.contains(w) != ni:
                raise AssertionError(f"NI membership of {w} wrong")
            if self.NL.contains(w) != nl:
                raise AssertionError(f"NL membership of {w} wrong")
