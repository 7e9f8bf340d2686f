"""Exact reference algorithms for small graphs (test oracles, not competitors)."""
from __future__ import annotations

from typing import Iterable, List, Tuple

from .graph import Graph


def verify_clique(g: Graph, vertices: Iterable[int]) -> bool:
    """True iff every pair in ``vertices`` is adjacent."""
    members = list(vertices)
    for v in members:
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range [0, {g.n})")
    if len(set(members)) != len(members):
        return False
    matrix = g.matrix
    for i, u in enumerate(members):
        row = matrix[u]
        for w in members[:i]:
            if not row[w]:
                return False
    return True


def _bits_to_list(bits: int) -> List[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def _colour_order(cand: int, adj: Tuple[int, ...]):
    """Greedy colouring of ``cand``; returns vertices and their colour numbers
    in non-decreasing colour order (colour k bounds any clique among the first
    vertices by k)."""
    order, colours = [], []
    colour = 0
    rest = cand
    while rest:
        colour += 1
        q = rest
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~(adj[v] | low)
            rest ^= low
            order.append(v)
            colours.append(colour)
    return order, colours


def max_clique_exact(g: Graph) -> Tuple[int, List[int]]:
    """Maximum clique by branch and bound with a greedy-colouring bound."""
    adj = g.bitrows()
    best = [0, 0]  # size, bitmask

    def branch(size: int, current: int, cand: int) -> None:
        order, colours = _colour_order(cand, adj)
        for i in range(len(order) - 1, -1, -1):
            if size + colours[i] <= best[0]:
                return
            v = order[i]
            bit = 1 << v
            sub = cand & adj[v]
            if sub:
                branch(size + 1, current | bit, sub)
            elif size + 1 > best[0]:
                best[0] = size + 1
                best[1] = current | bit
            cand &= ~bit

    if g.n:
        branch(0, 0, (1 << g.n) - 1)
    return best[0], _bits_to_list(best[1])


def enumerate_maximum_cliques(g: Graph) -> List[List[int]]:
    """All distinct maximum-size cliques, each as a sorted vertex list."""
    if g.n == 0:
        return [[]]
    omega, _ = max_clique_exact(g)
    adj = g.bitrows()
    found: List[List[int]] = []

    # Bron-Kerbosch with pivoting, pruned by the known optimum size
    def bk(size: int, r: int, p: int, x: int) -> None:
        if size + bin(p).count("1") < omega:
            return
        if not p:
            if not x and size == omega:
                found.append(_bits_to_list(r))
            return
        pu = p | x
        pivot = max(_bits_to_list(pu), key=lambda u: bin(p & adj[u]).count("1"))
        for v in _bits_to_list(p & ~adj[pivot]):
            bit = 1 << v
            bk(size + 1, r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    bk(0, 0, (1 << g.n) - 1, 0)
    return sorted(found)
