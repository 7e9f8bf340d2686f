"""Immutable undirected simple graphs and DIMACS clique-format I/O.

Vertices are ``0..n-1`` internally. DIMACS files and everything user-facing
use 1-based ids.
"""
from __future__ import annotations

import logging
import math
import random
from itertools import compress
from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple, Union

log = logging.getLogger(__name__)


class DimacsFormatError(ValueError):
    """Malformed or inconsistent DIMACS input."""


class Graph:
    """Undirected simple graph, immutable after construction.

    Adjacency is stored twice: ``matrix[u][v]`` (one bytearray row per vertex)
    for O(1) edge tests, and ``neighbors[v]`` (sorted tuples) for iteration.
    """

    __slots__ = ("n", "m", "matrix", "neighbors", "degree", "name", "_bits", "_arrays")

    def __init__(self, n: int, matrix: Sequence[bytearray], name: str = ""):
        self.n = n
        self.matrix = tuple(matrix)
        every = range(n)
        self.neighbors = tuple(tuple(compress(every, row)) for row in self.matrix)
        self.degree = tuple(len(nb) for nb in self.neighbors)
        self.m = sum(self.degree) // 2
        self.name = name
        self._bits = None
        self._arrays = None  # numpy views for the compiled engine

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]], name: str = "") -> "Graph":
        if n < 0:
            raise ValueError(f"negative vertex count {n}")
        matrix = [bytearray(n) for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            matrix[u][v] = 1
            matrix[v][u] = 1
        return cls(n, matrix, name)

    def edges(self):
        """Yield each edge once as ``(u, v)`` with ``u < v``."""
        for u, nb in enumerate(self.neighbors):
            for v in nb:
                if v > u:
                    yield u, v

    def bitrows(self) -> Tuple[int, ...]:
        """Adjacency rows as Python int bitmasks (bit v of row u set iff u~v)."""
        if self._bits is None:
            self._bits = tuple(sum(1 << u for u in nb) for nb in self.neighbors)
        return self._bits

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.n, self.m, self.matrix))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={self.m}>"


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range [0, {g.n})")


def is_edge(g: Graph, u: int, v: int) -> bool:
    _check_vertex(g, u)
    _check_vertex(g, v)
    return bool(g.matrix[u][v])


def complement(g: Graph) -> Graph:
    """Graph on the same vertices with exactly the non-edges of ``g``."""
    n = g.n
    matrix = []
    for u, row in enumerate(g.matrix):
        inv = bytearray(b ^ 1 for b in row)
        inv[u] = 0
        matrix.append(inv)
    name = f"complement({g.name})" if g.name else ""
    return Graph(n, matrix, name)


def degree_stats(g: Graph, subset: Optional[Iterable[int]] = None) -> Tuple[float, float]:
    """Population mean and standard deviation of vertex degree over ``subset``."""
    vertices = range(g.n) if subset is None else list(subset)
    if len(vertices) == 0:
        raise ValueError("degree_stats needs a non-empty vertex subset")
    degs = []
    for v in vertices:
        _check_vertex(g, v)
        degs.append(g.degree[v])
    mean = sum(degs) / len(degs)
    var = sum((d - mean) ** 2 for d in degs) / len(degs)
    return mean, math.sqrt(var)


def random_graph(n: int, p: float, rng: Union[random.Random, int, None] = None) -> Graph:
    """Uniform G(n, p) sample."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges, name=f"G({n},{p})")


# --- DIMACS ASCII -----------------------------------------------------------

def parse_dimacs_ascii(text: Union[str, Iterable[str]], name: str = "") -> Graph:
    """Parse the ``p edge`` / ``e u v`` ASCII format.

    Duplicate edges (including reversed ones) are merged with a warning;
    self-loops and out-of-range ids raise :class:`DimacsFormatError`.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    n = declared_m = None
    matrix = None
    duplicates = 0
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise DimacsFormatError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsFormatError(f"line {lineno}: malformed problem line {line!r}")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsFormatError(f"line {lineno}: malformed problem line {line!r}") from None
            if n < 0 or declared_m < 0:
                raise DimacsFormatError(f"line {lineno}: negative counts in {line!r}")
            matrix = [bytearray(n) for _ in range(n)]
        elif tag == "e":
            if matrix is None:
                raise DimacsFormatError(f"line {lineno}: edge line before problem line")
            if len(parts) != 3:
                raise DimacsFormatError(f"line {lineno}: malformed edge line {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise DimacsFormatError(f"line {lineno}: malformed edge line {line!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsFormatError(
                    f"line {lineno}: vertex index out of range [1, {n}] in {line!r}"
                )
            if u == v:
                raise DimacsFormatError(f"line {lineno}: self-loop on vertex {u}")
            u -= 1
            v -= 1
            if matrix[u][v]:
                duplicates += 1
            matrix[u][v] = 1
            matrix[v][u] = 1
        else:
            raise DimacsFormatError(f"line {lineno}: unrecognised line {line!r}")
    if matrix is None:
        raise DimacsFormatError("missing problem line 'p edge <n> <m>'")
    g = Graph(n, matrix, name)
    if duplicates:
        log.warning("%s: merged %d duplicate edge line(s)", name or "graph", duplicates)
    if g.m != declared_m:
        log.warning("%s: problem line declares %d edges, found %d distinct",
                    name or "graph", declared_m, g.m)
    return g


def format_dimacs_ascii(g: Graph, comments: Sequence[str] = ()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p edge {g.n} {g.m}")
    out.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(out) + "\n"


# --- DIMACS binary ----------------------------------------------------------

def parse_dimacs_binary(data: bytes, name: str = "") -> Graph:
    """Parse the packed lower-triangular DIMACS binary format (``.clq.b``)."""
    nl = data.find(b"\n")
    if nl < 0:
        raise DimacsFormatError("truncated stream: no preamble length line")
    try:
        preamble_len = int(data[:nl].decode("ascii").strip())
    except ValueError:
        raise DimacsFormatError("first line must be the decimal preamble length") from None
    start = nl + 1
    if len(data) < start + preamble_len:
        raise DimacsFormatError("truncated stream: preamble shorter than declared")
    preamble = data[start:start + preamble_len].decode("ascii", errors="replace")
    n = declared_m = None
    for line in preamble.splitlines():
        parts = line.split()
        if parts and parts[0] == "p":
            if len(parts) != 4:
                raise DimacsFormatError(f"malformed problem line {line!r}")
            n, declared_m = int(parts[2]), int(parts[3])
            break
    if n is None:
        raise DimacsFormatError("preamble has no problem line")
    pos = start + preamble_len
    matrix = [bytearray(n) for _ in range(n)]
    for i in range(n):
        width = i // 8 + 1
        row = data[pos:pos + width]
        if len(row) < width:
            raise DimacsFormatError(f"truncated stream: row {i} of {n} incomplete")
        pos += width
        for j in range(i + 1):
            if row[j >> 3] & (0x80 >> (j & 7)):
                if j == i:
                    raise DimacsFormatError(f"self-loop on vertex {i + 1}")
                matrix[i][j] = 1
                matrix[j][i] = 1
    g = Graph(n, matrix, name)
    if g.m != declared_m:
        log.warning("%s: problem line declares %d edges, found %d",
                    name or "graph", declared_m, g.m)
    return g


def format_dimacs_binary(g: Graph, comments: Sequence[str] = ()) -> bytes:
    preamble = "".join(f"c {c}\n" for c in comments) + f"p edge {g.n} {g.m}\n"
    pre = preamble.encode("ascii")
    out = bytearray(f"{len(pre)}\n".encode("ascii"))
    out += pre
    for i in range(g.n):
        row = bytearray(i // 8 + 1)
        mrow = g.matrix[i]
        for j in range(i):
            if mrow[j]:
                row[j >> 3] |= 0x80 >> (j & 7)
        out += row
    return bytes(out)


def load_graph(path: Union[str, Path], binary: Optional[bool] = None) -> Graph:
    """Read a DIMACS file; binary encoding is assumed for ``*.b`` unless told otherwise."""
    path = Path(path)
    if binary is None:
        binary = path.suffix == ".b"
    name = path.name[:-2] if binary and path.name.endswith(".b") else path.name
    if name.endswith(".clq"):
        name = name[:-4]
    if binary:
        return parse_dimacs_binary(path.read_bytes(), name=name)
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        return parse_dimacs_ascii(fh, name=name)
