"""Immutable simple-graph core: bitset adjacency, BFS distances, degree stats.

Vertices are dense 0-based indices. Adjacency rows are fixed-capacity
bitsets (``VertexSet``), which keeps membership tests, intersections and
popcounts cheap for the covering search built on top of this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

# Sentinel for unreachable vertex pairs.  It is a reserved maximal value and
# must never enter distance arithmetic; diameter() and the equalizer layer
# raise instead of computing with it.
UNREACHED = int(np.iinfo(np.int32).max)


class DisconnectedGraphError(ValueError):
    """Raised when an operation requires a connected graph."""


class VertexSet:
    """Fixed-capacity set of vertex indices backed by an int bitmask."""

    __slots__ = ("capacity", "bits")

    def __init__(self, capacity: int, bits: int = 0):
        if capacity < 0:
            raise ValueError("capacity must be non-negative")
        if bits < 0 or bits >> capacity:
            raise ValueError(f"bitmask {bits:#x} outside capacity {capacity}")
        self.capacity = capacity
        self.bits = bits

    @classmethod
    def from_indices(cls, capacity: int, indices: Iterable[int]) -> "VertexSet":
        bits = 0
        for v in indices:
            if not 0 <= v < capacity:
                raise ValueError(f"vertex {v} outside range 0..{capacity - 1}")
            bits |= 1 << v
        return cls(capacity, bits)

    @classmethod
    def full(cls, capacity: int) -> "VertexSet":
        return cls(capacity, (1 << capacity) - 1)

    def _check_same(self, other: "VertexSet") -> None:
        if self.capacity != other.capacity:
            raise ValueError("VertexSet capacity mismatch")

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.capacity and (self.bits >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, VertexSet)
                and self.capacity == other.capacity and self.bits == other.bits)

    def __hash__(self) -> int:
        return hash((self.capacity, self.bits))

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check_same(other)
        return VertexSet(self.capacity, self.bits & other.bits)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check_same(other)
        return VertexSet(self.capacity, self.bits | other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check_same(other)
        return VertexSet(self.capacity, self.bits & ~other.bits)

    def __xor__(self, other: "VertexSet") -> "VertexSet":
        self._check_same(other)
        return VertexSet(self.capacity, self.bits ^ other.bits)

    def complement(self) -> "VertexSet":
        return VertexSet(self.capacity, ~self.bits & ((1 << self.capacity) - 1))

    def indices(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"VertexSet({self.capacity}, {{{', '.join(map(str, self))}}})"


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    Construction validates the simple-graph invariants (no self-loops,
    symmetric adjacency, members in range).  Instances are safe to share
    across threads.
    """

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, adj_bits: Sequence[int],
                 labels: Sequence[str] | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(adj_bits) != n:
            raise ValueError("adjacency must have one row per vertex")
        if labels is not None and len(labels) != n:
            raise ValueError("labels must have one entry per vertex")
        for v, row in enumerate(adj_bits):
            if row < 0 or row >> n:
                raise ValueError(f"adjacency row {v} has members outside 0..{n - 1}")
            if (row >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for v, row in enumerate(adj_bits):
            bits = row
            while bits:
                low = bits & -bits
                u = low.bit_length() - 1
                bits ^= low
                if not (adj_bits[u] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        self.n = n
        self.adj = tuple(VertexSet(n, row) for row in adj_bits)
        self.labels = tuple(labels) if labels is not None else None

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def edges(self) -> list[tuple[int, int]]:
        """Sorted edge list (u, v) with u < v."""
        out = []
        for u in range(self.n):
            bits = self.adj[u].bits >> (u + 1)
            v = u + 1
            while bits:
                if bits & 1:
                    out.append((u, v))
                bits >>= 1
                v += 1
        return out

    def edge_count(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"


def from_edge_list(n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> Graph:
    """Build a graph from (u, v) pairs; duplicates collapse, self-loops are rejected."""
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise ValueError(f"self-loop ({u}, {v}) is not allowed in a simple graph")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, adj, labels)


def _bfs_reach(adj_bits: Sequence[int], source: int) -> int:
    """Bitmask of all vertices reachable from source."""
    visited = 1 << source
    frontier = visited
    while frontier:
        nxt = 0
        bits = frontier
        while bits:
            low = bits & -bits
            nxt |= adj_bits[low.bit_length() - 1]
            bits ^= low
        frontier = nxt & ~visited
        visited |= frontier
    return visited


def _bfs_distances(adj_bits: Sequence[int], n: int, source: int) -> list[int]:
    dist = [UNREACHED] * n
    visited = 1 << source
    frontier = visited
    d = 0
    while frontier:
        bits = frontier
        nxt = 0
        while bits:
            low = bits & -bits
            v = low.bit_length() - 1
            dist[v] = d
            nxt |= adj_bits[v]
            bits ^= low
        frontier = nxt & ~visited
        visited |= frontier
        d += 1
    return dist


def is_connected(g: Graph) -> bool:
    """True iff one BFS from vertex 0 reaches all n vertices."""
    if g.n == 0:
        raise ValueError("connectivity is undefined for the empty graph")
    adj_bits = [s.bits for s in g.adj]
    return _bfs_reach(adj_bits, 0).bit_count() == g.n


def component_count(g: Graph) -> int:
    """Number of connected components."""
    adj_bits = [s.bits for s in g.adj]
    remaining = (1 << g.n) - 1
    count = 0
    while remaining:
        src = (remaining & -remaining).bit_length() - 1
        remaining &= ~_bfs_reach(adj_bits, src)
        count += 1
    return count


@dataclass(frozen=True)
class DistanceMatrix:
    """Dense n x n matrix of shortest-path hop counts (UNREACHED sentinel)."""

    n: int
    d: np.ndarray

    def __post_init__(self):
        self.d.setflags(write=False)

    @property
    def complete(self) -> bool:
        """True when every pair is reachable."""
        return not bool((self.d == UNREACHED).any())

    def __getitem__(self, uv: tuple[int, int]) -> int:
        return int(self.d[uv])


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """All-pairs shortest path lengths via one BFS sweep per vertex."""
    adj_bits = [s.bits for s in g.adj]
    mat = np.empty((g.n, g.n), dtype=np.int32)
    for src in range(g.n):
        mat[src] = _bfs_distances(adj_bits, g.n, src)
    return DistanceMatrix(g.n, mat)


@dataclass(frozen=True)
class DegreeStats:
    max_degree: int
    min_degree: int
    is_regular: bool
    regular_degree: int | None


def degree_stats(g: Graph) -> DegreeStats:
    """Max/min degree and regularity of a graph."""
    if g.n == 0:
        raise ValueError("degree stats are undefined for the empty graph")
    degs = [g.degree(v) for v in range(g.n)]
    dmax, dmin = max(degs), min(degs)
    return DegreeStats(dmax, dmin, dmax == dmin, dmax if dmax == dmin else None)


def diameter(dm: DistanceMatrix) -> int:
    """Maximum finite distance; raises on disconnected input."""
    if not dm.complete:
        raise DisconnectedGraphError("diameter is undefined for a disconnected graph")
    return int(dm.d.max())


# ---------------------------------------------------------------------------
# File formats: JSON graphs and plain edge-list text.

def graph_to_json_dict(g: Graph, family: str | None = None) -> dict:
    out: dict = {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}
    if g.labels is not None:
        out["labels"] = list(g.labels)
    if family is not None:
        out["family"] = family
    return out


def graph_from_json_dict(data: dict) -> Graph:
    try:
        n = int(data["n"])
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed JSON graph: {exc}") from exc
    labels = data.get("labels")
    if labels is not None:
        labels = [str(x) for x in labels]
    return from_edge_list(n, edges, labels)


def parse_edge_list_text(text: str) -> Graph:
    """Parse the 'n m' + one 'u v' line per edge text format."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty edge-list input")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("edge-list header must be 'n m'")
    n, m = int(header[0]), int(header[1])
    if len(lines) - 1 != m:
        raise ValueError(f"header announces {m} edges but {len(lines) - 1} lines follow")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return from_edge_list(n, edges)


def format_edge_list_text(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def load_graph(path: str | Path) -> Graph:
    """Load a graph file, sniffing JSON vs edge-list text."""
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return graph_from_json_dict(json.loads(text))
    return parse_edge_list_text(text)
