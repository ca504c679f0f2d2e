"""Distance-equalizer sets: verification, equidistant sets, pair-covering view.

A set S is a distance-equalizer set when every pair of distinct vertices
outside S has some member of S equidistant from both.  Equivalently, S must
intersect H(u,v) = {u,v} + uWv for every unordered pair, where uWv is the
set of vertices equidistant from u and v.  ``build_instance`` materializes
that covering view; the exact solver and the bound oracles run on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import DisconnectedGraphError, DistanceMatrix, VertexSet

PairKey = tuple[int, int]

# Row cap for the chunked verification; bounds the (rows, q, |S|) temporary.
_VERIFY_CHUNK_CELLS = 8_000_000


@dataclass(frozen=True)
class Certificate:
    """Outcome of verifying a candidate distance-equalizer set."""

    vertex_set: VertexSet
    valid: bool
    violation: PairKey | None = None

    def __post_init__(self):
        if self.valid == (self.violation is not None):
            raise ValueError("exactly one of valid / violation must hold")

    def to_json_dict(self, labels: Sequence[str] | None = None) -> dict:
        members = self.vertex_set.indices()
        return {
            "set": members,
            "labels": [labels[v] if labels is not None else str(v) for v in members],
            "valid": self.valid,
            "violation": list(self.violation) if self.violation is not None else None,
        }


def _require_complete(dm: DistanceMatrix, what: str) -> None:
    if not dm.complete:
        raise DisconnectedGraphError(f"{what} requires a connected graph "
                                     "(distance matrix has unreachable pairs)")


def equidistant_set(dm: DistanceMatrix, u: int, v: int) -> VertexSet:
    """uWv: all vertices x with d(u,x) = d(v,x).

    In a connected graph u and v themselves never qualify (d(u,u) = 0 while
    d(v,u) > 0), so no explicit exclusion is needed.
    """
    if u == v:
        raise ValueError("equidistant set needs two distinct vertices")
    _require_complete(dm, "equidistant_set")
    bits = 0
    for x in np.flatnonzero(dm.d[u] == dm.d[v]):
        bits |= 1 << int(x)
    return VertexSet(dm.n, bits)


def _as_vertex_set(n: int, s: VertexSet | Iterable[int]) -> VertexSet:
    if isinstance(s, VertexSet):
        if s.capacity != n:
            raise ValueError(f"vertex set capacity {s.capacity} != graph order {n}")
        return s
    return VertexSet.from_indices(n, s)


def is_distance_equalizer(dm: DistanceMatrix, s: VertexSet | Iterable[int]) -> Certificate:
    """Verify S against the definition; reports the first failing pair.

    The violation, when present, is the lexicographically smallest failing
    (u, v) with u < v, which keeps diagnostics and golden outputs stable.
    """
    _require_complete(dm, "distance-equalizer verification")
    vs = _as_vertex_set(dm.n, s)
    outside = [v for v in range(dm.n) if v not in vs]
    q = len(outside)
    if q < 2:
        return Certificate(vs, True)
    members = vs.indices()
    dout = dm.d[np.ix_(outside, members)] if members else \
        np.empty((q, 0), dtype=dm.d.dtype)
    block = max(1, _VERIFY_CHUNK_CELLS // (q * max(1, len(members))))
    for i0 in range(0, q - 1, block):
        i1 = min(i0 + block, q - 1)
        # eq[a, b] = some member of S equidistant from outside[i0+a], outside[b]
        eq = (dout[i0:i1, None, :] == dout[None, :, :]).any(axis=2)
        for a in range(i1 - i0):
            i = i0 + a
            bad = np.flatnonzero(~eq[a, i + 1:])
            if bad.size:
                j = i + 1 + int(bad[0])
                return Certificate(vs, False, (outside[i], outside[j]))
    return Certificate(vs, True)


class EqualizerInstance:
    """Covering view of a connected graph: one hitter set H(u,v) per pair.

    Pairs are indexed in lexicographic (u, v) order with u < v.  Hitter sets
    and the transposed per-vertex pair coverage are stored as packed uint64
    words so both search kernels can consume them directly.
    """

    def __init__(self, dist: DistanceMatrix, hitter_words: np.ndarray,
                 pair_hit_words: np.ndarray, hitter_sizes: np.ndarray):
        self.dist = dist
        self.n = dist.n
        self.m = self.n * (self.n - 1) // 2
        self.words_per_vertex_row = hitter_words.shape[1]
        self.words_per_pair_row = pair_hit_words.shape[1]
        self.hitter_words = hitter_words
        self.pair_hit_words = pair_hit_words
        self.hitter_sizes = hitter_sizes
        us, vs = np.triu_indices(self.n, 1)
        self._us = us.astype(np.int32)
        self._vs = vs.astype(np.int32)
        self._hitter_ints: list[int] | None = None
        self._pair_hit_ints: list[int] | None = None

    def pair_index(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        if u == v or not 0 <= u < self.n or not 0 <= v < self.n:
            raise ValueError(f"invalid pair ({u}, {v})")
        return u * (2 * self.n - u - 1) // 2 + (v - u - 1)

    def pair_at(self, p: int) -> PairKey:
        return int(self._us[p]), int(self._vs[p])

    @property
    def pairs(self) -> list[PairKey]:
        return [(int(u), int(v)) for u, v in zip(self._us, self._vs)]

    def hitter(self, u: int, v: int) -> VertexSet:
        return VertexSet(self.n, self.hitter_ints[self.pair_index(u, v)])

    @property
    def hitter_ints(self) -> list[int]:
        """Hitter sets as Python int masks (lazy; used by greedy and fallback kernel)."""
        if self._hitter_ints is None:
            self._hitter_ints = [int.from_bytes(row.tobytes(), "little")
                                 for row in self.hitter_words]
        return self._hitter_ints

    @property
    def pair_hit_ints(self) -> list[int]:
        """Per-vertex masks over pair indices (lazy)."""
        if self._pair_hit_ints is None:
            self._pair_hit_ints = [int.from_bytes(row.tobytes(), "little")
                                   for row in self.pair_hit_words]
        return self._pair_hit_ints

    def forced_pairs(self) -> list[PairKey]:
        """Pairs whose hitter set is exactly {u, v} (empty uWv)."""
        return [self.pair_at(int(p)) for p in np.flatnonzero(self.hitter_sizes == 2)]

    def is_hitting(self, s: VertexSet | Iterable[int]) -> bool:
        """True iff S intersects every hitter set."""
        bits = _as_vertex_set(self.n, s).bits
        return all(h & bits for h in self.hitter_ints)


def build_instance(dm: DistanceMatrix) -> EqualizerInstance:
    """Materialize H(u,v) = {u,v} + uWv for all pairs of a connected graph."""
    _require_complete(dm, "covering-instance construction")
    n = dm.n
    d = dm.d
    m = n * (n - 1) // 2
    W = max(1, (n + 63) // 64)
    PW = max(1, (m + 63) // 64)
    hitter_words = np.zeros((m, W), dtype=np.uint64)
    row_bytes = W * 8
    p0 = 0
    for u in range(n - 1):
        rows = n - u - 1
        eq = d[u + 1:] == d[u]
        eq[:, u] = True
        eq[np.arange(rows), np.arange(u + 1, n)] = True
        packed = np.packbits(eq, axis=1, bitorder="little")
        buf = np.zeros((rows, row_bytes), dtype=np.uint8)
        buf[:, :packed.shape[1]] = packed
        hitter_words[p0:p0 + rows] = buf.view(np.uint64)
        p0 += rows
    pair_hit_words = np.zeros((n, PW), dtype=np.uint64)
    if m:
        pw_bytes = PW * 8
        for v in range(n):
            col = hitter_words[:, v >> 6] >> np.uint64(v & 63)
            packed = np.packbits((col & np.uint64(1)).astype(np.uint8),
                                 bitorder="little")
            buf = np.zeros(pw_bytes, dtype=np.uint8)
            buf[:packed.size] = packed
            pair_hit_words[v] = buf.view(np.uint64)
    sizes = np.bitwise_count(hitter_words).sum(axis=1).astype(np.int32) if m else \
        np.zeros(0, dtype=np.int32)
    return EqualizerInstance(dm, hitter_words, pair_hit_words, sizes)


def hitting_equivalence_check(dm: DistanceMatrix, s: VertexSet | Iterable[int]) -> bool:
    """Testable identity: definition-based validity == hitting all H(u,v).

    Both sides are computed independently; the result is True on every
    connected graph and every subset.
    """
    definition_side = is_distance_equalizer(dm, s).valid
    covering_side = build_instance(dm).is_hitting(s)
    return definition_side == covering_side
