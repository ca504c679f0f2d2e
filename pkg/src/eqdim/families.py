"""Johnson and Kneser graph generators with closed-form distance oracles.

Vertices of J(n,k) and K(n,k) are the k-subsets of {1..n}.  Internally a
subset is a bitmask over 0-based positions (bit i = element i+1); labels
use the 1-based set notation "{1,2,3}".  Vertex indices follow the
colexicographic mask order, which for fixed popcount coincides with
ascending numeric mask order, so the indexing is stable across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .graph import Graph


@dataclass(frozen=True)
class KSubset:
    """A k-subset of {1..n} stored as a bitmask over positions 0..n-1."""

    n: int
    mask: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("ground set must have at least 2 elements")
        if self.mask <= 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} outside ground set of size {self.n}")
        if self.mask.bit_count() >= self.n:
            raise ValueError("a k-subset must be a proper nonempty subset")

    @classmethod
    def from_elements(cls, n: int, elements) -> "KSubset":
        mask = 0
        for e in elements:
            if not 1 <= e <= n:
                raise ValueError(f"element {e} outside ground set 1..{n}")
            mask |= 1 << (e - 1)
        return cls(n, mask)

    @property
    def k(self) -> int:
        return self.mask.bit_count()

    def elements(self) -> tuple[int, ...]:
        """Members as ascending 1-based integers."""
        out = []
        bits = self.mask
        while bits:
            low = bits & -bits
            out.append(low.bit_length())
            bits ^= low
        return tuple(out)

    def label(self) -> str:
        return "{" + ",".join(map(str, self.elements())) + "}"

    def complement(self) -> "KSubset":
        return KSubset(self.n, ~self.mask & ((1 << self.n) - 1))


def subset_label(mask: int) -> str:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return "{" + ",".join(map(str, out)) + "}"


def parse_subset_label(text: str, n: int) -> KSubset:
    """Parse "{1,2,3}" (braces optional) into a KSubset of {1..n}."""
    body = text.strip().removeprefix("{").removesuffix("}")
    if not body:
        raise ValueError(f"empty subset label: {text!r}")
    try:
        elems = [int(tok) for tok in body.split(",")]
    except ValueError as exc:
        raise ValueError(f"malformed subset label {text!r}") from exc
    return KSubset.from_elements(n, elems)


def _k_subset_masks(n: int, k: int) -> list[int]:
    """All k-subset masks of an n-element ground set in ascending (colex) order."""
    masks = []
    m = (1 << k) - 1
    limit = 1 << n
    while m < limit:
        masks.append(m)
        c = m & -m
        r = m + c
        m = (((r ^ m) >> 2) // c) | r
    return masks


def colex_rank(mask: int) -> int:
    """Colexicographic rank of a subset mask among subsets of its cardinality."""
    rank = 0
    i = 1
    bits = mask
    while bits:
        low = bits & -bits
        rank += math.comb(low.bit_length() - 1, i)
        i += 1
        bits ^= low
    return rank


class SubsetIndex:
    """Bidirectional map between k-subsets of {1..n} and dense vertex indices.

    The enumeration order is colexicographic on masks and is frozen: index i
    always denotes the same subset for given (n, k).
    """

    def __init__(self, n: int, k: int):
        if not 0 < k < n:
            raise ValueError(f"need 0 < k < n, got k={k}, n={n}")
        self.n = n
        self.k = k
        self.masks = _k_subset_masks(n, k)
        self._rank = {m: i for i, m in enumerate(self.masks)}

    def __len__(self) -> int:
        return len(self.masks)

    def unrank(self, i: int) -> KSubset:
        return KSubset(self.n, self.masks[i])

    def rank(self, s: KSubset | int) -> int:
        mask = s.mask if isinstance(s, KSubset) else s
        try:
            return self._rank[mask]
        except KeyError:
            raise ValueError(f"{subset_label(mask)} is not a {self.k}-subset "
                             f"of {{1..{self.n}}}") from None

    def labels(self) -> list[str]:
        return [subset_label(m) for m in self.masks]


def _validate_nk(n: int, k: int) -> None:
    if k < 1:
        raise ValueError(f"subset size must be at least 1, got {k}")
    if n <= k:
        raise ValueError(f"ground size must exceed subset size, got n={n}, k={k}")


def johnson(n: int, k: int) -> tuple[Graph, SubsetIndex]:
    """Johnson graph J(n,k): k-subsets adjacent when their intersection has size k-1."""
    _validate_nk(n, k)
    idx = SubsetIndex(n, k)
    full = (1 << n) - 1
    adj = [0] * len(idx)
    for i, a in enumerate(idx.masks):
        inside = a
        while inside:
            drop = inside & -inside
            inside ^= drop
            outside = full & ~a
            while outside:
                add = outside & -outside
                outside ^= add
                adj[i] |= 1 << idx._rank[(a ^ drop) | add]
    return Graph(len(idx), adj, idx.labels()), idx


def kneser(n: int, k: int) -> tuple[Graph, SubsetIndex]:
    """Kneser graph K(n,k): k-subsets adjacent when disjoint.

    Generated for any n > k; outputs with n <= 2k are disconnected (or
    edgeless) and are rejected later by connectivity gating, matching the
    tabulated treatment of K(8,4).
    """
    _validate_nk(n, k)
    idx = SubsetIndex(n, k)
    adj = [0] * len(idx)
    if n >= 2 * k:
        positions = list(range(n))
        for i, a in enumerate(idx.masks):
            outside = [p for p in positions if not (a >> p) & 1]
            for sub in _k_subset_masks(n - k, k):
                b = 0
                bits = sub
                while bits:
                    low = bits & -bits
                    b |= 1 << outside[low.bit_length() - 1]
                    bits ^= low
                adj[i] |= 1 << idx._rank[b]
    return Graph(len(idx), adj, idx.labels()), idx


def _check_compatible(a: KSubset, b: KSubset) -> None:
    if a.n != b.n or a.k != b.k:
        raise ValueError(f"subsets from different families: "
                         f"(n={a.n},k={a.k}) vs (n={b.n},k={b.k})")


def johnson_distance(a: KSubset, b: KSubset) -> int:
    """Distance in J(n,k): k minus the intersection size."""
    _check_compatible(a, b)
    return a.k - (a.mask & b.mask).bit_count()


def complement_distance_check(a: KSubset, b: KSubset) -> bool:
    """Testable identity on J(2k,k): d(complement(a), b) == k - d(a, b)."""
    _check_compatible(a, b)
    if a.n != 2 * a.k:
        raise ValueError(f"complement identity needs n = 2k, got n={a.n}, k={a.k}")
    return johnson_distance(a.complement(), b) == a.k - johnson_distance(a, b)


def kneser2_distance(a: KSubset, b: KSubset) -> int:
    """Distance in K(n,2) via the complement relation with J(n,2)."""
    _check_compatible(a, b)
    if a.k != 2:
        raise ValueError("closed-form Kneser distance is only available for k = 2")
    if a.n < 5:
        raise ValueError("K(n,2) is connected only for n >= 5")
    if a.mask == b.mask:
        return 0
    return 3 - johnson_distance(a, b)


def formula_distance_matrix(idx: SubsetIndex, kind: str) -> "DistanceMatrix":
    """Full distance matrix from the closed forms (no BFS).

    kind 'johnson' uses d = k - |A & B|; kind 'kneser2' uses the complement
    relation 3 - d_J for distinct pairs (k = 2 only).
    """
    import numpy as np

    from .graph import DistanceMatrix

    if kind not in ("johnson", "kneser2"):
        raise ValueError(f"unknown distance kind {kind!r}")
    if kind == "kneser2" and idx.k != 2:
        raise ValueError("kneser2 distances need k = 2")
    m = len(idx)
    words_per_row = (idx.n + 63) // 64
    nbytes = words_per_row * 8
    words = np.zeros((m, words_per_row), dtype=np.uint64)
    for i, mask in enumerate(idx.masks):
        words[i] = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint64)
    inter = np.zeros((m, m), dtype=np.int32)
    block = max(1, 8_000_000 // max(m, 1))
    for i0 in range(0, m, block):
        i1 = min(i0 + block, m)
        acc = np.zeros((i1 - i0, m), dtype=np.int32)
        for w in range(words_per_row):
            acc += np.bitwise_count(words[i0:i1, w, None] & words[None, :, w])
        inter[i0:i1] = acc
    dist = idx.k - inter
    if kind == "kneser2":
        dist = 3 - dist
        np.fill_diagonal(dist, 0)
    return DistanceMatrix(m, dist.astype(np.int32))


# ---------------------------------------------------------------------------
# Small named families used by the extremal results.

def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least 1 vertex")
    return Graph(n, [((1 << (v - 1)) if v > 0 else 0)
                     | ((1 << (v + 1)) if v + 1 < n else 0) for v in range(n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(1 << ((v - 1) % n)) | (1 << ((v + 1) % n)) for v in range(n)])


def star_graph(n: int) -> Graph:
    """Star on n vertices: center 0 adjacent to all leaves."""
    if n < 2:
        raise ValueError("star needs at least 2 vertices")
    full = (1 << n) - 1
    return Graph(n, [full ^ 1] + [1] * (n - 1))


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs at least 1 vertex")
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)])


_NAMED = {"path": path_graph, "cycle": cycle_graph,
          "star": star_graph, "complete": complete_graph}


def named_family(name: str, n: int) -> Graph:
    """One of the standard small families: path, cycle, star, complete."""
    try:
        builder = _NAMED[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; "
                         f"expected one of {sorted(_NAMED)}") from None
    return builder(n)


@dataclass(frozen=True)
class FamilySpec:
    """Parsed CLI family specifier such as 'johnson:7,3' or 'cycle:5'."""

    family: str
    params: tuple[int, ...]

    @cached_property
    def text(self) -> str:
        return f"{self.family}:{','.join(map(str, self.params))}"


def parse_family_spec(spec: str) -> FamilySpec:
    """Parse 'johnson:n,k', 'kneser:n,k', 'path:n', 'cycle:n', 'star:n', 'complete:n'."""
    name, sep, rest = spec.partition(":")
    name = name.strip().lower()
    if not sep or not rest.strip():
        raise ValueError(f"malformed family spec {spec!r} (expected 'name:params')")
    try:
        params = tuple(int(tok) for tok in rest.split(","))
    except ValueError as exc:
        raise ValueError(f"malformed parameters in family spec {spec!r}") from exc
    if name in ("johnson", "kneser"):
        if len(params) != 2:
            raise ValueError(f"{name} spec needs two parameters n,k")
    elif name in _NAMED:
        if len(params) != 1:
            raise ValueError(f"{name} spec needs one parameter n")
    elif name == "random":
        if len(params) not in (2, 3):
            raise ValueError("random spec needs parameters n,p_percent[,seed]")
    else:
        raise ValueError(f"unknown family {name!r} in spec {spec!r}")
    return FamilySpec(name, params)


def build_family(spec: FamilySpec, seed: int = 0) -> Graph:
    """Instantiate a parsed family spec ('random:n,p' uses p in percent)."""
    if spec.family == "johnson":
        return johnson(*spec.params)[0]
    if spec.family == "kneser":
        return kneser(*spec.params)[0]
    if spec.family == "random":
        from .solver import random_connected_graph
        n, p_pct = spec.params[0], spec.params[1]
        actual_seed = spec.params[2] if len(spec.params) == 3 else seed
        return random_connected_graph(n, p_pct / 100.0, actual_seed)
    return named_family(spec.family, spec.params[0])
