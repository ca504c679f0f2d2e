"""Lower and upper bound oracles for the equidistant dimension.

Lower bounds: degree-gap rule (max degree below n-2 forces at least 3),
support-vertex count, and a greedy maximal matching over forced pairs
(pairs with empty uWv need one endpoint in any valid set, and disjoint
forced pairs need distinct vertices).  Upper bounds: order-based caps from
the extremal characterizations plus a verified greedy cover.
"""

from __future__ import annotations

from dataclasses import dataclass

from .equalizer import EqualizerInstance, build_instance, is_distance_equalizer
from .graph import Graph, VertexSet, all_pairs_distances, degree_stats


@dataclass(frozen=True)
class BoundReport:
    lower: int
    lower_rule: str
    upper: int
    upper_rule: str
    exact: int | None = None
    exact_rule: str | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper {self.upper}")
        if self.exact is not None and not self.lower <= self.exact <= self.upper:
            raise ValueError(f"exact value {self.exact} outside "
                             f"[{self.lower}, {self.upper}]")

    def to_json_dict(self) -> dict:
        return {"lower": self.lower, "lower_rule": self.lower_rule,
                "upper": self.upper, "upper_rule": self.upper_rule,
                "exact": self.exact, "exact_rule": self.exact_rule}


def degree_shortcut(g: Graph) -> int | None:
    """Exact value from the maximum degree: 1 iff max degree n-1, 2 iff n-2."""
    if g.n < 2:
        return None
    dmax = degree_stats(g).max_degree
    if dmax == g.n - 1:
        return 1
    if dmax == g.n - 2:
        return 2
    return None


def _degree_counts(g: Graph) -> dict[int, int]:
    counts: dict[int, int] = {}
    for v in range(g.n):
        d = g.degree(v)
        counts[d] = counts.get(d, 0) + 1
    return counts


def _is_path(g: Graph) -> bool:
    # Degree sequence identifies paths among connected graphs.
    if g.n == 1:
        return True
    counts = _degree_counts(g)
    if g.n == 2:
        return counts.get(1, 0) == 2
    return counts.get(1, 0) == 2 and counts.get(2, 0) == g.n - 2


def _is_cycle(g: Graph) -> bool:
    return g.n >= 3 and _degree_counts(g).get(2, 0) == g.n


def extremal_family_shortcut(g: Graph) -> int | None:
    """Exact value for the order-extremal families (connected input assumed).

    The path of order 2 is the unique graph with value n-1; paths of order
    3..6 and cycles of order 3..5 are exactly the graphs with value n-2.
    """
    if g.n == 2 and _is_path(g):
        return g.n - 1
    if 3 <= g.n <= 6 and _is_path(g):
        return g.n - 2
    if 3 <= g.n <= 5 and _is_cycle(g):
        return g.n - 2
    return None


def support_vertex_lb(g: Graph) -> int:
    """Count of support vertices (vertices adjacent to a leaf); a lower bound."""
    supports = 0
    for v in range(g.n):
        if any(g.degree(u) == 1 for u in g.adj[v]):
            supports += 1
    return supports


def forced_matching_lb(inst: EqualizerInstance) -> int:
    """Greedy maximal matching over forced pairs.

    Any valid set contains an endpoint of every forced pair, and matched
    pairs are vertex-disjoint, so the matching size is a sound lower bound.
    Pairs are scanned in lexicographic order for determinism.
    """
    used = 0
    size = 0
    for u, v in inst.forced_pairs():
        if not (used >> u) & 1 and not (used >> v) & 1:
            used |= (1 << u) | (1 << v)
            size += 1
    return size


def greedy_ub(inst: EqualizerInstance) -> tuple[int, VertexSet]:
    """Greedy cover: repeatedly take the vertex hitting the most uncovered pairs.

    Ties break toward the smallest vertex index.  The returned set is
    re-verified against the definition before being reported.
    """
    all_pairs_mask = (1 << inst.m) - 1
    covered = 0
    chosen = 0
    pair_hits = inst.pair_hit_ints
    while covered != all_pairs_mask:
        best_v = -1
        best_gain = 0
        for v in range(inst.n):
            gain = (pair_hits[v] & ~covered).bit_count()
            if gain > best_gain:
                best_gain = gain
                best_v = v
        if best_v < 0:
            raise RuntimeError("greedy cover stalled on an uncoverable pair")
        chosen |= 1 << best_v
        covered |= pair_hits[best_v]
    vs = VertexSet(inst.n, chosen)
    cert = is_distance_equalizer(inst.dist, vs)
    if not cert.valid:
        raise RuntimeError(f"greedy cover produced an invalid set: {cert.violation}")
    return len(vs), vs


def _exact_shortcut(g: Graph) -> tuple[int, str] | None:
    value = degree_shortcut(g)
    if value is not None:
        rule = "universal vertex" if value == 1 else "max degree = n-2"
        return value, rule
    value = extremal_family_shortcut(g)
    if value is not None:
        return value, "extremal path/cycle family"
    return None


def order_upper_bound(g: Graph) -> tuple[int, str]:
    """Order-based cap: n-1 for the 2-path, n-2 for the extremal families, else n-3."""
    n = g.n
    if n <= 1:
        return 0, "trivial (at most one vertex)"
    extremal = extremal_family_shortcut(g)
    if extremal is not None:
        return extremal, "extremal path/cycle family"
    if n == 2:
        return n - 1, "order cap"
    return n - 3, "order cap (not an extremal family)"


def compute_bounds(g: Graph, inst: EqualizerInstance | None = None,
                   include_greedy: bool = True) -> BoundReport:
    """Aggregate all bound oracles into one report with rule provenance."""
    if g.n == 0:
        raise ValueError("bounds are undefined for the empty graph")
    exact = _exact_shortcut(g)
    if exact is not None:
        value, rule = exact
        return BoundReport(value, rule, value, rule, value, rule)
    if inst is None:
        inst = build_instance(all_pairs_distances(g))

    lower_candidates = [(0 if g.n < 2 else 1, "nonempty graph")]
    dmax = degree_stats(g).max_degree
    if g.n >= 2 and dmax < g.n - 2:
        lower_candidates.append((3, "degree gap (max degree < n-2)"))
    lower_candidates.append((support_vertex_lb(g), "support vertices"))
    lower_candidates.append((forced_matching_lb(inst), "forced-pair matching"))
    lower, lower_rule = max(lower_candidates, key=lambda c: c[0])

    upper_candidates = [order_upper_bound(g)]
    if include_greedy:
        value, _ = greedy_ub(inst)
        upper_candidates.append((value, "greedy cover"))
    upper, upper_rule = min(upper_candidates, key=lambda c: c[0])
    return BoundReport(lower, lower_rule, upper, upper_rule)
