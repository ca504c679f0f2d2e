"""Exact equidistant dimension via iterative-deepening branch and bound.

The solver runs on the pair-covering view: a set S is feasible iff it hits
H(u,v) for every vertex pair.  Target sizes are tried in increasing order,
and infeasibility is proven at t before t+1 is accepted, so the optimum
comes with an explicit optimality proof.  Degree and extremal shortcuts
answer without search; greedy and (when available) family constructions
seed the upper bound.

Two interchangeable search kernels exist: ``eqdim._kernel`` (compiled, used
when importable) and ``eqdim._kernel_py`` (pure Python).  They implement
the same search tree and return identical results; set EQDIM_KERNEL=python
or EQDIM_KERNEL=c to force one.
"""

from __future__ import annotations

import itertools
import math
import os
import random
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernel_py
from .bounds import (degree_shortcut, extremal_family_shortcut,
                     forced_matching_lb, greedy_ub, support_vertex_lb)
from .equalizer import EqualizerInstance, build_instance, is_distance_equalizer
from .graph import (DistanceMatrix, Graph, VertexSet, all_pairs_distances,
                    component_count, from_edge_list, is_connected)

try:
    from . import _kernel as _c_kernel
except ImportError:  # compiled extension not built; pure fallback only
    _c_kernel = None

EXHAUSTED, FOUND, ABORTED = 0, 1, 2

OPTIMAL = "optimal"
UPPER_ONLY = "upper_only"
INFEASIBLE_INPUT = "infeasible_input"


def available_kernels() -> list[str]:
    return ["c", "python"] if _c_kernel is not None else ["python"]


def get_kernel(name: str | None = None):
    """Resolve a search kernel by name (default: env override, then compiled)."""
    name = name or os.environ.get("EQDIM_KERNEL") or \
        ("c" if _c_kernel is not None else "python")
    if name == "c":
        if _c_kernel is None:
            raise RuntimeError("compiled kernel requested but not built")
        return _c_kernel
    if name == "python":
        return _kernel_py
    raise ValueError(f"unknown kernel {name!r}; expected 'c' or 'python'")


def kernel_name() -> str:
    return get_kernel().kernel_name()


@dataclass(frozen=True)
class SolveOptions:
    time_limit: float | None = None   # seconds
    node_limit: int | None = None
    initial_upper: int | None = None  # untrusted hint; never skips verification
    threads: int = 1

    def __post_init__(self):
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.node_limit is not None and self.node_limit < 0:
            raise ValueError("node_limit must be non-negative")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


@dataclass(frozen=True)
class SolveReport:
    value: int
    witness: VertexSet | None
    status: str
    nodes: int
    elapsed_s: float
    lower_trace: str
    upper_trace: str

    def to_json_dict(self, labels: Sequence[str] | None = None) -> dict:
        members = self.witness.indices() if self.witness is not None else None
        return {
            "value": self.value,
            "witness": members,
            "witness_labels": None if members is None else
                [labels[v] if labels is not None else str(v) for v in members],
            "status": self.status,
            "nodes": self.nodes,
            "elapsed_s": round(self.elapsed_s, 6),
            "lower_trace": self.lower_trace,
            "upper_trace": self.upper_trace,
        }


def _graph_from_dist(dm: DistanceMatrix) -> Graph:
    """Rebuild adjacency from the d == 1 entries (exact for valid matrices)."""
    us, vs = np.nonzero(np.triu(dm.d == 1))
    return from_edge_list(dm.n, list(zip(us.tolist(), vs.tolist())))


def _verified(inst: EqualizerInstance, members) -> VertexSet:
    vs = members if isinstance(members, VertexSet) else \
        VertexSet.from_indices(inst.n, members)
    cert = is_distance_equalizer(inst.dist, vs)
    if not cert.valid:
        raise RuntimeError(f"internal error: candidate witness fails "
                           f"verification at pair {cert.violation}")
    return vs


def _run_level(kern, inst: EqualizerInstance, t: int, threads: int,
               node_budget: int | None, deadline: float | None):
    """One target size: root split, then sequential or pooled subtree searches.

    Subtrees are explored (or collected) in ascending root-member order, so
    the first witness is identical for every worker count.
    """
    pruned, members = kern.root_branch(inst.hitter_words, inst.pair_hit_words,
                                       inst.n, inst.m, t)
    nodes = 1
    if pruned:
        return EXHAUSTED, None, nodes
    tasks = [(members[i], members[:i]) for i in range(len(members))]
    args = (inst.hitter_words, inst.pair_hit_words, inst.n, inst.m, t)
    if threads <= 1 or len(tasks) == 1:
        for w, excluded in tasks:
            remaining = None if node_budget is None else node_budget - nodes
            if remaining is not None and remaining <= 0:
                return ABORTED, None, nodes
            status, witness, used = kern.subtree_search(
                *args, [w], excluded, remaining, deadline)
            nodes += used
            if status != EXHAUSTED:
                return status, witness, nodes
        return EXHAUSTED, None, nodes
    per_task = None if node_budget is None else \
        max(0, node_budget - nodes) // len(tasks)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(kern.subtree_search, *args, [w], excluded,
                               per_task, deadline)
                   for w, excluded in tasks]
        results = [f.result() for f in futures]
    nodes += sum(r[2] for r in results)
    for status, witness, _ in results:
        if status == FOUND:
            return FOUND, witness, nodes
    if any(r[0] == ABORTED for r in results):
        return ABORTED, None, nodes
    return EXHAUSTED, None, nodes


def solve_exact(inst: EqualizerInstance, opts: SolveOptions | None = None,
                kernel: str | None = None,
                seed_witness: tuple[VertexSet, str] | None = None) -> SolveReport:
    """Minimum distance-equalizer set of a connected graph, with proof.

    ``seed_witness`` may carry a known valid set (e.g. a family
    construction); it is re-verified before use and only tightens the
    upper bound.
    """
    opts = opts or SolveOptions()
    kern = get_kernel(kernel)
    start = time.monotonic()
    deadline = start + opts.time_limit if opts.time_limit is not None else None

    def report(value, witness, status, nodes, lower_trace, upper_trace):
        return SolveReport(value, witness, status, nodes,
                           time.monotonic() - start, lower_trace, upper_trace)

    if inst.m == 0:
        return report(0, VertexSet(inst.n), OPTIMAL, 0,
                      "no vertex pairs", "empty set suffices")

    g = _graph_from_dist(inst.dist)
    shortcut = degree_shortcut(g)
    if shortcut == 1:
        center = max(range(g.n), key=lambda v: (g.degree(v), -v))
        witness = _verified(inst, [center])
        return report(1, witness, OPTIMAL, 0,
                      "universal vertex (value 1 iff max degree = n-1)",
                      "universal vertex witness")
    if shortcut == 2:
        v = next(u for u in range(g.n) if g.degree(u) == g.n - 2)
        w = next(u for u in range(g.n) if u != v and u not in g.adj[v])
        witness = _verified(inst, [v, w])
        return report(2, witness, OPTIMAL, 0,
                      "max degree = n-2 (value 2 iff)",
                      "near-universal vertex plus its non-neighbor")
    extremal = extremal_family_shortcut(g)
    if extremal is not None:
        status, members, nodes = _run_level(kern, inst, extremal, 1, None, None)
        if status != FOUND:
            raise RuntimeError("extremal family shortcut failed to produce a witness")
        return report(extremal, _verified(inst, members), OPTIMAL, nodes,
                      "extremal path/cycle family", "extremal family witness")

    lower_candidates = [
        (1, "nonempty graph"),
        (3, "degree gap (max degree < n-2)"),
        (support_vertex_lb(g), "support vertices"),
        (forced_matching_lb(inst), "forced-pair matching"),
    ]
    lb, lb_rule = max(lower_candidates, key=lambda c: c[0])

    ub_value, ub_set = greedy_ub(inst)
    ub_rule = "greedy cover"
    if seed_witness is not None:
        cand, rule = seed_witness
        if len(cand) < ub_value:
            cert = is_distance_equalizer(inst.dist, cand)
            if cert.valid:
                ub_value, ub_set, ub_rule = len(cand), cand, rule

    nodes_total = 0
    budget = opts.node_limit
    for t in range(lb, ub_value):
        status, members, used = _run_level(kern, inst, t, opts.threads,
                                           budget, deadline)
        nodes_total += used
        if budget is not None:
            budget = max(0, opts.node_limit - nodes_total)
        if status == FOUND:
            return report(t, _verified(inst, members), OPTIMAL, nodes_total,
                          f"search exhausted below {t}; {lb_rule} = {lb}",
                          f"search witness at target {t}")
        if status == ABORTED:
            if deadline is not None and time.monotonic() > deadline:
                reason = "time limit"
            else:
                reason = "node limit"
            return report(ub_value, ub_set, UPPER_ONLY, nodes_total,
                          f"proven >= {t} ({reason} hit while testing {t})",
                          f"{ub_rule} = {ub_value}")
    return report(ub_value, ub_set, OPTIMAL, nodes_total,
                  f"search exhausted below {ub_value}; {lb_rule} = {lb}",
                  f"{ub_rule} = {ub_value}")


def solve_bruteforce(inst: EqualizerInstance, max_size: int | None = None,
                     budget: int = 5_000_000) -> SolveReport:
    """Total enumeration oracle: first verifying subset by increasing size.

    Checks candidates against the bare definition (not the covering view),
    so it cross-validates the branch-and-bound path.  Refuses instances
    whose projected enumeration exceeds ``budget`` candidates.
    """
    start = time.monotonic()
    n = inst.n
    if max_size is None:
        max_size = max(0, n - 1)
    projected = sum(math.comb(n, s) for s in range(max_size + 1))
    if projected > budget:
        raise ValueError(f"enumeration of {projected} candidates exceeds "
                         f"budget {budget}")
    dist_rows = inst.dist.d.tolist()
    checked = 0
    for size in range(max_size + 1):
        for combo in itertools.combinations(range(n), size):
            checked += 1
            if _definition_check(dist_rows, n, combo):
                witness = VertexSet.from_indices(n, combo)
                return SolveReport(size, witness, OPTIMAL, checked,
                                   time.monotonic() - start,
                                   "total enumeration (no smaller subset verifies)",
                                   "total enumeration witness")
    raise ValueError(f"no distance-equalizer set of size <= {max_size}")


def _definition_check(dist_rows: list[list[int]], n: int, members) -> bool:
    inside = set(members)
    for u in range(n):
        if u in inside:
            continue
        du = dist_rows[u]
        for v in range(u + 1, n):
            if v in inside:
                continue
            dv = dist_rows[v]
            if not any(du[x] == dv[x] for x in members):
                return False
    return True


def random_connected_graph(n: int, p: float, seed: int,
                           max_tries: int = 1000) -> Graph:
    """Erdos-Renyi sample conditioned on connectivity, deterministic per seed."""
    if n < 1:
        raise ValueError("need at least one vertex")
    if not 0 < p <= 1:
        raise ValueError("edge probability must be in (0, 1]")
    rng = random.Random(seed)
    for _ in range(max_tries):
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < p]
        g = from_edge_list(n, edges)
        if n == 1 or is_connected(g):
            return g
    raise RuntimeError(f"no connected sample within {max_tries} tries "
                       f"(n={n}, p={p})")


def _construction_seed(family: str, n: int, k: int,
                       dm: DistanceMatrix) -> tuple[VertexSet, str] | None:
    """Best valid known construction for a recognized Johnson/Kneser instance."""
    from .constructions import (halved_partition_set, johnson2_set,
                                johnson3_set, kneser2_set)
    from .families import SubsetIndex

    candidates = []
    if family == "johnson":
        if k == 2 and n >= 4:
            candidates.append(johnson2_set(n))
        if k == 3 and n >= 6:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                candidates.append(johnson3_set(n))
        if n == 2 * k and k % 2 == 1 and k >= 3:
            candidates.append(halved_partition_set(k))
    elif family == "kneser" and k == 2 and n >= 5:
        candidates.append(kneser2_set(n))
    best: tuple[VertexSet, str] | None = None
    if not candidates:
        return None
    idx = SubsetIndex(n, k)
    for c in candidates:
        members = VertexSet.from_indices(len(idx), (idx.rank(s) for s in c.subsets))
        if not is_distance_equalizer(dm, members).valid:
            continue
        if best is None or len(members) < len(best[0]):
            best = (members, f"{c.family} construction")
    return best


def solve_graph(g: Graph, opts: SolveOptions | None = None,
                family_hint: tuple[str, int, int] | None = None,
                kernel: str | None = None) -> SolveReport:
    """Connectivity gate plus instance construction around solve_exact.

    ``family_hint`` = (family, n, k) marks g as a generated Johnson/Kneser
    instance so the matching construction can seed the upper bound.
    """
    start = time.monotonic()
    if g.n == 0:
        raise ValueError("cannot solve the empty graph")
    if not is_connected(g):
        parts = component_count(g)
        return SolveReport(-1, None, INFEASIBLE_INPUT, 0,
                           time.monotonic() - start,
                           f"graph is disconnected ({parts} components)", "")
    dm = all_pairs_distances(g)
    inst = build_instance(dm)
    seed = None
    if family_hint is not None:
        seed = _construction_seed(family_hint[0], family_hint[1],
                                  family_hint[2], dm)
    rep = solve_exact(inst, opts, kernel=kernel, seed_witness=seed)
    return SolveReport(rep.value, rep.witness, rep.status, rep.nodes,
                       time.monotonic() - start, rep.lower_trace, rep.upper_trace)
