"""Explicit distance-equalizer sets for Johnson and Kneser families.

Each builder returns a ``NamedConstruction`` carrying the subsets, the
claimed cardinality (exact value or upper bound only) and the basis of the
claim.  Claims are never trusted: ``verify_construction`` re-checks the set
against the definition and certifies optimality only when one of this
package's own lower bounds matches the set size.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .bounds import forced_matching_lb
from .equalizer import Certificate, build_instance, is_distance_equalizer
from .families import (KSubset, SubsetIndex, formula_distance_matrix,
                       subset_label)

# Instance construction is quadratic in the vertex count; beyond this many
# pairs the matching-based certification is skipped rather than attempted.
_CERTIFY_PAIR_CAP = 500_000


@dataclass(frozen=True)
class NamedConstruction:
    """A candidate distance-equalizer set with its claimed cardinality."""

    family: str                      # johnson2 | johnson3 | halved | kneser2
    n: int                           # ground-set size
    k: int                           # subset size
    subsets: tuple[KSubset, ...]
    claimed_value: int | None        # claimed exact optimum
    claimed_upper: int | None        # claimed upper bound only
    basis: str                       # where the claim comes from
    hypothesis_met: bool = True      # False when built outside the claim's range

    def labels(self) -> list[str]:
        return [s.label() for s in self.subsets]

    def spec_text(self) -> str:
        param = self.k if self.family == "halved" else self.n
        return f"{self.family}:{param}"

    def graph_order(self) -> int:
        return math.comb(self.n, self.k)

    def pair_count(self) -> int:
        order = self.graph_order()
        return order * (order - 1) // 2


def _triangle(n: int) -> tuple[KSubset, ...]:
    return (KSubset.from_elements(n, (1, 2)),
            KSubset.from_elements(n, (1, 3)),
            KSubset.from_elements(n, (2, 3)))


def johnson2_set(n: int) -> NamedConstruction:
    """Optimal set for J(n,2): a disjoint pair for n = 4, the triangle
    {1,2},{1,3},{2,3} for n >= 5."""
    if n < 4:
        raise ValueError(f"johnson2 construction needs n >= 4, got {n}")
    if n == 4:
        subsets = (KSubset.from_elements(4, (1, 2)), KSubset.from_elements(4, (3, 4)))
        return NamedConstruction("johnson2", 4, 2, subsets, 2, None,
                                 "exhaustive enumeration at n=4")
    basis = ("exhaustive enumeration at n=5" if n == 5
             else "triangle construction, exact for n >= 6")
    return NamedConstruction("johnson2", n, 2, _triangle(n), 3, None, basis)


def johnson3_set(n: int) -> NamedConstruction:
    """Upper-bound set for J(n,3): the n-2 triples {1,2,j}, 3 <= j <= n.

    The n-2 bound is claimed for n >= 9; smaller n are allowed with a
    warning so the breaking point is observable (the recipe fails at n=8).
    """
    if n < 6:
        raise ValueError(f"johnson3 construction needs n >= 6, got {n}")
    hypothesis_met = n >= 9
    if not hypothesis_met:
        warnings.warn(f"johnson3 set built for n={n}; the n-2 bound is only "
                      "claimed for n >= 9", stacklevel=2)
    subsets = tuple(KSubset.from_elements(n, (1, 2, j)) for j in range(3, n + 1))
    return NamedConstruction("johnson3", n, 3, subsets, None, n - 2,
                             "triples through {1,2}, bound for n >= 9",
                             hypothesis_met)


def halved_partition_set(k: int) -> NamedConstruction:
    """Optimal set for J(2k,k), odd k: all k-subsets with majority in {1..k}."""
    if k < 3 or k % 2 == 0:
        raise ValueError(f"halved construction needs odd k >= 3, got {k}")
    n = 2 * k
    low_half = (1 << k) - 1
    majority = k // 2 + 1
    subsets = tuple(KSubset(n, mask) for mask in SubsetIndex(n, k).masks
                    if (mask & low_half).bit_count() >= majority)
    return NamedConstruction("halved", n, k, subsets, math.comb(n, k) // 2, None,
                             "majority-half partition, exact for odd k")


def kneser2_set(n: int) -> NamedConstruction:
    """Optimal set for K(n,2): the triangle {1,2},{1,3},{2,3}."""
    if n < 5:
        raise ValueError(f"kneser2 construction needs n >= 5, got {n}")
    return NamedConstruction("kneser2", n, 2, _triangle(n), 3, None,
                             "triangle construction, exact for n >= 5")


_BUILDERS = {"johnson2": johnson2_set, "johnson3": johnson3_set,
             "halved": halved_partition_set, "kneser2": kneser2_set}


def parse_construction_spec(spec: str) -> NamedConstruction:
    """Parse 'johnson2:n', 'johnson3:n', 'halved:k', 'kneser2:n'."""
    name, sep, rest = spec.partition(":")
    name = name.strip().lower()
    if name not in _BUILDERS or not sep:
        raise ValueError(f"unknown construction spec {spec!r}; expected one of "
                         + ", ".join(f"'{b}:<param>'" for b in sorted(_BUILDERS)))
    try:
        param = int(rest)
    except ValueError as exc:
        raise ValueError(f"malformed parameter in construction spec {spec!r}") from exc
    return _BUILDERS[name](param)


@dataclass(frozen=True)
class ConstructionReport:
    """Verification outcome for a named construction."""

    construction: NamedConstruction
    certificate: Certificate
    graph_order: int
    lower: int | None
    lower_rule: str | None
    certified: bool
    note: str

    def to_json_dict(self) -> dict:
        c = self.construction
        out = self.certificate.to_json_dict(
            [subset_label(m) for m in SubsetIndex(c.n, c.k).masks])
        out["construction"] = {
            "family": c.family, "n": c.n, "k": c.k,
            "size": len(c.subsets),
            "claimed_value": c.claimed_value,
            "claimed_upper": c.claimed_upper,
            "basis": c.basis,
            "hypothesis_met": c.hypothesis_met,
        }
        out["graph_order"] = self.graph_order
        out["lower_bound"] = self.lower
        out["lower_rule"] = self.lower_rule
        out["optimality_certified"] = self.certified
        out["note"] = self.note
        return out


def _family_max_degree(family: str, n: int, k: int) -> int:
    if family == "kneser2":
        return math.comb(n - k, k)
    return k * (n - k)


def verify_construction(c: NamedConstruction) -> ConstructionReport:
    """Check a construction on its target graph and try to certify optimality.

    Distances come from the closed forms (cross-validated against BFS in the
    test suite), so verification scales to the larger ground sets.  A claim
    is certified only when a lower bound computed here matches the set size.
    """
    idx = SubsetIndex(c.n, c.k)
    kind = "kneser2" if c.family == "kneser2" else "johnson"
    dm = formula_distance_matrix(idx, kind)
    members = [idx.rank(s) for s in c.subsets]
    cert = is_distance_equalizer(dm, members)

    order = len(idx)
    size = len(c.subsets)
    lower: int | None = None
    lower_rule: str | None = None
    dmax = _family_max_degree(c.family, c.n, c.k)
    if size <= 2:
        if dmax == order - size:
            lower, lower_rule = size, ("universal vertex" if size == 1
                                       else "max degree = n-2")
    elif size == 3:
        if dmax < order - 2:
            lower, lower_rule = 3, "degree gap (max degree < n-2)"
    elif c.pair_count() <= _CERTIFY_PAIR_CAP:
        lower = forced_matching_lb(build_instance(dm))
        lower_rule = "forced-pair matching"

    certified = bool(cert.valid and c.claimed_value is not None
                     and lower == size)
    if not cert.valid:
        note = f"set is not a distance-equalizer set (first failure {cert.violation})"
    elif certified:
        note = f"optimality certified: {lower_rule} gives lower bound {lower} = |set|"
    elif c.claimed_value is None:
        note = f"upper bound only: eqdim <= {size}"
    elif lower is None:
        note = "valid, optimality not certified (no applicable lower bound)"
    else:
        note = f"valid, optimality not certified (best lower bound {lower} < {size})"
    return ConstructionReport(c, cert, order, lower, lower_rule, certified, note)
