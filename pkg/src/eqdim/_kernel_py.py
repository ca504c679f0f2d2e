"""Pure-Python search kernel for the minimum-cover search.

This is the fallback backend; ``eqdim._kernel`` is the compiled twin and
must produce bit-identical results (status, witness, node count).  The
shared node procedure at target size t is:

  1. scan uncovered pairs ascending; remaining hitters R = H & ~excluded;
     an empty R is a dead end; track the pair with the fewest remaining
     hitters (ties to the smaller pair index);
  2. no uncovered pairs -> found (witness = chosen set);
  3. no picks left -> dead end;
  4. greedy disjoint packing over pairs ordered by (|R|, index): pairwise
     disjoint R's each need a distinct new vertex;
  5. counting bound: the best allowed vertex covers cmax uncovered pairs,
     so fewer than U/cmax picks can never finish;
  6. branch on the members of the fewest-hitter pair in ascending order,
     excluding each tried member from the sibling subtrees.
"""

from __future__ import annotations

import time

EXHAUSTED, FOUND, ABORTED = 0, 1, 2

_TIME_CHECK_MASK = 2047


def kernel_name() -> str:
    return "python"


def _rows_to_ints(arr) -> list[int]:
    return [int.from_bytes(row.tobytes(), "little") for row in arr]


class _State:
    __slots__ = ("hitters", "pair_hits", "n", "m", "t",
                 "budget", "deadline", "nodes", "witness")

    def __init__(self, hitters, pair_hits, n, m, t, budget, deadline):
        self.hitters = hitters
        self.pair_hits = pair_hits
        self.n = n
        self.m = m
        self.t = t
        self.budget = budget
        self.deadline = deadline
        self.nodes = 0
        self.witness = None


_BRANCH, _PRUNE, _FOUND = 0, 1, 2


def _node_eval(st: _State, depth: int, x_bits: int, covered: int):
    """Evaluate one node; returns (_FOUND|_PRUNE, 0) or (_BRANCH, members_bits)."""
    hitters = st.hitters
    not_excluded = ~x_bits
    uncovered = []
    best_size = None
    best_rem = 0
    for p in range(st.m):
        if (covered >> p) & 1:
            continue
        rem = hitters[p] & not_excluded
        if rem == 0:
            return _PRUNE, 0
        size = rem.bit_count()
        uncovered.append((size, p, rem))
        if best_size is None or size < best_size:
            best_size = size
            best_rem = rem
    if not uncovered:
        return _FOUND, 0
    picks_left = st.t - depth
    if picks_left <= 0:
        return _PRUNE, 0
    uncovered.sort(key=lambda e: (e[0], e[1]))
    used = 0
    needed = 0
    for _, _, rem in uncovered:
        if rem & used == 0:
            needed += 1
            if needed > picks_left:
                return _PRUNE, 0
            used |= rem
    not_cov = ~covered
    cmax = 0
    for v in range(st.n):
        if (x_bits >> v) & 1:
            continue
        c = (st.pair_hits[v] & not_cov).bit_count()
        if c > cmax:
            cmax = c
    if cmax * picks_left < len(uncovered):
        return _PRUNE, 0
    return _BRANCH, best_rem


def _search(st: _State, depth: int, s_list: list[int],
            x_bits: int, covered: int) -> int:
    st.nodes += 1
    if st.budget is not None and st.nodes > st.budget:
        return ABORTED
    if (st.deadline is not None and (st.nodes & _TIME_CHECK_MASK) == 0
            and time.monotonic() > st.deadline):
        return ABORTED
    kind, members = _node_eval(st, depth, x_bits, covered)
    if kind == _FOUND:
        st.witness = sorted(s_list)
        return FOUND
    if kind == _PRUNE:
        return EXHAUSTED
    child_x = x_bits
    while members:
        low = members & -members
        w = low.bit_length() - 1
        members ^= low
        s_list.append(w)
        res = _search(st, depth + 1, s_list, child_x, covered | st.pair_hits[w])
        s_list.pop()
        if res != EXHAUSTED:
            return res
        child_x |= low
    return EXHAUSTED


def root_branch(hitter_words, pair_hit_words, n: int, m: int, t: int):
    """Evaluate the root node only; returns (pruned, branch_members)."""
    st = _State(_rows_to_ints(hitter_words), _rows_to_ints(pair_hit_words),
                n, m, t, None, None)
    kind, members = _node_eval(st, 0, 0, 0)
    if kind != _BRANCH:
        return True, []
    out = []
    while members:
        low = members & -members
        out.append(low.bit_length() - 1)
        members ^= low
    return False, out


def subtree_search(hitter_words, pair_hit_words, n: int, m: int, t: int,
                   s0, x0, node_budget: int | None, deadline: float | None):
    """Depth-first cover search below an initial (chosen, excluded) state.

    Returns (status, witness or None, nodes).  The witness is the sorted
    vertex list of the first solution in deterministic DFS order.
    """
    st = _State(_rows_to_ints(hitter_words), _rows_to_ints(pair_hit_words),
                n, m, t, node_budget, deadline)
    covered = 0
    for w in s0:
        covered |= st.pair_hits[w]
    x_bits = 0
    for v in x0:
        x_bits |= 1 << v
    res = _search(st, len(s0), list(s0), x_bits, covered)
    return res, (st.witness if res == FOUND else None), st.nodes
