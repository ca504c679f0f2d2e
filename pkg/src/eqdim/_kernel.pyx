# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel: bit-identical twin of ``eqdim._kernel_py``.

Same node procedure, same branching order, same bounds; the only difference
is that the data lives in C arrays of 64-bit words and the recursion runs
without the GIL, so worker threads scale on the root split.
"""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint64_t
from libc.string cimport memcpy, memset
from posix.time cimport CLOCK_MONOTONIC, clock_gettime, timespec

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    W_MAX = 16           # vertex-bitset words; caps graphs at 1024 vertices
    TIME_CHECK_MASK = 2047

EXHAUSTED, FOUND, ABORTED = 0, 1, 2

cdef enum:
    R_PRUNE = -1
    R_FOUND = -2


def kernel_name():
    return "c"


cdef inline double _now() noexcept nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + ts.tv_nsec * 1e-9


cdef struct Ctx:
    const uint64_t *hitters      # m x W
    const uint64_t *pair_hits    # n x PW
    int n
    int m
    int W
    int PW
    int t
    int64_t budget               # -1 = unlimited
    double deadline              # <= 0 = none
    int64_t nodes
    int32_t *sizes               # m
    int32_t *order               # m (uncovered pair ids, ascending)
    int32_t *order2              # m (counting-sorted by (size, id))
    int32_t *bucket              # n + 2
    uint64_t *rem_words          # m x W remaining hitters scratch
    uint64_t *cov_stack          # (t + 2) x PW
    uint64_t *x_stack            # (t + 2) x W
    int32_t *s_arr               # t + 1
    int32_t *witness             # t + 1
    int witness_len


cdef int _node_eval(Ctx *c, int depth, uint64_t *x, uint64_t *cov) noexcept nogil:
    """Evaluate one node: R_FOUND, R_PRUNE, or the pair index to branch on."""
    cdef int W = c.W, PW = c.PW
    cdef int p, w, v, i, sz, U = 0
    cdef int best_p = -1, best_size = 0x7fffffff
    cdef uint64_t r
    cdef const uint64_t *h
    for p in range(c.m):
        if (cov[p >> 6] >> (p & 63)) & 1:
            continue
        h = c.hitters + p * W
        sz = 0
        for w in range(W):
            r = h[w] & ~x[w]
            c.rem_words[p * W + w] = r
            sz += __builtin_popcountll(r)
        if sz == 0:
            return R_PRUNE
        c.sizes[p] = sz
        c.order[U] = p
        U += 1
        if sz < best_size:
            best_size = sz
            best_p = p
    if U == 0:
        return R_FOUND
    cdef int picks_left = c.t - depth
    if picks_left <= 0:
        return R_PRUNE

    # Stable counting sort of uncovered pairs by remaining-hitter size.
    memset(c.bucket, 0, (c.n + 2) * sizeof(int32_t))
    for i in range(U):
        c.bucket[c.sizes[c.order[i]]] += 1
    cdef int acc = 0, cnt
    for i in range(c.n + 2):
        cnt = c.bucket[i]
        c.bucket[i] = acc
        acc += cnt
    for i in range(U):
        p = c.order[i]
        c.order2[c.bucket[c.sizes[p]]] = p
        c.bucket[c.sizes[p]] += 1

    # Greedy packing of pairwise-disjoint remaining hitter sets.
    cdef uint64_t used[W_MAX]
    memset(used, 0, W * sizeof(uint64_t))
    cdef int needed = 0
    cdef bint disjoint
    for i in range(U):
        p = c.order2[i]
        disjoint = 1
        for w in range(W):
            if c.rem_words[p * W + w] & used[w]:
                disjoint = 0
                break
        if disjoint:
            needed += 1
            if needed > picks_left:
                return R_PRUNE
            for w in range(W):
                used[w] |= c.rem_words[p * W + w]

    # Counting bound on the best single-vertex coverage.
    cdef int cmax = 0
    cdef const uint64_t *ph
    for v in range(c.n):
        if (x[v >> 6] >> (v & 63)) & 1:
            continue
        ph = c.pair_hits + v * PW
        cnt = 0
        for w in range(PW):
            cnt += __builtin_popcountll(ph[w] & ~cov[w])
        if cnt > cmax:
            cmax = cnt
    if (<int64_t> cmax) * picks_left < U:
        return R_PRUNE
    return best_p


cdef int _search(Ctx *c, int depth) noexcept nogil:
    c.nodes += 1
    if c.budget >= 0 and c.nodes > c.budget:
        return 2  # ABORTED
    if c.deadline > 0 and (c.nodes & TIME_CHECK_MASK) == 0 and _now() > c.deadline:
        return 2
    cdef int W = c.W, PW = c.PW
    cdef uint64_t *x = c.x_stack + depth * W
    cdef uint64_t *cov = c.cov_stack + depth * PW
    cdef int best_p = _node_eval(c, depth, x, cov)
    cdef int i
    if best_p == R_FOUND:
        for i in range(depth):
            c.witness[i] = c.s_arr[i]
        c.witness_len = depth
        return 1  # FOUND
    if best_p == R_PRUNE:
        return 0  # EXHAUSTED

    cdef uint64_t members[W_MAX]
    memcpy(members, c.rem_words + best_p * W, W * sizeof(uint64_t))
    cdef uint64_t *child_x = c.x_stack + (depth + 1) * W
    cdef uint64_t *child_cov = c.cov_stack + (depth + 1) * PW
    memcpy(child_x, x, W * sizeof(uint64_t))
    cdef int w, v, res, q
    cdef uint64_t bits, low
    cdef const uint64_t *ph
    for w in range(W):
        bits = members[w]
        while bits:
            low = bits & (~bits + 1)
            v = w * 64 + __builtin_ctzll(bits)
            bits ^= low
            c.s_arr[depth] = v
            ph = c.pair_hits + v * PW
            for q in range(PW):
                child_cov[q] = cov[q] | ph[q]
            res = _search(c, depth + 1)
            if res != 0:
                return res
            child_x[w] |= low
    return 0


cdef class _Scratch:
    """Owns the per-call work arrays so pointers stay alive during the search."""
    cdef object arrays
    cdef Ctx ctx

    def __init__(self, hitter_words, pair_hit_words, int n, int m, int t):
        if hitter_words.dtype != np.uint64 or pair_hit_words.dtype != np.uint64:
            raise TypeError("kernel arrays must be uint64")
        cdef const uint64_t[:, ::1] hw = hitter_words
        cdef const uint64_t[:, ::1] pw = pair_hit_words
        cdef int W = hw.shape[1]
        cdef int PW = pw.shape[1]
        if W > W_MAX:
            raise ValueError(f"graph too large for the compiled kernel "
                             f"({W} words > {W_MAX})")
        if hw.shape[0] != m or pw.shape[0] != n:
            raise ValueError("array shapes disagree with n/m")
        sizes = np.zeros(max(1, m), dtype=np.int32)
        order = np.zeros(max(1, m), dtype=np.int32)
        order2 = np.zeros(max(1, m), dtype=np.int32)
        bucket = np.zeros(n + 2, dtype=np.int32)
        rem = np.zeros((max(1, m), W), dtype=np.uint64)
        cov_stack = np.zeros((t + 2, PW), dtype=np.uint64)
        x_stack = np.zeros((t + 2, W), dtype=np.uint64)
        s_arr = np.zeros(t + 1, dtype=np.int32)
        witness = np.zeros(t + 1, dtype=np.int32)
        self.arrays = (hitter_words, pair_hit_words, sizes, order, order2,
                       bucket, rem, cov_stack, x_stack, s_arr, witness)
        cdef int32_t[::1] sizes_v = sizes
        cdef int32_t[::1] order_v = order
        cdef int32_t[::1] order2_v = order2
        cdef int32_t[::1] bucket_v = bucket
        cdef uint64_t[:, ::1] rem_v = rem
        cdef uint64_t[:, ::1] cov_v = cov_stack
        cdef uint64_t[:, ::1] x_v = x_stack
        cdef int32_t[::1] s_v = s_arr
        cdef int32_t[::1] wit_v = witness
        self.ctx.hitters = &hw[0, 0] if m else NULL
        self.ctx.pair_hits = &pw[0, 0] if n else NULL
        self.ctx.n = n
        self.ctx.m = m
        self.ctx.W = W
        self.ctx.PW = PW
        self.ctx.t = t
        self.ctx.budget = -1
        self.ctx.deadline = 0.0
        self.ctx.nodes = 0
        self.ctx.sizes = &sizes_v[0]
        self.ctx.order = &order_v[0]
        self.ctx.order2 = &order2_v[0]
        self.ctx.bucket = &bucket_v[0]
        self.ctx.rem_words = &rem_v[0, 0]
        self.ctx.cov_stack = &cov_v[0, 0]
        self.ctx.x_stack = &x_v[0, 0]
        self.ctx.s_arr = &s_v[0]
        self.ctx.witness = &wit_v[0]
        self.ctx.witness_len = 0


def root_branch(hitter_words, pair_hit_words, int n, int m, int t):
    """Evaluate the root node only; returns (pruned, branch_members)."""
    cdef _Scratch sc = _Scratch(np.ascontiguousarray(hitter_words, dtype=np.uint64),
                                np.ascontiguousarray(pair_hit_words, dtype=np.uint64),
                                n, m, t)
    cdef int best_p
    with nogil:
        best_p = _node_eval(&sc.ctx, 0, sc.ctx.x_stack, sc.ctx.cov_stack)
    if best_p < 0:
        return True, []
    members = []
    cdef int w, v
    cdef uint64_t bits
    for w in range(sc.ctx.W):
        bits = sc.ctx.rem_words[best_p * sc.ctx.W + w]
        while bits:
            v = w * 64 + __builtin_ctzll(bits)
            members.append(v)
            bits &= bits - 1
    return False, members


def subtree_search(hitter_words, pair_hit_words, int n, int m, int t,
                   s0, x0, node_budget, deadline):
    """Depth-first cover search below an initial (chosen, excluded) state."""
    cdef _Scratch sc = _Scratch(np.ascontiguousarray(hitter_words, dtype=np.uint64),
                                np.ascontiguousarray(pair_hit_words, dtype=np.uint64),
                                n, m, t)
    cdef int d0 = len(s0)
    if d0 > t + 1:
        raise ValueError("initial chosen set exceeds the target size")
    sc.ctx.budget = -1 if node_budget is None else <int64_t> node_budget
    sc.ctx.deadline = 0.0 if deadline is None else <double> deadline
    cdef int i, v, q
    for i, v in enumerate(s0):
        sc.ctx.s_arr[i] = v
        for q in range(sc.ctx.PW):
            sc.ctx.cov_stack[d0 * sc.ctx.PW + q] |= \
                sc.ctx.pair_hits[v * sc.ctx.PW + q]
    for v in x0:
        sc.ctx.x_stack[d0 * sc.ctx.W + (v >> 6)] |= <uint64_t> 1 << (v & 63)
    cdef int res
    with nogil:
        res = _search(&sc.ctx, d0)
    witness = None
    if res == 1:
        witness = sorted(sc.ctx.witness[i] for i in range(sc.ctx.witness_len))
    return res, witness, int(sc.ctx.nodes)
