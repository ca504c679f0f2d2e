"""Backend equivalence: the compiled kernel must be a bit-identical twin of
the pure-Python kernel (status, witness, and node count on every search)."""

import pytest

from eqdim.equalizer import build_instance
from eqdim.families import johnson
from eqdim.graph import all_pairs_distances
from eqdim.solver import (available_kernels, get_kernel, kernel_name,
                          random_connected_graph, solve_graph)


def test_compiled_kernel_is_built():
    assert "c" in available_kernels(), \
        "compiled kernel missing; run pip install -e . --no-build-isolation"


def test_env_var_forces_backend(monkeypatch):
    monkeypatch.setenv("EQDIM_KERNEL", "python")
    assert kernel_name() == "python"
    monkeypatch.delenv("EQDIM_KERNEL")
    assert get_kernel("python").kernel_name() == "python"
    assert get_kernel("c").kernel_name() == "c"
    with pytest.raises(ValueError):
        get_kernel("fortran")


@pytest.mark.parametrize("seed", range(25))
def test_kernels_explore_identical_trees(seed):
    kc = get_kernel("c")
    kp = get_kernel("python")
    n = 6 + seed % 5
    g = random_connected_graph(n, 0.3 + 0.05 * (seed % 4), seed + 2000)
    inst = build_instance(all_pairs_distances(g))
    arrays = (inst.hitter_words, inst.pair_hit_words, inst.n, inst.m)
    for t in range(1, min(n, 8)):
        root_c = kc.root_branch(*arrays, t)
        root_p = kp.root_branch(*arrays, t)
        assert root_c == root_p
        pruned, members = root_c
        if pruned:
            continue
        for i, w in enumerate(members):
            res_c = kc.subtree_search(*arrays, t, [w], members[:i], None, None)
            res_p = kp.subtree_search(*arrays, t, [w], members[:i], None, None)
            assert res_c == res_p, (seed, t, w)


def test_kernels_respect_node_budget_identically():
    kc = get_kernel("c")
    kp = get_kernel("python")
    g, _ = johnson(6, 2)
    inst = build_instance(all_pairs_distances(g))
    arrays = (inst.hitter_words, inst.pair_hit_words, inst.n, inst.m)
    _, members = kc.root_branch(*arrays, 3)
    for budget in (0, 1, 5, 50):
        res_c = kc.subtree_search(*arrays, 3, [members[0]], [], budget, None)
        res_p = kp.subtree_search(*arrays, 3, [members[0]], [], budget, None)
        assert res_c == res_p


@pytest.mark.parametrize("seed", range(8))
def test_full_solve_matches_across_backends(seed):
    g = random_connected_graph(9 + seed % 3, 0.3, seed + 4000)
    rep_c = solve_graph(g, kernel="c")
    rep_p = solve_graph(g, kernel="python")
    assert (rep_c.value, rep_c.status, rep_c.nodes, rep_c.witness) == \
           (rep_p.value, rep_p.status, rep_p.nodes, rep_p.witness)


def test_solve_johnson_7_3_matches_across_backends():
    g, _ = johnson(7, 3)
    rep_c = solve_graph(g, kernel="c", family_hint=("johnson", 7, 3))
    rep_p = solve_graph(g, kernel="python", family_hint=("johnson", 7, 3))
    assert (rep_c.value, rep_c.nodes, rep_c.witness) == \
           (rep_p.value, rep_p.nodes, rep_p.witness)
    assert rep_c.value == 5
