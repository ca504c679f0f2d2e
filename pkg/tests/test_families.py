import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqdim.families import (FamilySpec, KSubset, SubsetIndex, colex_rank,
                            complement_distance_check, cycle_graph,
                            formula_distance_matrix, johnson, johnson_distance,
                            kneser, kneser2_distance, named_family,
                            parse_family_spec, parse_subset_label, path_graph,
                            star_graph)
from eqdim.graph import (all_pairs_distances, degree_stats, diameter,
                         is_connected)


class TestKSubset:
    def test_elements_and_label(self):
        s = KSubset.from_elements(6, [3, 1, 5])
        assert s.elements() == (1, 3, 5)
        assert s.label() == "{1,3,5}"
        assert s.k == 3

    def test_complement(self):
        s = KSubset.from_elements(6, [1, 2, 3])
        assert s.complement().elements() == (4, 5, 6)

    def test_validation(self):
        with pytest.raises(ValueError):
            KSubset.from_elements(4, [5])
        with pytest.raises(ValueError):
            KSubset(4, 0)
        with pytest.raises(ValueError):
            KSubset(4, 0b1111)  # not a proper subset

    def test_parse_label_round_trip(self):
        s = parse_subset_label("{2,4,7}", 9)
        assert s.elements() == (2, 4, 7)
        assert parse_subset_label(s.label(), 9) == s
        with pytest.raises(ValueError):
            parse_subset_label("{}", 5)
        with pytest.raises(ValueError):
            parse_subset_label("{1,x}", 5)


class TestSubsetIndex:
    def test_colex_order_is_ascending_masks(self):
        idx = SubsetIndex(6, 3)
        assert len(idx) == 20
        assert idx.masks == sorted(idx.masks)
        assert idx.unrank(0).elements() == (1, 2, 3)

    @given(st.integers(2, 12).flatmap(
        lambda n: st.tuples(st.just(n), st.integers(1, n - 1))))
    @settings(max_examples=60, deadline=None)
    def test_rank_unrank_bijection(self, nk):
        n, k = nk
        idx = SubsetIndex(n, k)
        for i in range(len(idx)):
            s = idx.unrank(i)
            assert idx.rank(s) == i
            # the combinatorial rank formula agrees with enumeration order
            assert colex_rank(s.mask) == i

    def test_rank_rejects_foreign_subsets(self):
        idx = SubsetIndex(6, 3)
        with pytest.raises(ValueError):
            idx.rank(KSubset.from_elements(6, [1, 2]))


class TestJohnson:
    def test_johnson_4_2(self):
        g, idx = johnson(4, 2)
        assert g.n == 6
        assert degree_stats(g).regular_degree == 4

    def test_johnson_9_3_order(self):
        g, _ = johnson(9, 3)
        assert g.n == 84

    def test_johnson_5_2(self):
        g, _ = johnson(5, 2)
        assert g.n == 10
        assert degree_stats(g).regular_degree == 6
        assert diameter(all_pairs_distances(g)) == 2

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            johnson(3, 3)
        with pytest.raises(ValueError):
            johnson(5, 0)

    @pytest.mark.parametrize("n,k", [(n, k) for n in range(3, 11)
                                     for k in range(1, n)
                                     if math.comb(n, k) <= 100])
    def test_regular_and_diameter(self, n, k):
        g, _ = johnson(n, k)
        assert degree_stats(g).regular_degree == k * (n - k)
        assert diameter(all_pairs_distances(g)) == min(k, n - k)

    @pytest.mark.parametrize("n,k", [(5, 2), (6, 2), (7, 3), (6, 4)])
    def test_complement_relabeling_isomorphism(self, n, k):
        # J(n,k) and J(n,n-k) are isomorphic under complementation of subsets
        g1, idx1 = johnson(n, k)
        g2, idx2 = johnson(n, n - k)
        full = (1 << n) - 1
        mapping = [idx2.rank(full ^ mask) for mask in idx1.masks]
        for u in range(g1.n):
            image = {mapping[v] for v in g1.adj[u]}
            assert image == set(g2.adj[mapping[u]].indices())


class TestKneser:
    def test_petersen(self):
        g, _ = kneser(5, 2)
        assert g.n == 10
        assert degree_stats(g).regular_degree == 3
        assert is_connected(g)

    def test_kneser_8_4_disconnected(self):
        g, _ = kneser(8, 4)
        assert g.n == 70
        assert not is_connected(g)

    def test_kneser_7_3(self):
        g, _ = kneser(7, 3)
        assert g.n == 35
        assert degree_stats(g).regular_degree == 4

    @pytest.mark.parametrize("n,k", [(n, k) for n in range(3, 11)
                                     for k in range(1, n)
                                     if math.comb(n, k) <= 100 and n >= 2 * k])
    def test_regularity(self, n, k):
        g, _ = kneser(n, k)
        assert degree_stats(g).regular_degree == math.comb(n - k, k)

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            kneser(3, 3)


class TestDistanceOracles:
    def test_johnson_distance_examples(self):
        a = KSubset.from_elements(6, [1, 2, 3])
        b = KSubset.from_elements(6, [1, 4, 5])
        assert johnson_distance(a, b) == 2
        c = KSubset.from_elements(6, [1, 2])
        assert johnson_distance(c, c) == 0

    def test_johnson_distance_matches_bfs_on_j63(self):
        g, idx = johnson(6, 3)
        dm = all_pairs_distances(g)
        for i in range(g.n):
            for j in range(g.n):
                assert dm[i, j] == johnson_distance(idx.unrank(i), idx.unrank(j))

    def test_mismatched_families_rejected(self):
        with pytest.raises(ValueError):
            johnson_distance(KSubset.from_elements(5, [1, 2]),
                             KSubset.from_elements(6, [1, 2]))

    def test_complement_identity_examples(self):
        a = KSubset.from_elements(6, [1, 2, 3])
        assert complement_distance_check(a, a)
        b = KSubset.from_elements(6, [1, 4, 5])
        assert complement_distance_check(a, b)

    def test_complement_identity_exhaustive_j63(self):
        # brute force over all 400 ordered pairs
        idx = SubsetIndex(6, 3)
        for i in range(len(idx)):
            for j in range(len(idx)):
                assert complement_distance_check(idx.unrank(i), idx.unrank(j))

    def test_complement_identity_needs_half(self):
        with pytest.raises(ValueError):
            complement_distance_check(KSubset.from_elements(5, [1, 2]),
                                      KSubset.from_elements(5, [1, 3]))

    def test_kneser2_examples(self):
        a = KSubset.from_elements(7, [1, 2])
        b = KSubset.from_elements(7, [3, 4])
        c = KSubset.from_elements(7, [2, 3])
        assert kneser2_distance(a, b) == 1
        assert kneser2_distance(a, c) == 2
        assert kneser2_distance(a, a) == 0

    @pytest.mark.parametrize("n", range(5, 11))
    def test_kneser2_matches_bfs(self, n):
        g, idx = kneser(n, 2)
        dm = all_pairs_distances(g)
        for i in range(g.n):
            for j in range(g.n):
                assert dm[i, j] == kneser2_distance(idx.unrank(i), idx.unrank(j))

    def test_kneser2_rejects_other_k(self):
        with pytest.raises(ValueError):
            kneser2_distance(KSubset.from_elements(7, [1, 2, 3]),
                             KSubset.from_elements(7, [4, 5, 6]))

    @pytest.mark.parametrize("n,k,kind", [(7, 2, "johnson"), (6, 3, "johnson"),
                                          (8, 2, "kneser2")])
    def test_formula_matrix_matches_bfs(self, n, k, kind):
        gen = johnson if kind == "johnson" else kneser
        g, idx = gen(n, k)
        assert np.array_equal(formula_distance_matrix(idx, kind).d,
                              all_pairs_distances(g).d)


class TestNamedFamilies:
    def test_path(self):
        g = path_graph(2)
        assert g.n == 2 and g.edge_count() == 1

    def test_cycle(self):
        g = cycle_graph(5)
        assert degree_stats(g).regular_degree == 2
        assert diameter(all_pairs_distances(g)) == 2

    def test_star_center_universal(self):
        g = star_graph(5)
        assert g.degree(0) == 4
        assert all(g.degree(v) == 1 for v in range(1, 5))

    def test_minimum_sizes(self):
        with pytest.raises(ValueError):
            cycle_graph(2)
        with pytest.raises(ValueError):
            star_graph(1)
        with pytest.raises(ValueError):
            named_family("cycle", 1)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            named_family("wheel", 5)


class TestFamilySpecs:
    def test_parse(self):
        spec = parse_family_spec("johnson:7,3")
        assert spec == FamilySpec("johnson", (7, 3))
        assert spec.text == "johnson:7,3"
        assert parse_family_spec("cycle:5") == FamilySpec("cycle", (5,))

    @pytest.mark.parametrize("bad", ["johnson", "johnson:", "johnson:7",
                                     "johnson:a,b", "wheel:5", "path:3,4"])
    def test_rejects_malformed(self, bad):
        with pytest.raises(ValueError):
            parse_family_spec(bad)
