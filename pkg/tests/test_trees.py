from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from tropsi.combinatorics import WeightVector
from tropsi.trees import (
    CombinatorialType,
    Split,
    all_ones,
    contract_edge,
    enumerate_types,
    expansions,
    is_valid_split,
    is_w_stable,
    splits_compatible,
    valid_splits,
    vertex_data,
)

from conftest import all_weights


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def brute_valid_splits(w: WeightVector) -> set[frozenset]:
    """Bipartitions with weight > 1 on both sides, from explicit weights."""
    eps = w.explicit()
    n = w.n
    out = set()
    for r in range(2, n - 1):
        for side in combinations(range(2, n + 1), r):
            rest = set(range(1, n + 1)) - set(side)
            if sum(eps[i - 1] for i in side) > 1 and sum(eps[i - 1] for i in rest) > 1:
                out.add(frozenset(side))
    return out


def four_way_compatible(A: frozenset, B: frozenset, n: int) -> bool:
    full = frozenset(range(1, n + 1))
    return any(not (x & y) for x in (A, full - A) for y in (B, full - B))


class TestSplit:
    def test_canonical_side(self):
        assert Split.of([1, 2], 5).side == {3, 4, 5}
        assert Split.of([1, 2], 5) == Split.of([3, 4, 5], 5)

    @pytest.mark.parametrize("side", [[2], [2, 3, 4, 5], [6, 2]])
    def test_rejects_bad_sides(self, side):
        with pytest.raises(ValueError):
            Split.of(side, 5)

    @pytest.mark.parametrize("a,b,expected", [
        ([2, 3], [4, 5], True),
        ([2, 3], [2, 3, 4], True),
        ([2, 3], [3, 4], False),
    ])
    def test_compatibility_examples(self, a, b, expected):
        assert splits_compatible(Split.of(a, 5), Split.of(b, 5)) is expected

    @given(st.integers(4, 8), st.data())
    def test_compatibility_four_intersections(self, n, data):
        sides = st.sets(st.integers(1, n), min_size=2, max_size=n - 2)
        A, B = data.draw(sides), data.draw(sides)
        a, b = Split.of(A, n), Split.of(B, n)
        assert splits_compatible(a, b) == four_way_compatible(frozenset(A), frozenset(B), n)

    def test_separates(self):
        s = Split.of([2, 4], 5)
        assert s.separates(1, 2) and not s.separates(2, 4) and not s.separates(1, 3)


class TestStability:
    def test_light_pair_unstable(self):
        w = WeightVector(5, 2)
        assert not is_w_stable(CombinatorialType.of(5, [4, 5]), w)
        assert is_w_stable(CombinatorialType.of(5, [1, 2]), w)

    @pytest.mark.parametrize("w", all_weights(4, 7), ids=str)
    def test_valid_splits_match_weights(self, w):
        assert {s.side for s in valid_splits(w)} == brute_valid_splits(w)

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_all_ones_everything_valid(self, n):
        assert len(valid_splits(all_ones(n))) == 2 ** (n - 1) - n - 1


class TestEnumeration:
    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_maximal_cone_count(self, n):
        assert len(enumerate_types(n, all_ones(n), 0)) == double_factorial(2 * n - 5)

    def test_small_examples(self):
        assert enumerate_types(5, all_ones(5), 2) == (CombinatorialType(5),)
        assert len(enumerate_types(5, all_ones(5), 1)) == 10
        assert len(enumerate_types(5, WeightVector(5, 3), 1)) == 6

    def test_codim_range(self):
        with pytest.raises(ValueError):
            enumerate_types(5, all_ones(5), 3)

    @pytest.mark.parametrize("w", all_weights(4, 6), ids=str)
    def test_against_compatible_subsets(self, w):
        n = w.n
        sides = sorted(brute_valid_splits(w), key=sorted)
        for codim in range(n - 2):
            size = n - 3 - codim
            brute = {
                frozenset(c) for c in combinations(sides, size)
                if all(four_way_compatible(a, b, n) for a, b in combinations(c, 2))
            }
            got = {frozenset(s.side for s in t.splits) for t in enumerate_types(n, w, codim)}
            assert got == brute

    @pytest.mark.parametrize("w", all_weights(4, 6), ids=str)
    def test_faces_are_contractions(self, w):
        n = w.n
        for codim in range(1, n - 2):
            faces = {contract_edge(t, s) for t in enumerate_types(n, w, codim - 1) for s in t.splits}
            assert faces == set(enumerate_types(n, w, codim))

    @pytest.mark.parametrize("w", all_weights(4, 6), ids=str)
    def test_maximal_types_trivalent(self, w):
        for t in enumerate_types(w.n, w, 0):
            assert all(v.fold == 3 for v in t.vertices)

    def test_deterministic(self):
        w = WeightVector(6, 2)
        assert [t.to_json() for t in enumerate_types(6, w, 1)] == \
               [t.to_json() for t in sorted(set(enumerate_types(6, w, 1)), reverse=True)[::-1]]


class TestVertexData:
    def test_star(self):
        (v,) = vertex_data(CombinatorialType(5))
        assert v.valence == 0 and v.marks == set(range(1, 6))
        assert v.parts == tuple(frozenset([i]) for i in range(1, 6))

    def test_two_vertices(self):
        t = CombinatorialType.of(5, [4, 5])
        top, bottom = t.vertices
        assert top.marks == {1, 2, 3} and bottom.marks == {4, 5}
        assert frozenset([4, 5]) in top.parts and frozenset([1, 2, 3]) in bottom.parts
        assert top.valence == bottom.valence == 1

    @pytest.mark.parametrize("n", [5, 6])
    def test_codim_one_has_one_fourfold_vertex(self, n):
        for t in enumerate_types(n, all_ones(n), 1):
            four = [v for v in t.vertices if v.fold == 4]
            assert len(four) == 1 and len(four[0].parts) == 4
            assert frozenset().union(*four[0].parts) == set(range(1, n + 1))

    @pytest.mark.parametrize("w", all_weights(5, 6), ids=str)
    def test_contraction_merges_folds(self, w):
        for t in enumerate_types(w.n, w, 0):
            by_cluster = {v.vertex: v for v in t.vertices}
            for lower, upper, s in t.edges:
                expected = by_cluster[lower].fold - 1 + by_cluster[upper].fold - 1
                merged = {v.vertex: v for v in contract_edge(t, s).vertices}[upper]
                assert merged.fold == expected == 4

    def test_json_round_trip(self):
        for t in enumerate_types(6, WeightVector(6, 2), 1):
            again = CombinatorialType.from_json(t.to_json())
            assert again == t and again.vertices == t.vertices


class TestExpansions:
    def test_all_ones_ray(self):
        assert len(expansions(CombinatorialType.of(5, [1, 2]), all_ones(5))) == 3

    def test_light_pair_excluded(self):
        w = WeightVector(5, 2)
        added = {s.side for _, s in expansions(CombinatorialType.of(5, [1, 2]), w)}
        assert frozenset([4, 5]) not in added and len(added) == 2

    @pytest.mark.parametrize("w", all_weights(5, 6), ids=str)
    def test_count_matches_cofaces(self, w):
        maximal = enumerate_types(w.n, w, 0)
        for tau in enumerate_types(w.n, w, 1):
            cofaces = [t for t in maximal if tau.splits < t.splits]
            assert len(expansions(tau, w)) == len(cofaces) <= 3

    def test_valid_split_predicate(self):
        w = WeightVector(5, 2)
        assert is_valid_split(Split.of([1, 4], 5), w)
        assert not is_valid_split(Split.of([4, 5], 5), w)
