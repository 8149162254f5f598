from itertools import permutations

import pytest

from magiclab import _kernels
from magiclab.graphs import Graph, build_cycle, build_multipartite, disjoint_union, empty_graph
from magiclab.labeling import LabelSet, verify_s_magic
from magiclab.search import (
    SearchBudgetExceeded,
    SearchConfig,
    adjacent_twins,
    compute_index,
    enumerate_labelings,
    find_labeling,
)

PATH3 = Graph(3, [(0, 1), (1, 2)], "P3")
STAR4 = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)], "S4")


def naive_enumerate(g: Graph, values) -> list[tuple[int, ...]]:
    """Dumb oracle: filter all permutations of the label set."""
    out = []
    for perm in permutations(sorted(values)):
        weights = {
            u: sum(perm[v] for v in g.neighbors(u)) for u in range(g.order)
        }
        if len(set(weights.values())) == 1:
            out.append(perm)
    return sorted(out)


class TestFindLabeling:
    def test_c4_natural(self):
        lab = find_labeling(build_cycle(4), LabelSet.natural(4))
        assert lab is not None
        report = verify_s_magic(build_cycle(4), lab)
        assert report.is_magic and report.constant == 5

    def test_k33_figure_set(self):
        lab = find_labeling(build_multipartite(3, 2), LabelSet.from_values([1, 3, 4, 5, 6, 7]))
        assert lab is not None
        assert verify_s_magic(build_multipartite(3, 2), lab).constant == 13

    def test_k2_always_absent(self):
        assert find_labeling(build_multipartite(1, 2), [1, 2]) is None
        assert find_labeling(build_multipartite(1, 2), [3, 9]) is None

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            find_labeling(build_cycle(4), [1, 2, 3])

    def test_returns_lexicographically_first(self):
        lab = find_labeling(build_cycle(4), LabelSet.natural(4))
        sols = naive_enumerate(build_cycle(4), [1, 2, 3, 4])
        assert lab.labels == sols[0]

    def test_budget_raises_instead_of_absent(self):
        cfg = SearchConfig(node_limit=1)
        with pytest.raises(SearchBudgetExceeded):
            find_labeling(build_multipartite(3, 2), [1, 3, 4, 5, 6, 7], cfg)


class TestEnumerate:
    def test_k2_empty(self):
        assert enumerate_labelings(build_multipartite(1, 2), [1, 2]) == []

    def test_c4_eight_solutions(self):
        sols = enumerate_labelings(build_cycle(4), LabelSet.natural(4))
        assert len(sols) == 8

    def test_k33_deleted_one_empty(self):
        sols = enumerate_labelings(build_multipartite(3, 2), LabelSet.without(7, 1))
        assert sols == []

    def test_order_guard(self):
        with pytest.raises(ValueError):
            enumerate_labelings(empty_graph(11), range(1, 12))

    def test_buffer_regrowth(self):
        # the edgeless graph accepts every bijection: 6! = 720 solutions
        # forces at least one regrow past the initial buffer... use order 7
        sols = enumerate_labelings(empty_graph(7), range(1, 8))
        assert len(sols) == 5040
        assert len(set(s.labels for s in sols)) == 5040


class TestNaiveOracleAgreement:
    CASES = [
        (build_cycle(4), (1, 2, 3, 4)),
        (build_cycle(5), (1, 2, 3, 4, 5)),
        (build_cycle(6), (2, 3, 4, 5, 6, 7)),
        (PATH3, (1, 2, 3)),
        (PATH3, (2, 4, 6)),
        (STAR4, (1, 2, 3, 4, 5)),
        (build_multipartite(3, 2), (1, 2, 3, 4, 5, 6)),
        (build_multipartite(3, 2), (1, 3, 4, 5, 6, 7)),
        (build_multipartite(2, 3), (1, 2, 3, 4, 5, 6)),
        (build_multipartite(2, 4), (1, 2, 3, 4, 5, 6, 7, 8)),
        (disjoint_union(build_cycle(4), 2), (1, 2, 3, 4, 5, 6, 7, 8)),
    ]

    @pytest.mark.parametrize("g,values", CASES)
    def test_matches_permutation_filter(self, g, values):
        got = [lab.labels for lab in enumerate_labelings(g, values)]
        assert got == naive_enumerate(g, values)


class TestPruningEquivalence:
    GRAPHS = [
        build_cycle(3),
        build_cycle(4),
        build_cycle(7),
        PATH3,
        STAR4,
        build_multipartite(3, 2),
        build_multipartite(1, 4),
        disjoint_union(build_cycle(3), 2),
        Graph(7, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6)], "mixed"),
    ]

    @pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.name or str(g.order))
    def test_pruned_equals_unpruned(self, g):
        n = g.order
        sets = [tuple(range(1, n + 1))]
        if n >= 3:
            sets.append(tuple(range(2, n + 2)))
            sets.append(tuple(v for v in range(1, n + 2) if v != n))
        for values in sets:
            fast = enumerate_labelings(g, values, SearchConfig(prune=True))
            slow = enumerate_labelings(g, values, SearchConfig(prune=False))
            assert [x.labels for x in fast] == [x.labels for x in slow]


class TestComputeIndex:
    def test_c4_distance_magic(self):
        res = compute_index(build_cycle(4))
        assert res.kind == "finite" and res.theta == 0
        assert res.witness is not None

    def test_k33_index_one(self):
        res = compute_index(build_multipartite(3, 2), SearchConfig(theta_cap=2))
        assert res.kind == "finite" and res.theta == 1
        assert res.witness.label_set.alpha == 7
        assert res.constant == 11

    def test_complete_graphs_infinite(self):
        for p in (2, 3, 5):
            res = compute_index(build_multipartite(1, p))
            assert res.kind == "infinite"
            assert "twins" in res.detail

    def test_c5_unknown_at_cap(self):
        res = compute_index(build_cycle(5), SearchConfig(theta_cap=2))
        assert res.kind == "unknown-at-cap"
        assert res.cap == 2

    def test_single_vertex(self):
        res = compute_index(empty_graph(1))
        assert res.kind == "finite" and res.theta == 0

    def test_edgeless(self):
        res = compute_index(empty_graph(5))
        assert res.theta == 0
        assert res.witness.labels == (1, 2, 3, 4, 5)

    def test_node_budget_indeterminate(self):
        res = compute_index(build_multipartite(3, 2), SearchConfig(node_limit=5))
        assert res.kind == "indeterminate"

    def test_wall_clock_budget(self):
        res = compute_index(
            build_multipartite(3, 4), SearchConfig(theta_cap=2, budget_ms=0.0)
        )
        assert res.kind == "indeterminate"

    def test_witness_is_policy_minimal(self):
        # lexicographically smallest label set first: deleting 6 from {1..7}
        res = compute_index(build_multipartite(3, 2))
        assert res.witness.label_set.values == (1, 2, 3, 4, 5, 7)


class TestTwins:
    def test_complete_graph(self):
        assert adjacent_twins(build_multipartite(1, 3)) is not None

    def test_cycle_has_none(self):
        assert adjacent_twins(build_cycle(5)) is None

    def test_octahedron_has_none(self):
        assert adjacent_twins(build_multipartite(2, 3)) is None


class TestBackendEquivalence:
    def test_python_and_active_paths_agree(self):
        cases = [
            (build_multipartite(3, 2), (1, 3, 4, 5, 6, 7)),
            (build_cycle(4), (1, 2, 3, 4)),
            (PATH3, (1, 2, 3)),
            (build_cycle(6), (1, 2, 3, 4, 5, 6)),
        ]
        for g, values in cases:
            indptr, nbrs = g.csr()
            import numpy as np

            labels = np.asarray(values, dtype=np.int64)
            for prune in (True, False):
                a = _kernels.backtrack(
                    indptr, nbrs, labels, False, 0, prune, -1, 2**62, 64
                )
                b = _kernels.backtrack_python(
                    indptr, nbrs, labels, False, 0, prune, -1, 2**62, 64
                )
                assert a[0] == b[0]          # status
                assert a[1] == b[1]          # node count
                assert a[2] == b[2]          # solutions
                assert a[3][: a[2] * g.order].tolist() == b[3][: b[2] * g.order].tolist()
