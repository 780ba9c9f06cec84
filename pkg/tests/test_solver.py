"""Exact solver for vertex-disjoint path systems.

Small fixed instances with frozen answers, plus the behavioral
contracts: canonical output order, budget handling, and the vitality
and irrelevance checks built on top of the solver.
"""

import pytest

from gridlinkage import (
    Graph,
    Instance,
    Linkage,
    PATTERN_ENDPOINT_SET,
    PATTERN_PAIRING,
    STATUS_ABORTED,
    STATUS_SOLVABLE,
    STATUS_UNSOLVABLE,
    brute_force_oracle,
    build_instance,
    check_linkage,
    irrelevant_vertices,
    is_unique_solution,
    is_vital_linkage,
    make_grid,
    pairing_of,
    pattern_of,
    solve,
    spans_all_vertices,
)
from gridlinkage.construction import S0_BOTTOM_LEFT


@pytest.fixture
def grid3():
    graph, layout = make_grid(3, 3)
    return graph, layout


@pytest.fixture
def two_pair(grid3):
    """3x3 with corner pairs along the top and bottom rows; 7 solutions."""
    graph, layout = grid3
    return Instance.make(graph, [(0, 2), (6, 8)], layout)


SEVEN = (
    ((0, 1, 2), (6, 3, 4, 5, 8)),
    ((0, 1, 2), (6, 3, 4, 7, 8)),
    ((0, 1, 2), (6, 7, 4, 5, 8)),
    ((0, 1, 2), (6, 7, 8)),
    ((0, 1, 4, 5, 2), (6, 7, 8)),
    ((0, 3, 4, 1, 2), (6, 7, 8)),
    ((0, 3, 4, 5, 2), (6, 7, 8)),
)


class TestSolveBasics:
    def test_single_pair_decide(self, grid3):
        graph, layout = grid3
        out = solve(Instance.make(graph, [(0, 8)], layout))
        assert out.status == STATUS_SOLVABLE
        assert len(out.solutions) == 1
        assert out.nodes_explored > 0

    def test_enumeration_frozen(self, two_pair):
        out = solve(two_pair, mode="enumerate_all")
        assert out.status == STATUS_SOLVABLE
        assert tuple(s.paths for s in out.solutions) == SEVEN

    def test_crossing_diagonals_unsolvable(self, grid3):
        # both pairs need the center; they cannot both have it
        graph, layout = grid3
        out = solve(Instance.make(graph, [(0, 8), (2, 6)], layout), mode="enumerate_all")
        assert out.status == STATUS_UNSOLVABLE
        assert out.solutions == ()

    def test_paths_follow_input_pair_order(self, two_pair):
        out = solve(two_pair, mode="enumerate_all")
        for sol in out.solutions:
            assert sol.paths[0][0] == 0 and sol.paths[0][-1] == 2
            assert sol.paths[1][0] == 6 and sol.paths[1][-1] == 8

    def test_solutions_sorted_and_distinct(self, two_pair):
        out = solve(two_pair, mode="enumerate_all")
        paths = [s.paths for s in out.solutions]
        assert paths == sorted(paths)
        assert len(set(paths)) == len(paths)

    def test_count_up_to_cap(self, two_pair):
        out = solve(two_pair, mode="count_up_to", cap=1)
        assert out.status == STATUS_SOLVABLE
        assert len(out.solutions) == 1
        out3 = solve(two_pair, mode="count_up_to", cap=3)
        assert len(out3.solutions) == 3

    def test_unknown_mode(self, two_pair):
        with pytest.raises(ValueError):
            solve(two_pair, mode="enumerate")

    def test_decide_stops_early(self, two_pair):
        decide = solve(two_pair, mode="decide")
        full = solve(two_pair, mode="enumerate_all")
        assert len(decide.solutions) == 1
        assert decide.nodes_explored <= full.nodes_explored


class TestVacuousCases:
    def test_empty_pairs_one_empty_solution(self, grid3):
        graph, layout = grid3
        out = solve(Instance.make(graph, [], layout), mode="enumerate_all")
        assert out.status == STATUS_SOLVABLE
        assert len(out.solutions) == 1
        assert out.solutions[0].paths == ()

    def test_empty_pairs_spanning_needs_empty_graph(self, grid3):
        graph, layout = grid3
        out = solve(Instance.make(graph, [], layout), require_spanning=True)
        assert out.status == STATUS_UNSOLVABLE
        empty = Instance.make(Graph(0, frozenset()), [])
        assert solve(empty, require_spanning=True).status == STATUS_SOLVABLE


class TestSpanning:
    def test_spanning_restricts(self, two_pair):
        # every solution leaves one vertex uncovered, so none spans
        plain = solve(two_pair, mode="enumerate_all")
        for sol in plain.solutions:
            assert not spans_all_vertices(sol)
        spanning = solve(two_pair, mode="enumerate_all", require_spanning=True)
        assert spanning.status == STATUS_UNSOLVABLE

    def test_spanning_matches_filter(self, grid3):
        graph, layout = grid3
        inst = Instance.make(graph, [(0, 2), (3, 5), (6, 8)], layout)
        plain = solve(inst, mode="enumerate_all")
        spanning = solve(inst, mode="enumerate_all", require_spanning=True)
        want = [s.paths for s in plain.solutions if spans_all_vertices(s)]
        assert [s.paths for s in spanning.solutions] == want
        assert len(spanning.solutions) >= 1


class TestKnobNeutrality:
    """Vertex order, pair order, and pruning change the walk, not the answer."""

    CASES = [
        [(0, 2), (6, 8)],
        [(0, 8), (2, 6)],
        [(0, 2), (3, 5), (6, 8)],
        [(1, 7)],
    ]

    @pytest.mark.parametrize("pairs", CASES)
    def test_min_degree_order(self, grid3, pairs):
        graph, layout = grid3
        inst = Instance.make(graph, pairs, layout)
        base = solve(inst, mode="enumerate_all")
        reordered = solve(inst, mode="enumerate_all", order="min-degree")
        assert {s.paths for s in reordered.solutions} == {
            s.paths for s in base.solutions
        }

    @pytest.mark.parametrize("pairs", CASES)
    def test_auto_pair_order(self, grid3, pairs):
        graph, layout = grid3
        inst = Instance.make(graph, pairs, layout)
        base = solve(inst, mode="enumerate_all")
        auto = solve(inst, mode="enumerate_all", pair_order="auto")
        assert {s.paths for s in auto.solutions} == {s.paths for s in base.solutions}

    @pytest.mark.parametrize("pairs", CASES)
    def test_pruning_off(self, grid3, pairs):
        graph, layout = grid3
        inst = Instance.make(graph, pairs, layout)
        base = solve(inst, mode="enumerate_all", require_spanning=True)
        blunt = solve(inst, mode="enumerate_all", require_spanning=True, pruning=False)
        assert {s.paths for s in blunt.solutions} == {s.paths for s in base.solutions}

    def test_bad_knob_values(self, two_pair):
        with pytest.raises(ValueError):
            solve(two_pair, order="random")
        with pytest.raises(ValueError):
            solve(two_pair, pair_order="longest")


class TestBlockedVertices:
    def test_blocking_preserves_unsolvability(self, grid3):
        graph, layout = grid3
        inst = Instance.make(graph, [(0, 8), (2, 6)], layout)
        assert solve(inst).status == STATUS_UNSOLVABLE
        for v in (1, 3, 4, 5, 7):
            assert solve(inst, blocked=[v]).status == STATUS_UNSOLVABLE

    def test_blocking_can_break_solvability(self, grid3):
        graph, layout = grid3
        inst = Instance.make(graph, [(3, 5)], layout)
        assert solve(inst).status == STATUS_SOLVABLE
        # cutting the middle row and the detours through rows 1 and 3
        assert solve(inst, blocked=[4, 1, 7]).status == STATUS_UNSOLVABLE

    def test_blocked_terminal_rejected(self, two_pair):
        with pytest.raises(ValueError):
            solve(two_pair, blocked=[0])

    def test_blocked_solutions_avoid_vertex(self, two_pair):
        # only the pure border routing survives without the center
        out = solve(two_pair, mode="enumerate_all", blocked=[4])
        assert tuple(s.paths for s in out.solutions) == (((0, 1, 2), (6, 7, 8)),)


class TestBudgets:
    def test_abort_status_is_honest(self, two_pair):
        out = solve(two_pair, mode="enumerate_all", max_nodes=3)
        assert out.status == STATUS_ABORTED
        assert out.nodes_explored <= 4

    def test_abort_on_time(self):
        # the clock is polled every few thousand nodes, so the search
        # must be large enough to reach a poll; pruning off gets it there
        inst = build_instance(2, s0_placement=S0_BOTTOM_LEFT)
        out = solve(inst, mode="enumerate_all", pruning=False, max_seconds=0.0)
        assert out.status == STATUS_ABORTED

    def test_found_solutions_kept_on_abort(self, two_pair):
        # enough nodes to find something, not enough to finish
        for cap in range(5, 60, 5):
            out = solve(two_pair, mode="enumerate_all", max_nodes=cap)
            if out.status == STATUS_ABORTED and out.solutions:
                for sol in out.solutions:
                    check_linkage(two_pair, sol.paths)
                return
        pytest.fail("no budget produced a partial result")


class TestInstanceValidation:
    def test_duplicate_terminal(self, grid3):
        graph, layout = grid3
        with pytest.raises(ValueError):
            Instance.make(graph, [(0, 2), (2, 6)], layout)

    def test_terminal_out_of_range(self, grid3):
        graph, layout = grid3
        with pytest.raises(ValueError):
            Instance.make(graph, [(0, 99)], layout)

    def test_pair_of_equal_ends(self, grid3):
        graph, layout = grid3
        with pytest.raises(ValueError):
            Instance.make(graph, [(4, 4)], layout)


class TestCheckLinkage:
    def test_accepts_valid(self, two_pair):
        check_linkage(two_pair, SEVEN[0])

    def test_rejects_shared_vertex(self, two_pair):
        with pytest.raises(ValueError):
            check_linkage(two_pair, ((0, 1, 2), (6, 3, 4, 1, 2)))

    def test_rejects_wrong_endpoints(self, two_pair):
        with pytest.raises(ValueError):
            check_linkage(two_pair, ((2, 1, 0), (6, 7, 8)))

    def test_rejects_wrong_count(self, two_pair):
        with pytest.raises(ValueError):
            check_linkage(two_pair, ((0, 1, 2),))

    def test_rejects_non_spanning_when_required(self, two_pair):
        with pytest.raises(ValueError):
            check_linkage(two_pair, SEVEN[0], require_spanning=True)


class TestBruteOracle:
    @pytest.mark.parametrize(
        "pairs", [[(0, 2), (6, 8)], [(0, 8), (2, 6)], [(1, 7)], []]
    )
    def test_agrees_on_3x3(self, grid3, pairs):
        graph, layout = grid3
        inst = Instance.make(graph, pairs, layout)
        fast = solve(inst, mode="enumerate_all")
        slow = brute_force_oracle(inst)
        assert fast.status == slow.status
        assert [s.paths for s in fast.solutions] == [s.paths for s in slow.solutions]

    def test_agrees_on_spanning(self, grid3):
        graph, layout = grid3
        inst = Instance.make(graph, [(0, 2), (3, 5), (6, 8)], layout)
        fast = solve(inst, mode="enumerate_all", require_spanning=True)
        slow = brute_force_oracle(inst, require_spanning=True)
        assert [s.paths for s in fast.solutions] == [s.paths for s in slow.solutions]


class TestUniqueness:
    def test_seven_not_unique(self, two_pair):
        assert not is_unique_solution(two_pair)

    def test_unsolvable_not_unique(self, grid3):
        graph, layout = grid3
        assert not is_unique_solution(Instance.make(graph, [(0, 8), (2, 6)], layout))

    def test_k1_unique_spanning(self):
        inst = build_instance(1, s0_placement=S0_BOTTOM_LEFT)
        assert is_unique_solution(inst, require_spanning=True)


class TestPatternAndPairing:
    def test_examples(self):
        c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        link = Linkage(((0, 1), (3, 2)), c4)
        assert pattern_of(link) == frozenset({0, 1, 2, 3})
        assert pairing_of(link) == frozenset({(0, 1), (2, 3)})

    def test_empty_linkage(self, grid3):
        graph, _ = grid3
        link = Linkage((), graph)
        assert pattern_of(link) == frozenset()
        assert pairing_of(link) == frozenset()


class TestVitalLinkage:
    def test_cycle_paths_vital(self):
        # C4 split into two opposite edges: the only spanning linkage
        # with this pairing.  Re-pairing the same endpoints as
        # (0,3),(1,2) spans too, so the endpoint-set reading says no.
        c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        link = Linkage(((0, 1), (3, 2)), c4)
        assert is_vital_linkage(c4, link)
        assert not is_vital_linkage(c4, link, match=PATTERN_ENDPOINT_SET)

    def test_hamiltonian_path_in_k4_not_vital(self):
        k4 = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        ham = Linkage(((0, 1, 2, 3),), k4)
        # 0,2,1,3 spans with the same endpoints
        assert not is_vital_linkage(k4, ham)

    def test_non_spanning_linkage_rejected(self):
        k4 = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        with pytest.raises(ValueError):
            is_vital_linkage(k4, Linkage(((0, 1),), k4))

    def test_matching_rule_changes_the_answer(self):
        """The generated 3x3 instance separates the two semantics.

        Its unique solution is vital when rival linkages must reuse the
        same pairing.  Re-pairing the same four endpoints as (s0,s1) and
        (t0,t1) admits a different spanning linkage, so the endpoint-set
        reading says no.
        """
        inst = build_instance(1, s0_placement=S0_BOTTOM_LEFT)
        out = solve(inst, mode="count_up_to", cap=2, require_spanning=True)
        sol = out.solutions[0]
        assert sol.paths == ((0, 1, 2, 8, 7, 6), (3, 4, 5))
        assert is_vital_linkage(inst.graph, sol, match=PATTERN_PAIRING)
        assert not is_vital_linkage(inst.graph, sol, match=PATTERN_ENDPOINT_SET)
        rival = Linkage(((0, 3), (6, 7, 4, 1, 2, 8, 5)), inst.graph)
        assert spans_all_vertices(rival)
        assert pattern_of(rival) == pattern_of(sol)
        assert pairing_of(rival) != pairing_of(sol)

    def test_bad_match_value(self):
        c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        link = Linkage(((0, 1), (3, 2)), c4)
        with pytest.raises(ValueError):
            is_vital_linkage(c4, link, match="loose")


class TestIrrelevantVertices:
    def test_pendant_is_irrelevant(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)])
        rep = irrelevant_vertices(Instance.make(g, [(0, 2)]))
        assert rep.baseline_status == STATUS_SOLVABLE
        assert rep.irrelevant == frozenset({3})
        assert rep.relevant == frozenset({1})
        assert rep.indeterminate == frozenset()

    def test_unsolvable_instance(self):
        # deleting anything keeps an unsolvable instance unsolvable
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        rep = irrelevant_vertices(Instance.make(g, [(0, 2)]))
        assert rep.baseline_status == STATUS_UNSOLVABLE
        assert rep.irrelevant == frozenset({1, 3})

    def test_tiny_budget_reports_indeterminate(self, two_pair):
        rep = irrelevant_vertices(two_pair, max_nodes=2)
        assert rep.baseline_status == STATUS_ABORTED
        assert rep.indeterminate == frozenset({1, 3, 4, 5, 7})
        assert rep.irrelevant == rep.relevant == frozenset()
