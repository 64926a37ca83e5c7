#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Unit tests for the K_{2,t}-bootstrap closure engine.

Covers the addable-edge rule, both schedulers, certificate traces and
the agreement between the local rule and the generic H-bootstrap oracle.
"""

import numpy as np
import pytest

from tests.conftest import random_graph
from perclab.closure import (
    ClosureStep,
    ClosureTrace,
    addable_edges,
    close_generic,
    close_k2t,
    percolates,
    replay_trace,
    trace_to_dict,
    validate_step,
)
from perclab.errors import DomainError, UsageError
from perclab.gadgets import build_complete, build_complete_bipartite, build_Ht, build_remark_gadget
from perclab.graph import common_neighbor_count, find_complete_bipartite, from_edges
from perclab.structure import COMPLETE_BIPARTITE, classify_structure, twins


def k2t_minus_edge(t):
    """K_{2,t} with 2-side {0, 1} and the edge (0, 2) removed."""
    edges = [(x, y) for x in (0, 1) for y in range(2, t + 2) if (x, y) != (0, 2)]
    return from_edges(t + 2, edges)


def random_instances(count, t, max_n, seed):
    """Random graphs with n in [2, max_n] and edge probability in [0.25, 0.75]."""
    rng = np.random.default_rng(seed * 100 + t)
    for i in range(count):
        n = int(rng.integers(2, max_n + 1))
        p = float(rng.uniform(0.25, 0.75))
        yield random_graph(n, p, seed=int(rng.integers(0, 2**31)))


def sparse_instances(count, t, max_n, seed):
    """Random graphs with n in [t + 2, max_n] and edge probability in [0.05, 0.35]."""
    rng = np.random.default_rng(seed * 1000 + t)
    for _ in range(count):
        n = int(rng.integers(t + 2, max_n + 1))
        p = float(rng.uniform(0.05, 0.35))
        yield random_graph(n, p, seed=int(rng.integers(0, 2**31)))


def nested_pair(rng, max_n):
    """(G, G') with G ⊆ G': G keeps each edge of G' with probability 1/2."""
    n = int(rng.integers(4, max_n + 1))
    big = random_graph(n, float(rng.uniform(0.1, 0.5)), seed=int(rng.integers(0, 2**31)))
    keep = rng.random(big.m) < 0.5
    small = from_edges(n, [e for e, k in zip(big.edges(), keep) if k])
    return small, big


def merged_pairs_violations(closure, t):
    """Pairs sharing at least t-1 neighbours in the closure that are not twins there."""
    bad = []
    for x in range(closure.n):
        for y in range(x + 1, closure.n):
            if common_neighbor_count(closure, x, y) >= t - 1 and not twins(closure, x, y):
                bad.append((x, y))
    return bad


class TestAddableEdges:
    """Tests for addable_edges function."""

    @pytest.mark.parametrize("t", [2, 3, 4, 5])
    def test_completes_k2t(self, t):
        """K_{2,t} minus one edge: exactly the missing edge is addable."""
        assert addable_edges(k2t_minus_edge(t), t) == [(0, 2)]

    def test_k23_with_t4(self, k23):
        """K_{2,3} holds no K_{2,4} through any non-edge."""
        assert addable_edges(k23, 4) == []

    @pytest.mark.parametrize("t", [2, 3, 4])
    def test_complete_graph(self, t):
        """K_n has no non-edges."""
        assert addable_edges(build_complete(6), t) == []

    def test_t_below_two(self, k23):
        """t = 1 is rejected."""
        with pytest.raises(UsageError):
            addable_edges(k23, 1)

    def test_path_with_t2(self):
        """For t = 2 the path 0-1-2-3 gains exactly the closing edge 0-3."""
        path = from_edges(4, [(0, 1), (1, 2), (2, 3)])
        assert addable_edges(path, 2) == [(0, 3)]


class TestCloseK2t:
    """Tests for close_k2t function."""

    @pytest.mark.parametrize("t", [2, 3, 4])
    def test_complete_is_fixed(self, t):
        """close_k2t(K_n, t) = K_n with an empty trace."""
        g = build_complete(7)
        closure, trace = close_k2t(g, t)
        assert closure == g
        assert len(trace) == 0

    def test_k33_is_closed_for_t4(self):
        """close_k2t(K_{3,3}, 4) = K_{3,3}."""
        g = build_complete_bipartite(3, 3)
        closure, _ = close_k2t(g, 4)
        assert closure == g

    @pytest.mark.parametrize("t", [3, 4, 5, 6])
    def test_k2t_minus_edge(self, t):
        """The missing edge comes back and nothing else is added."""
        closure, trace = close_k2t(k2t_minus_edge(t), t)
        assert closure == build_complete_bipartite(2, t)
        assert [s.edge for s in trace.steps] == [(0, 2)]
        assert classify_structure(closure).kind == COMPLETE_BIPARTITE

    def test_ht4_closure_contains_k33(self):
        """The closure of ℋ_4 contains K_{3,3}."""
        closure, _ = close_k2t(build_Ht(4).graph, 4)
        assert find_complete_bipartite(closure, 3, 3) is not None

    @pytest.mark.parametrize("t", [4, 5, 6])
    def test_ht_closure_contains_kt1t1(self, t):
        """The closure of ℋ_t contains K_{t-1,t-1}."""
        closure, _ = close_k2t(build_Ht(t).graph, t, record_trace=False)
        assert find_complete_bipartite(closure, t - 1, t - 1) is not None

    @pytest.mark.parametrize("t", [4, 5, 6])
    def test_remark_gadget_closes_to_complete_bipartite(self, t):
        """𝒢_{t-1}(u; u_1..u_{t-2}) closes to K_{t-1,(t-1)(t-2)}, so it holds K_{t-1,t-1}."""
        closure, _ = close_k2t(build_remark_gadget(t).graph, t, record_trace=False)
        shape = classify_structure(closure)
        assert shape.kind == COMPLETE_BIPARTITE
        assert shape.sizes == (t - 1, (t - 1) * (t - 2))
        assert find_complete_bipartite(closure, t - 1, t - 1) is not None

    def test_no_addable_edges_remain(self, make_random_graph):
        """The closure is a fixpoint of the addable rule."""
        for seed in range(20):
            g = make_random_graph(12, 0.35, seed)
            closure, _ = close_k2t(g, 3)
            assert addable_edges(closure, 3) == []

    def test_idempotent(self, make_random_graph):
        """Closing a closure changes nothing."""
        for seed in range(20):
            closure, _ = close_k2t(make_random_graph(14, 0.3, seed), 4)
            again, trace = close_k2t(closure, 4)
            assert again == closure
            assert len(trace) == 0

    def test_monotone(self, make_random_graph):
        """G ⊆ G' implies closure(G) ⊆ closure(G')."""
        for seed in range(20):
            big = make_random_graph(14, 0.4, seed)
            small = from_edges(14, big.edges()[::2])
            closed_small, _ = close_k2t(small, 3)
            closed_big, _ = close_k2t(big, 3)
            assert closed_small.is_subgraph_of(closed_big)

    def test_schedulers_agree(self, make_random_graph):
        """Sequential and round-based processing reach the same fixpoint."""
        for seed in range(30):
            n = 6 + seed % 15
            g = make_random_graph(n, 0.3, seed)
            for t in (2, 3, 4):
                sequential, _ = close_k2t(g, t)
                rounds, _ = close_k2t(g, t, scheduler="rounds")
                assert sequential == rounds

    def test_trace_replays(self, make_random_graph):
        """Replaying the trace from G validates every step and yields Ĝ."""
        for seed in range(20):
            g = make_random_graph(12, 0.35, seed)
            for scheduler in ("sequential", "rounds"):
                closure, trace = close_k2t(g, 3, scheduler=scheduler)
                assert replay_trace(g, trace) == closure
                assert len(trace) == closure.m - g.m

    def test_rounds_partition_steps(self, make_random_graph):
        """Rounds are consecutive index ranges and round one is E_1."""
        g = make_random_graph(12, 0.35, 3)
        closure, trace = close_k2t(g, 2, scheduler="rounds")
        flat = [i for block in trace.rounds for i in block]
        assert flat == list(range(len(trace)))
        if trace.rounds:
            first = sorted(tuple(sorted(trace.steps[i].edge)) for i in trace.rounds[0])
            assert first == addable_edges(g, 2)

    def test_rounds_without_trace(self, k23):
        """record_trace=False drops both steps and rounds."""
        _, trace = close_k2t(k23, 2, scheduler="rounds", record_trace=False)
        assert trace.steps == []
        assert trace.rounds is None

    def test_unknown_scheduler(self, k23):
        """Only the two schedulers exist."""
        with pytest.raises(UsageError):
            close_k2t(k23, 3, scheduler="parallel")

    def test_t_below_two(self, k23):
        """t = 1 is rejected."""
        with pytest.raises(UsageError):
            close_k2t(k23, 1)


class TestClosureInvariants:
    """Property sweeps over random graphs."""

    @pytest.mark.parametrize("t", [2, 3, 4])
    def test_common_neighbours_merge(self, t):
        """Pairs with t-1 common neighbours have N(x)\\{y} = N(y)\\{x} in the closure."""
        for g in sparse_instances(20, t, 16, seed=3):
            closure, _ = close_k2t(g, t, record_trace=False)
            assert merged_pairs_violations(closure, t) == []

    def test_common_neighbours_in_input_merge(self, make_random_graph):
        """The merge already holds for pairs counted in the input graph."""
        g = make_random_graph(18, 0.3, 11)
        closure, _ = close_k2t(g, 3, record_trace=False)
        for x in range(g.n):
            for y in range(x + 1, g.n):
                if common_neighbor_count(g, x, y) >= 2:
                    assert twins(closure, x, y)

    @pytest.mark.slow
    @pytest.mark.parametrize("t", [2, 3, 4, 5])
    def test_common_neighbours_merge_sweep(self, t):
        """The merge property on 200 random graphs per t, n ≤ 40."""
        failures = []
        for index, g in enumerate(sparse_instances(200, t, 40, seed=5)):
            closure, _ = close_k2t(g, t, record_trace=False)
            if merged_pairs_violations(closure, t):
                failures.append(index)
        assert failures == []

    @pytest.mark.slow
    def test_monotone_and_idempotent_sweep(self):
        """500 nested pairs G ⊆ G', n ≤ 30: closures nested and closing twice changes nothing."""
        rng = np.random.default_rng(2024)
        failures = []
        for index in range(500):
            small, big = nested_pair(rng, 30)
            t = 2 + index % 4
            closed_small, _ = close_k2t(small, t, record_trace=False)
            closed_big, _ = close_k2t(big, t, record_trace=False)
            again, trace = close_k2t(closed_small, t)
            if not closed_small.is_subgraph_of(closed_big) or again != closed_small or len(trace):
                failures.append(index)
        assert failures == []

    @pytest.mark.slow
    @pytest.mark.parametrize("t", [2, 3, 4, 5])
    def test_schedulers_agree_sweep(self, t):
        """Sequential and round fixpoints coincide on 200 graphs per t, n ≤ 20."""
        failures = []
        for index, g in enumerate(random_instances(200, t, 20, seed=9)):
            sequential, _ = close_k2t(g, t, record_trace=False)
            rounds, _ = close_k2t(g, t, scheduler="rounds", record_trace=False)
            if sequential != rounds:
                failures.append(index)
        assert failures == []


class TestTraces:
    """Tests for certificate validation and replay."""

    def test_certificate_shape(self):
        """Each step's t-set contains v and avoids the 2-side."""
        _, trace = close_k2t(k2t_minus_edge(4), 4)
        step = trace.steps[0]
        assert step.edge == (0, 2)
        assert step.partner == 1
        assert step.tset == (2, 3, 4, 5)

    def test_validate_step_rejects_short_tset(self):
        """A t-set of the wrong size is reported."""
        g = build_complete_bipartite(2, 4)
        step = ClosureStep(edge=(0, 2), partner=1, tset=(2, 3, 4))
        assert "expected 4" in validate_step(list(g.adjacency), step, 4)

    def test_validate_step_rejects_non_neighbour(self):
        """Every t-set vertex must be a common neighbour."""
        g = from_edges(6, [(0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)])
        step = ClosureStep(edge=(0, 2), partner=1, tset=(2, 3, 4, 5))
        assert "not a common neighbour" in validate_step(list(g.adjacency), step, 4)

    def test_replay_rejects_present_edge(self, k23):
        """A step may not re-add an existing edge."""
        trace = ClosureTrace(t=2, steps=[ClosureStep(edge=(0, 2), partner=1, tset=(2, 3))])
        with pytest.raises(DomainError, match="already present"):
            replay_trace(k23, trace)

    def test_replay_rejects_bad_witness(self):
        """A step whose copy does not exist is rejected."""
        g = from_edges(5, [(1, 2), (1, 3)])
        trace = ClosureTrace(t=2, steps=[ClosureStep(edge=(0, 2), partner=1, tset=(2, 4))])
        with pytest.raises(DomainError, match="invalid witness"):
            replay_trace(g, trace)

    def test_trace_to_dict(self):
        """Trace documents list steps and rounds."""
        _, trace = close_k2t(k2t_minus_edge(3), 3, scheduler="rounds")
        doc = trace_to_dict(trace)
        assert doc["t"] == 3
        assert doc["steps"] == [{"edge": [0, 2], "partner": 1, "tset": [2, 3, 4]}]
        assert doc["rounds"] == [[0]]


class TestPercolates:
    """Tests for percolates function."""

    def test_complete(self):
        """K_n percolates for every t."""
        assert percolates(build_complete(5), 4)

    def test_k23_t4(self, k23):
        """K_{2,3} does not percolate under K_{2,4}."""
        assert not percolates(k23, 4)

    def test_too_few_vertices(self):
        """A non-complete graph on fewer than t+2 vertices cannot percolate."""
        almost = from_edges(5, [e for e in build_complete(5).edges() if e != (0, 1)])
        assert not percolates(almost, 4)

    def test_dense_graph_percolates_t2(self):
        """K_5 minus an edge percolates under K_{2,2}."""
        g = from_edges(5, [e for e in build_complete(5).edges() if e != (0, 1)])
        assert percolates(g, 2)


class TestCloseGeneric:
    """Tests for the generic H-bootstrap oracle."""

    def test_triangle_on_path(self):
        """K_3-bootstrap on a 2-path adds the closing edge."""
        path = from_edges(3, [(0, 1), (1, 2)])
        assert close_generic(path, build_complete(3)) == build_complete(3)

    def test_k24_minus_edge(self):
        """close_generic(K_{2,4} minus an edge, K_{2,4}) = K_{2,4}."""
        pattern = build_complete_bipartite(2, 4)
        assert close_generic(k2t_minus_edge(4), pattern) == pattern

    def test_edgeless_pattern(self, k23):
        """An edgeless H is rejected."""
        with pytest.raises(UsageError):
            close_generic(k23, from_edges(3, []))

    def test_large_pattern(self, k23):
        """Patterns above the oracle scale are rejected."""
        with pytest.raises(UsageError):
            close_generic(k23, build_complete_bipartite(2, 11))

    @pytest.mark.parametrize("t", [2, 3, 4])
    def test_agrees_with_local_rule_small(self, t):
        """A quick oracle check on a few small graphs."""
        pattern = build_complete_bipartite(2, t)
        for g in random_instances(15, t, 8, seed=1):
            closure, _ = close_k2t(g, t, record_trace=False)
            assert close_generic(g, pattern) == closure

    @pytest.mark.slow
    @pytest.mark.parametrize("t", [2, 3, 4, 5])
    def test_oracle_equivalence_sweep(self, t):
        """close_k2t ≡ close_generic(·, K_{2,t}) on 500 random graphs, n ≤ 12."""
        pattern = build_complete_bipartite(2, t)
        mismatches = []
        for index, g in enumerate(random_instances(500, t, 12, seed=7)):
            closure, _ = close_k2t(g, t, record_trace=False)
            if close_generic(g, pattern) != closure:
                mismatches.append(index)
        assert mismatches == []
