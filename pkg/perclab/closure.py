#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
K_{2,t}-bootstrap closure engine.

A non-edge uv can be added exactly when G + uv contains a copy of
K_{2,t} through uv. With u on the 2-side and partner w, that copy
exists iff v ∈ N(w) and |N(u) ∩ N(w) \\ {v}| >= t-1. Read per partner
pair, the rule says: whenever two vertices z, w share at least t-1
neighbours, each of them gains the other's remaining neighbours. The
engine therefore scans vertex pairs at distance two instead of testing
non-edges, and only rescans vertices whose neighbourhood changed.

Two schedulers reach the same fixpoint:

- ``sequential`` adds edges one at a time (default, cheaper)
- ``rounds`` adds every addable edge of G_{i-1} at once, recording the
  rounds E_1, E_2, ... of the round-based process

:func:`close_generic` is an independent H-bootstrap closure built on
subgraph-monomorphism search; it serves as the oracle for the local rule.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

from perclab.constants import ORACLE_MAX_PATTERN_VERTICES
from perclab.errors import DomainError, UsageError
from perclab.graph import Edge, Graph, first_bits, iter_bits

logger = logging.getLogger(__name__)

SCHEDULERS = ("sequential", "rounds")


@dataclass(frozen=True)
class ClosureStep:
    """
    One added edge with its K_{2,t} certificate.

    The edge is oriented (u, v): u sits on the 2-side of the certificate
    together with ``partner``, and v belongs to ``tset``.

    Attributes:
        edge: the added pair (u, v)
        partner: the second 2-side vertex w
        tset: the t-side of the copy, sorted; contains v, avoids u and w
    """

    edge: Edge
    partner: int
    tset: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"edge": list(self.edge), "partner": self.partner, "tset": list(self.tset)}


@dataclass
class ClosureTrace:
    """
    Ordered log of added edges.

    Attributes:
        t: parameter of the K_{2,t} process that produced the trace
        steps: added edges in order
        rounds: optional partition of step indices into rounds E_1, E_2, ...
    """

    t: int
    steps: List[ClosureStep] = field(default_factory=list)
    rounds: Optional[List[List[int]]] = None

    def __len__(self) -> int:
        return len(self.steps)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "steps": [s.to_dict() for s in self.steps],
            "rounds": self.rounds,
        }


def _check_t(t: int) -> None:
    if t < 2:
        raise UsageError(f"t must be at least 2, got {t}")


class _ClosureState:
    """Mutable adjacency used while a closure is being computed."""

    def __init__(self, graph: Graph, t: int, record: bool):
        self.n = graph.n
        self.t = t
        self.adj = list(graph.adjacency)
        self.m = graph.m
        self.complete_m = self.n * (self.n - 1) // 2
        self.record = record
        self.steps: List[ClosureStep] = []

    def is_complete(self) -> bool:
        return self.m == self.complete_m

    def twohop(self, z: int) -> int:
        reach = 0
        adj = self.adj
        for y in iter_bits(adj[z]):
            reach |= adj[y]
        return reach & ~(1 << z)

    def certificate(self, u: int, v: int, w: int, common: int) -> ClosureStep:
        tset = tuple(sorted(first_bits(common, self.t - 1) + [v]))
        return ClosureStep(edge=(u, v), partner=w, tset=tset)

    def add(self, step: ClosureStep) -> None:
        u, v = step.edge
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u
        self.m += 1
        if self.record:
            self.steps.append(step)

    def gains(self, z: int, w: int) -> Tuple[int, int, int]:
        """Common neighbourhood of (z, w) and what each side still lacks."""
        adj = self.adj
        common = adj[z] & adj[w]
        if common.bit_count() < self.t - 1:
            return common, 0, 0
        gain_z = adj[w] & ~adj[z] & ~(1 << z)
        gain_w = adj[z] & ~adj[w] & ~(1 << w)
        return common, gain_z, gain_w

    def graph(self) -> Graph:
        return Graph(self.n, self.adj, self.m)


def _run_sequential(state: _ClosureState, stop_when_complete: bool) -> None:
    queue = deque(range(state.n))
    queued = [True] * state.n

    def touch(v: int) -> None:
        if not queued[v]:
            queued[v] = True
            queue.append(v)

    while queue:
        if stop_when_complete and state.is_complete():
            return
        z = queue.popleft()
        queued[z] = False
        changed = False
        for w in iter_bits(state.twohop(z)):
            common, gain_z, _ = state.gains(z, w)
            for y in iter_bits(gain_z):
                state.add(state.certificate(z, y, w, common))
                touch(y)
                changed = True
            common, _, gain_w = state.gains(z, w)
            if gain_w:
                for y in iter_bits(gain_w):
                    state.add(state.certificate(w, y, z, common))
                    touch(y)
                touch(w)
                changed = True
        if changed:
            touch(z)


def _run_rounds(state: _ClosureState, stop_when_complete: bool) -> List[List[int]]:
    rounds: List[List[int]] = []
    frontier = list(range(state.n))
    while frontier:
        if stop_when_complete and state.is_complete():
            break
        pending: Dict[Edge, ClosureStep] = {}
        for z in frontier:
            for w in iter_bits(state.twohop(z)):
                common, gain_z, gain_w = state.gains(z, w)
                for y in iter_bits(gain_z):
                    key = (min(z, y), max(z, y))
                    if key not in pending:
                        pending[key] = state.certificate(z, y, w, common)
                for y in iter_bits(gain_w):
                    key = (min(w, y), max(w, y))
                    if key not in pending:
                        pending[key] = state.certificate(w, y, z, common)
        if not pending:
            break
        start = len(state.steps)
        touched = set()
        for key in sorted(pending):
            state.add(pending[key])
            touched.update(key)
        rounds.append(list(range(start, start + len(pending))))
        logger.debug("round %d added %d edges (m=%d)", len(rounds), len(pending), state.m)
        frontier = sorted(touched)
    return rounds


def close_k2t(
    graph: Graph,
    t: int,
    scheduler: str = "sequential",
    record_trace: bool = True,
    stop_when_complete: bool = False,
) -> Tuple[Graph, ClosureTrace]:
    """
    Compute the K_{2,t}-bootstrap closure Ĝ.

    Args:
        graph: starting graph G
        t: size of the larger side of K_{2,t} (t >= 2)
        scheduler: "sequential" (default) or "rounds"; the rounds
          scheduler also fills ``trace.rounds``
        record_trace: keep the per-edge certificates (disable for bulk
          Monte Carlo trials)
        stop_when_complete: return as soon as the graph is complete

    Returns:
        (Ĝ, trace) where no non-edge of Ĝ is addable and replaying the
        trace from G reproduces Ĝ.

    Raises:
        UsageError: if t < 2 or the scheduler is unknown
    """
    _check_t(t)
    if scheduler not in SCHEDULERS:
        raise UsageError(f"unknown scheduler {scheduler!r}; expected one of {SCHEDULERS}")
    state = _ClosureState(graph, t, record_trace or scheduler == "rounds")
    trace = ClosureTrace(t=t)
    if scheduler == "rounds":
        trace.rounds = _run_rounds(state, stop_when_complete)
    else:
        _run_sequential(state, stop_when_complete)
    if record_trace:
        trace.steps = state.steps
    elif trace.rounds is not None:
        trace.rounds = None
    logger.debug("closure t=%d: m %d -> %d", t, graph.m, state.m)
    return state.graph(), trace


def addable_edges(graph: Graph, t: int) -> List[Edge]:
    """
    Return every non-edge (u, v), u < v, whose insertion creates a K_{2,t}.

    This is exactly the first round E_1 of the round-based process.
    """
    _check_t(t)
    state = _ClosureState(graph, t, record=False)
    found = set()
    for z in range(graph.n):
        for w in iter_bits(state.twohop(z)):
            _, gain_z, gain_w = state.gains(z, w)
            for y in iter_bits(gain_z):
                found.add((min(z, y), max(z, y)))
            for y in iter_bits(gain_w):
                found.add((min(w, y), max(w, y)))
    return sorted(found)


def validate_step(adj: List[int], step: ClosureStep, t: int) -> Optional[str]:
    """
    Check a certificate against an adjacency list that already holds the
    step's edge. Returns None when valid, else a description.
    """
    u, v = step.edge
    w = step.partner
    tset = set(step.tset)
    if len(tset) != t or len(step.tset) != t:
        return f"t-set has {len(tset)} distinct vertices, expected {t}"
    if w in (u, v):
        return "partner coincides with an edge endpoint"
    if v not in tset:
        return "edge endpoint missing from t-set"
    if u in tset or w in tset:
        return "2-side vertex inside t-set"
    for x in tset:
        if not (adj[u] >> x & 1 and adj[w] >> x & 1):
            return f"vertex {x} is not a common neighbour of {u} and {w}"
    return None


def replay_trace(graph: Graph, trace: ClosureTrace, t: Optional[int] = None) -> Graph:
    """
    Replay a closure trace from G, validating every step.

    ``t`` overrides the parameter recorded in the trace.

    Raises:
        DomainError: if an edge is already present or a certificate fails
    """
    adj = list(graph.adjacency)
    for index, step in enumerate(trace.steps):
        u, v = step.edge
        if adj[u] >> v & 1:
            raise DomainError(f"step {index}: edge ({u},{v}) already present")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        problem = validate_step(adj, step, trace.t if t is None else t)
        if problem is not None:
            raise DomainError(f"step {index}: invalid witness: {problem}")
    return Graph(graph.n, adj)


def trace_to_dict(trace: ClosureTrace) -> Dict[str, Any]:
    return trace.to_dict()


def percolates(graph: Graph, t: int) -> bool:
    """True iff the K_{2,t}-closure of G is complete."""
    _check_t(t)
    if graph.is_complete():
        return True
    if graph.n < t + 2:
        return False
    closed, _ = close_k2t(graph, t, record_trace=False, stop_when_complete=True)
    return closed.is_complete()


# Generic H-bootstrap oracle


def to_networkx(graph: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    g.add_edges_from(graph.edges())
    return g


def _anchor_match(host_attrs: Dict[str, Any], pattern_attrs: Dict[str, Any]) -> bool:
    return host_attrs.get("anchor") == pattern_attrs.get("anchor")


def _anchored(g: nx.Graph, a: Any, b: Any) -> nx.Graph:
    g = g.copy()
    g.nodes[a]["anchor"] = "a"
    g.nodes[b]["anchor"] = "b"
    return g


def _edge_orbit_representatives(pattern: nx.Graph) -> List[Tuple[Any, Any]]:
    """One oriented edge per orbit of Aut(H) acting on oriented edges."""
    reps: List[Tuple[Any, Any]] = []
    for a, b in pattern.edges():
        for x, y in ((a, b), (b, a)):
            source = _anchored(pattern, x, y)
            seen = False
            for ra, rb in reps:
                matcher = isomorphism.GraphMatcher(
                    _anchored(pattern, ra, rb), source, node_match=_anchor_match
                )
                if matcher.is_isomorphic():
                    seen = True
                    break
            if not seen:
                reps.append((x, y))
    return reps


def creates_copy(host: nx.Graph, u: int, v: int, pattern: nx.Graph,
                 reps: Optional[List[Tuple[Any, Any]]] = None) -> bool:
    """True if ``host`` (which contains uv) has a copy of H using edge uv."""
    if reps is None:
        reps = _edge_orbit_representatives(pattern)
    for a, b in reps:
        for x, y in ((u, v), (v, u)):
            matcher = isomorphism.GraphMatcher(
                _anchored(host, x, y), _anchored(pattern, a, b), node_match=_anchor_match
            )
            if matcher.subgraph_is_monomorphic():
                return True
    return False


def close_generic(graph: Graph, pattern: Graph) -> Graph:
    """
    H-bootstrap closure by subgraph-monomorphism search.

    Runs the round process literally: in each round every non-edge e of
    G_{i-1} such that G_{i-1} + e contains a copy of H through e is
    added. Intended as a correctness oracle on small graphs.

    Raises:
        UsageError: if H is edgeless or has more than
          ORACLE_MAX_PATTERN_VERTICES vertices
    """
    if pattern.m == 0:
        raise UsageError("pattern graph H must have at least one edge")
    if pattern.n > ORACLE_MAX_PATTERN_VERTICES:
        raise UsageError(
            f"pattern has {pattern.n} vertices; the oracle supports at most "
            f"{ORACLE_MAX_PATTERN_VERTICES}"
        )
    h = to_networkx(pattern)
    reps = _edge_orbit_representatives(h)
    current = graph
    while True:
        if current.m + 1 < pattern.m:
            return current
        host = to_networkx(current)
        added = []
        for u, v in current.non_edges():
            host.add_edge(u, v)
            if creates_copy(host, u, v, h, reps):
                added.append((u, v))
            host.remove_edge(u, v)
        if not added:
            return current
        current = current.add_edges(added)
