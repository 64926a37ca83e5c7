#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Exact densities.

d(G) = |E(G)| / |V(G)| and m(G) = max d(H) over subgraphs H of G are
kept as :class:`fractions.Fraction` values throughout; no float ever
takes part in a comparison. Only induced subgraphs need to be searched:
adding the missing edges of G on the same vertex set never lowers the
density.

Two exact solvers are provided:

- :func:`max_density_bruteforce` enumerates induced subsets in Gray-code
  order with incremental edge counts (n <= 26)
- :func:`max_density_flow` runs the min-cut construction for the
  densest subgraph with rational guesses, stopping once the bracket is
  narrower than 1/(n(n-1)), the smallest gap between two distinct
  subgraph densities

The module also houses η(t), the seven candidate subsets of ℋ_t and the
exponents that bracket the K_{2,t} threshold.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Tuple

import networkx as nx

from perclab.constants import (
    AUTO_BRUTEFORCE_MAX_VERTICES,
    BRUTEFORCE_CHUNKS,
    BRUTEFORCE_MAX_VERTICES,
)
from perclab.errors import UsageError
from perclab.export import rational_str
from perclab.gadgets import build_Ht
from perclab.graph import Graph, VertexSet, induced_edge_count, iter_bits, mask_of

logger = logging.getLogger(__name__)

METHODS = ("auto", "bruteforce", "flow")

Executor = Callable[..., Iterable[Any]]


@dataclass(frozen=True)
class DensityReport:
    """
    Maximum subgraph density with a vertex set achieving it.

    Attributes:
        value: m(G)
        witness: vertex set S with d(G[S]) = value
        method: "bruteforce" or "flow"
    """

    value: Fraction
    witness: VertexSet
    method: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": rational_str(self.value),
            "witness": sorted(self.witness),
            "method": self.method,
        }


def density(graph: Graph) -> Fraction:
    """
    Return d(G) = m/n exactly.

    Raises:
        UsageError: for the graph with no vertices
    """
    if graph.n == 0:
        raise UsageError("density is undefined for the empty graph")
    return Fraction(graph.m, graph.n)


def subset_density(graph: Graph, vertices: Iterable[int]) -> Fraction:
    """Density of the induced subgraph G[S]."""
    mask = mask_of(vertices)
    if not mask:
        raise UsageError("density is undefined for the empty vertex set")
    return Fraction(induced_edge_count(graph, mask), mask.bit_count())


def eta(t: int) -> Fraction:
    """
    η(t), the maximum subgraph density of ℋ_t.

    Even t: (6t²-14t+12)/(3t²-4t+8); odd t: (2t²-4t+2)/(t²-t+2).

    Raises:
        UsageError: if t < 4

    Example:
        >>> eta(4)
        Fraction(13, 10)
    """
    if t < 4:
        raise UsageError(f"η(t) is defined for t >= 4, got t={t}")
    if t % 2 == 0:
        return Fraction(6 * t * t - 14 * t + 12, 3 * t * t - 4 * t + 8)
    return Fraction(2 * t * t - 4 * t + 2, t * t - t + 2)


# Brute force


def _better(edges: int, size: int, best_edges: int, best_size: int) -> bool:
    return best_size == 0 or edges * best_size > best_edges * size


def _bruteforce_chunk(task: Tuple[Tuple[int, ...], int, int]) -> Tuple[int, int, int]:
    """
    Scan every subset whose high bits equal ``prefix`` in Gray-code order.

    Returns (edges, size, mask) of the first densest subset met, size 0
    if the range holds only the empty set.
    """
    adjacency, low, prefix = task
    mask = prefix
    size = prefix.bit_count()
    edges = sum((adjacency[v] & prefix).bit_count() for v in iter_bits(prefix)) // 2
    best = (edges, size, mask) if size else (0, 0, 0)
    for i in range(1, 1 << low):
        v = (i & -i).bit_length() - 1
        bit = 1 << v
        if mask & bit:
            mask ^= bit
            edges -= (adjacency[v] & mask).bit_count()
            size -= 1
        else:
            edges += (adjacency[v] & mask).bit_count()
            mask |= bit
            size += 1
        if size and _better(edges, size, best[0], best[1]):
            best = (edges, size, mask)
    return best


def bruteforce_tasks(graph: Graph) -> List[Tuple[Tuple[int, ...], int, int]]:
    """Split the subset lattice into disjoint Gray-code ranges by high bits."""
    high = min(graph.n, BRUTEFORCE_CHUNKS.bit_length() - 1)
    low = graph.n - high
    return [(graph.adjacency, low, c << low) for c in range(1 << high)]


def max_density_bruteforce(graph: Graph, executor: Executor = map) -> DensityReport:
    """
    Exact m(G) by enumerating all nonempty induced subsets.

    Ranges of the enumeration are independent tasks; ``executor`` is a
    map-compatible callable (builtin ``map`` or a pool's ``map``) and the
    per-range maxima are merged in range order, so the witness does not
    depend on how the ranges were scheduled.

    Raises:
        UsageError: if n = 0 or n > BRUTEFORCE_MAX_VERTICES
    """
    if graph.n == 0:
        raise UsageError("maximum density is undefined for the empty graph")
    if graph.n > BRUTEFORCE_MAX_VERTICES:
        raise UsageError(
            f"brute force enumerates at most {BRUTEFORCE_MAX_VERTICES} vertices, got n={graph.n}"
        )
    best_edges, best_size, best_mask = 0, 0, 0
    for edges, size, mask in executor(_bruteforce_chunk, bruteforce_tasks(graph)):
        if size and _better(edges, size, best_edges, best_size):
            best_edges, best_size, best_mask = edges, size, mask
    return DensityReport(
        value=Fraction(best_edges, best_size),
        witness=frozenset(iter_bits(best_mask)),
        method="bruteforce",
    )


# Min-cut


def denser_than(graph: Graph, guess: Fraction) -> int:
    """
    Return a vertex bitset of density > ``guess``, or 0 if none exists.

    With guess = p/q, the network has source arcs of capacity m·q, sink
    arcs m·q + 2p - q·d(v), and capacity q in both directions along each
    edge. A cut with source side {s} ∪ S costs q·m·n + 2p|S| - 2q|E(S)|,
    so some S beats the guess exactly when the minimum cut is below q·m·n.
    """
    p, q = guess.numerator, guess.denominator
    n, m = graph.n, graph.m
    network = nx.DiGraph()
    source, sink = "s", "t"
    for v in range(n):
        network.add_edge(source, v, capacity=m * q)
        network.add_edge(v, sink, capacity=m * q + 2 * p - q * graph.degree(v))
    for u, v in graph.edges():
        network.add_edge(u, v, capacity=q)
        network.add_edge(v, u, capacity=q)
    cut_value, (reachable, _) = nx.minimum_cut(network, source, sink)
    if cut_value >= q * m * n:
        return 0
    mask = mask_of(v for v in reachable if v != source)
    if not mask or Fraction(induced_edge_count(graph, mask), mask.bit_count()) <= guess:
        return 0
    return mask


def max_density_flow(graph: Graph) -> DensityReport:
    """
    Exact m(G) by bisection over min-cut feasibility tests.

    The bracket starts at [d(G), (n-1)/2]. Each successful test moves the
    lower end to the density of the subset it returned, so the lower end
    is always achieved by the recorded witness and the upper end is never
    beaten. The loop stops once hi - lo < 1/(n(n-1)).
    """
    n = graph.n
    if n == 0:
        raise UsageError("maximum density is undefined for the empty graph")
    if graph.m == 0:
        return DensityReport(value=Fraction(0), witness=frozenset([0]), method="flow")
    lo = density(graph)
    witness = graph.full_mask
    hi = Fraction(n - 1, 2)
    separation = Fraction(1, n * (n - 1))
    steps = 0
    while hi - lo >= separation:
        guess = (lo + hi) / 2
        found = denser_than(graph, guess)
        steps += 1
        if found:
            witness = found
            lo = Fraction(induced_edge_count(graph, found), found.bit_count())
        else:
            hi = guess
    logger.debug("flow solver: m(G)=%s after %d cuts", rational_str(lo), steps)
    return DensityReport(value=lo, witness=frozenset(iter_bits(witness)), method="flow")


def max_density(graph: Graph, method: str = "auto", executor: Executor = map) -> DensityReport:
    """
    Dispatch to the brute-force or min-cut solver.

    "auto" uses brute force up to AUTO_BRUTEFORCE_MAX_VERTICES vertices.
    """
    if method not in METHODS:
        raise UsageError(f"unknown density method {method!r}; expected one of {METHODS}")
    if method == "auto":
        method = "bruteforce" if graph.n <= AUTO_BRUTEFORCE_MAX_VERTICES else "flow"
    if method == "bruteforce":
        return max_density_bruteforce(graph, executor)
    return max_density_flow(graph)


# ℋ_t candidates and exponents


@dataclass(frozen=True)
class Candidate:
    label: str
    vertices: VertexSet
    edges: int
    value: Fraction

    def to_row(self) -> List[Any]:
        return [self.label, len(self.vertices), self.edges, rational_str(self.value)]


def _closed_union(graph: Graph, vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= graph.adjacency[v] | 1 << v
    return mask


def candidate_sets(t: int) -> Dict[str, int]:
    """
    The seven candidate vertex sets of ℋ_t as bitsets.

    A, B and C are the unions of closed neighbourhoods (in ℋ_t) of the
    u_i, the v_j and the w_k respectively, so B contains u and C
    contains v.
    """
    gadget = build_Ht(t)
    g = gadget.graph
    u, v, w = (1 << gadget.vertex(x) for x in ("u", "v", "w"))
    a = _closed_union(g, gadget.parts("u"))
    b = _closed_union(g, gadget.parts("v"))
    c = _closed_union(g, gadget.parts("w"))
    return {
        "{u}∪A": u | a,
        "{v}∪B": v | b,
        "{w}∪C": w | c,
        "{v}∪A∪B": v | a | b,
        "{w}∪B∪C": w | b | c,
        "{u,w}∪A∪C": u | w | a | c,
        "{w}∪A∪B∪C": w | a | b | c,
    }


def seven_candidate_densities(t: int) -> List[Candidate]:
    """
    Densities of the seven candidate subgraphs of ℋ_t.

    Every candidate is an induced subgraph of ℋ_t, so none exceeds η(t);
    the largest equals η(t).

    Raises:
        UsageError: if t < 4
    """
    graph = build_Ht(t).graph
    out = []
    for label, mask in candidate_sets(t).items():
        edges = induced_edge_count(graph, mask)
        out.append(Candidate(label, frozenset(iter_bits(mask)), edges, Fraction(edges, mask.bit_count())))
    return out


@dataclass(frozen=True)
class EvenCaseReadings:
    """
    Two readings of the even-t maximiser {v}∪A∪B.

    ``block_local`` takes B inside the v-block only (u excluded);
    ``host`` takes closed neighbourhoods in ℋ_t, which adds u.
    """

    t: int
    formula: Fraction
    block_local: Candidate
    host: Candidate

    @property
    def matching(self) -> str:
        if self.host.value == self.formula:
            return "host"
        if self.block_local.value == self.formula:
            return "block_local"
        return "none"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "formula": rational_str(self.formula),
            "block_local": {"size": len(self.block_local.vertices), "density": rational_str(self.block_local.value)},
            "host": {"size": len(self.host.vertices), "density": rational_str(self.host.value)},
            "matching": self.matching,
        }


def even_case_readings(t: int) -> EvenCaseReadings:
    """
    Compare both readings of {v}∪A∪B against the even-t formula.

    Raises:
        UsageError: if t is odd or below 4
    """
    if t < 4 or t % 2:
        raise UsageError(f"even-case readings need an even t >= 4, got t={t}")
    gadget = build_Ht(t)
    graph = gadget.graph
    host_mask = candidate_sets(t)["{v}∪A∪B"]
    local_mask = host_mask & ~(1 << gadget.vertex("u"))
    readings = []
    for label, mask in (("{v}∪A∪B (block-local)", local_mask), ("{v}∪A∪B", host_mask)):
        edges = induced_edge_count(graph, mask)
        readings.append(Candidate(label, frozenset(iter_bits(mask)), edges, Fraction(edges, mask.bit_count())))
    result = EvenCaseReadings(t=t, formula=eta(t), block_local=readings[0], host=readings[1])
    logger.debug("even case t=%d: formula matches the %s reading", t, result.matching)
    return result


def containment_threshold_exponent(pattern: Graph, executor: Executor = map) -> Fraction:
    """
    Return 1/m(H): G(n, p) contains H w.h.p. once p >> n^{-1/m(H)}.

    Raises:
        UsageError: if H has no edges
    """
    if pattern.m == 0:
        raise UsageError("containment threshold needs a pattern with at least one edge")
    return 1 / max_density(pattern, executor=executor).value


def bracket_exponents(t: int) -> Dict[str, Fraction]:
    """
    Exponents e with p_c(n; K_{2,t}) compared against n^e.

    Keys:
        upper: -1/η(t), from the ℋ_t gadget
        lower: -t/(2t-3), from the disjoint-family witness
        remark_upper: -(t-1)/(2t-4), from the 𝒢_{t-1} fan alone
        generic_lower: -(t+1)/(2t-2), the bound valid for every H
        sharp (t = 4 only): -10/13, where upper and lower bounds meet
    """
    upper = -1 / eta(t)
    out = {
        "upper": upper,
        "lower": Fraction(-t, 2 * t - 3),
        "remark_upper": Fraction(-(t - 1), 2 * t - 4),
        "generic_lower": Fraction(-(t + 1), 2 * t - 2),
    }
    if t == 4:
        out["sharp"] = upper
    return out
