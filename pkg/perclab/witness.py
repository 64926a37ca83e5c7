#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Constructive non-percolation witnesses.

A witness is a graph G' ⊋ G built by merging the neighbourhoods of
selected vertex pairs; when G' equals the K_{2,t}-closure of G and is
not complete, G does not percolate. Two constructions are provided:

- :func:`lower_witness` packs a maximal family of vertex-disjoint
  K_{2,t-1} copies and merges the 2-side of every copy (any t >= 4)
- :func:`f_procedure_t4` grows components F_1, F_2, ... from K_{2,3}
  seeds by two growth rules and :func:`gprime_t4` merges every pair the
  components collected (t = 4)

The t = 4 procedure relies on three facts about its components that
hold whenever G has no small subgraph of density >= 13/10. They are
checked as the components grow; a failure raises :class:`FactViolation`
naming a vertex set whose induced subgraph has density at least 13/10.
:func:`certify_t4` and :func:`certify_general` wrap everything into a
report and never raise on such failures.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Tuple

from perclab.closure import close_k2t
from perclab.density import max_density, subset_density
from perclab.export import rational_str
from perclab.errors import FactViolation, UsageError
from perclab.graph import Edge, Graph, VertexSet, first_bits, induced_edge_count, induced_subgraph, iter_bits, mask_of

logger = logging.getLogger(__name__)

DENSE_BOUND = Fraction(13, 10)


def merge_pairs(graph: Graph, pairs: List[Tuple[int, int]]) -> Graph:
    """
    Join a to N_G(b) \\ N_G(a) and b to N_G(a) \\ N_G(b) for every pair (a, b).

    Neighbourhoods are always taken in the original G.
    """
    adj = list(graph.adjacency)
    base = graph.adjacency
    for a, b in pairs:
        gain_a = base[b] & ~base[a] & ~(1 << a)
        gain_b = base[a] & ~base[b] & ~(1 << b)
        adj[a] |= gain_a
        for x in iter_bits(gain_a):
            adj[x] |= 1 << a
        adj[b] |= gain_b
        for x in iter_bits(gain_b):
            adj[x] |= 1 << b
    return Graph(graph.n, adj)


# Disjoint K_{2,t-1} family


@dataclass(frozen=True)
class FamilyMember:
    pair: Tuple[int, int]
    tside: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"pair": list(self.pair), "tside": list(self.tside)}


@dataclass
class FamilyWitness:
    """
    Maximal family of vertex-disjoint K_{2,t-1} copies and the merged graph.

    Attributes:
        t: bootstrap parameter
        families: the copies in the order they were found
        gprime: G with the 2-side neighbourhoods of every copy merged
    """

    t: int
    families: List[FamilyMember]
    gprime: Graph

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        return [f.pair for f in self.families]


def lower_witness(graph: Graph, t: int) -> FamilyWitness:
    """
    Greedy maximal packing of vertex-disjoint K_{2,t-1} copies.

    Pairs (a1, a2) are scanned in lexicographic order; a pair is taken
    when its common neighbourhood among unused vertices has t-1
    members, and the lowest t-1 of them form the t-side. One pass is
    enough for maximality because the unused set only shrinks.

    Raises:
        UsageError: if t < 4
    """
    if t < 4:
        raise UsageError(f"lower witness is defined for t >= 4, got t={t}")
    adj = graph.adjacency
    unused = graph.full_mask
    families = []
    for a1 in range(graph.n):
        if not unused >> a1 & 1:
            continue
        for a2 in range(a1 + 1, graph.n):
            if not unused >> a2 & 1:
                continue
            common = adj[a1] & adj[a2] & unused
            if common.bit_count() >= t - 1:
                tside = tuple(first_bits(common, t - 1))
                families.append(FamilyMember((a1, a2), tside))
                unused &= ~(1 << a1 | 1 << a2 | mask_of(tside))
                break
    gprime = merge_pairs(graph, [f.pair for f in families])
    logger.debug("lower witness t=%d: %d disjoint copies", t, len(families))
    return FamilyWitness(t=t, families=families, gprime=gprime)


# t = 4 component procedure


@dataclass
class FComponent:
    """
    One component F_i of the t = 4 procedure.

    Attributes:
        index: position i (0-based)
        vertices: V(F_i)
        pairs: the family 𝒜_i, seed pair first
        bset: the set 𝓑_i
        ell: applications of the adjacent-pair rule
        ell_prime: applications of the common-neighbour rule
        loose_hits: every triple (u, v, w) the common-neighbour rule would
          accept once growth stops if u and v could meet different members
          of 𝒜_i
    """

    index: int
    vertices: VertexSet
    pairs: List[Tuple[int, int]]
    bset: VertexSet
    ell: int = 0
    ell_prime: int = 0
    loose_hits: List[Tuple[int, int, int]] = field(default_factory=list)

    @property
    def expected_edges(self) -> int:
        return 3 * self.ell + 4 * self.ell_prime + 6

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "vertices": sorted(self.vertices),
            "pairs": [list(p) for p in self.pairs],
            "bset": sorted(self.bset),
            "ell": self.ell,
            "ell_prime": self.ell_prime,
            "loose_hits": [list(h) for h in self.loose_hits],
        }


class _Growth:
    """State of the component currently being grown."""

    def __init__(self, graph: Graph, index: int, pair: Tuple[int, int], bset: List[int], free: int):
        self.graph = graph
        self.adj = graph.adjacency
        self.index = index
        self.seed = mask_of(pair)
        self.pairs = [pair]
        self.bmask = mask_of(bset)
        self.fmask = self.seed | self.bmask
        self.free = free & ~self.fmask
        self.ell = 0
        self.ell_prime = 0

    def adjacent_pair_rule(self) -> Optional[Tuple[int, int, int]]:
        """First (u, v, w): u ~ v free, u meets the seed pair, w = min N(v) ∩ 𝓑."""
        adj = self.adj
        for u in iter_bits(self.free):
            if not adj[u] & self.seed:
                continue
            for v in iter_bits(adj[u] & self.free):
                hit = adj[v] & self.bmask
                if hit:
                    return u, v, (hit & -hit).bit_length() - 1
        return None

    def common_neighbour_triples(self, same_member: bool = True) -> Iterator[Tuple[int, int, int]]:
        """
        Every (u, v, w) of free vertices with w = min N(u) ∩ N(v) and both
        N(u), N(v) meeting a member of 𝒜_i (the same member unless
        ``same_member`` is False), in rule order.
        """
        adj = self.adj
        members = [mask_of(p) for p in self.pairs]
        if not same_member:
            union = 0
            for p in members:
                union |= p
            members = [union]
        for pmask in members:
            touching = [x for x in iter_bits(self.free) if adj[x] & pmask]
            for i, u in enumerate(touching):
                for v in touching[i + 1:]:
                    shared = adj[u] & adj[v] & self.free
                    if shared:
                        yield u, v, (shared & -shared).bit_length() - 1

    def common_neighbour_rule(self) -> Optional[Tuple[int, int, int]]:
        return next(self.common_neighbour_triples(), None)

    def take(self, *vertices: int) -> None:
        for x in vertices:
            self.fmask |= 1 << x
            self.free &= ~(1 << x)

    def check(self) -> None:
        if 4 * self.ell + self.ell_prime > 4:
            raise FactViolation(
                self.index, "counter_bound", iter_bits(self.fmask),
                f"4ℓ+ℓ' = {4 * self.ell + self.ell_prime} exceeds 4",
            )
        edges = induced_edge_count(self.graph, self.fmask)
        expected = 3 * self.ell + 4 * self.ell_prime + 6
        if edges != expected:
            raise FactViolation(
                self.index, "fact1", iter_bits(self.fmask),
                f"|E(F)| = {edges}, expected {expected}",
            )

    def grow(self) -> None:
        self.check()
        while True:
            found = self.adjacent_pair_rule()
            if found is not None:
                u, v, w = found
                self.pairs.append((min(u, w), max(u, w)))
                self.bmask = (self.bmask | 1 << v) & ~(1 << w)
                self.take(u, v)
                self.ell += 1
                self.check()
                continue
            found = self.common_neighbour_rule()
            if found is not None:
                u, v, w = found
                self.pairs.append((u, v))
                self.bmask |= 1 << w
                self.take(u, v, w)
                self.ell_prime += 1
                self.check()
                continue
            return

    def component(self) -> FComponent:
        loose = list(self.common_neighbour_triples(same_member=False))
        for found in loose:
            logger.info(
                "component %d: looser reading would also accept (u,v,w)=%s", self.index, found
            )
        return FComponent(
            index=self.index,
            vertices=frozenset(iter_bits(self.fmask)),
            pairs=list(self.pairs),
            bset=frozenset(iter_bits(self.bmask)),
            ell=self.ell,
            ell_prime=self.ell_prime,
            loose_hits=loose,
        )


def _seed_copy(graph: Graph, remaining: int) -> Optional[Tuple[Tuple[int, int], List[int]]]:
    """Lexicographically first K_{2,3} inside ``remaining``: ((a, b), B)."""
    adj = graph.adjacency
    for a in iter_bits(remaining):
        for b in iter_bits(remaining >> (a + 1)):
            b += a + 1
            common = adj[a] & adj[b] & remaining
            if common.bit_count() >= 3:
                return (a, b), first_bits(common, 3)
    return None


def check_facts(graph: Graph, components: List[FComponent]) -> None:
    """
    Check that components are pairwise non-adjacent and that no two
    components share two or more external common neighbours.

    Raises:
        FactViolation: "fact2" or "fact3" for the first offending pair
    """
    adj = graph.adjacency
    masks = [mask_of(c.vertices) for c in components]
    touch = []
    for mask in masks:
        reach = 0
        for v in iter_bits(mask):
            reach |= adj[v]
        touch.append(reach)
    for i, mi in enumerate(masks):
        for j in range(i + 1, len(masks)):
            mj = masks[j]
            if touch[i] & mj:
                raise FactViolation(i, "fact2", iter_bits(mi | mj), f"edge between F_{i} and F_{j}")
            shared = touch[i] & touch[j] & ~(mi | mj)
            if shared.bit_count() >= 2:
                extra = first_bits(shared, 2)
                raise FactViolation(
                    i, "fact3", iter_bits(mi | mj | mask_of(extra)),
                    f"vertices {extra} see both F_{i} and F_{j}",
                )


def f_procedure_t4(graph: Graph) -> List[FComponent]:
    """
    Grow vertex-disjoint components from K_{2,3} seeds.

    Each step seeds F_i with the first K_{2,3} among vertices outside
    earlier components (𝒜_i = {A}, 𝓑_i = B). While possible it then
    applies, with priority in this order:

    1. adjacent free u, v with N(u) meeting A and N(v) meeting 𝓑_i:
       add {u, w} to 𝒜_i for w = min N(v) ∩ 𝓑_i, replace w by v in 𝓑_i,
       increment ℓ_i
    2. distinct free u, v, w with w ∈ N(u) ∩ N(v) and N(u), N(v) meeting
       the same member of 𝒜_i: add {u, v} to 𝒜_i and w to 𝓑_i,
       increment ℓ'_i

    Returns:
        the components in the order they were grown

    Raises:
        FactViolation: a fact or the bound 4ℓ_i + ℓ'_i <= 4 failed
    """
    components: List[FComponent] = []
    remaining = graph.full_mask
    while True:
        seed = _seed_copy(graph, remaining)
        if seed is None:
            break
        pair, bset = seed
        growth = _Growth(graph, len(components), pair, bset, remaining)
        growth.grow()
        component = growth.component()
        components.append(component)
        remaining &= ~growth.fmask
        logger.debug(
            "F_%d: %d vertices, ℓ=%d, ℓ'=%d",
            component.index, len(component.vertices), component.ell, component.ell_prime,
        )
    check_facts(graph, components)
    return components


def gprime_t4(graph: Graph, components: List[FComponent]) -> Graph:
    """Merge the neighbourhoods of every pair collected by the components."""
    return merge_pairs(graph, [p for c in components for p in c.pairs])


def verify_witness(graph: Graph, t: int, gprime: Graph) -> bool:
    """
    True iff the K_{2,t}-closure of G equals G' and G' is not complete.

    Raises:
        UsageError: if G' is not a supergraph of G on the same vertices
    """
    if not graph.is_subgraph_of(gprime):
        raise UsageError("witness graph must contain G on the same vertex set")
    if gprime.is_complete():
        return False
    closure, _ = close_k2t(graph, t, record_trace=False)
    return closure == gprime


# Reports


@dataclass
class WitnessReport:
    """
    Outcome of a witness attempt on one graph.

    Attributes:
        mode: "t4" or "general"
        t: bootstrap parameter
        verified: the witness equals the closure and is incomplete
        gprime_edges_added: |E(G')| - |E(G)|, or None if no G' was built
        components: serialised components or family members
        violations: located dense subgraphs, one per FactViolation
        mismatch: first closure edge missing from G', if any
    """

    mode: str
    t: int
    verified: bool
    gprime_edges_added: Optional[int]
    components: List[Dict[str, Any]] = field(default_factory=list)
    violations: List[Dict[str, Any]] = field(default_factory=list)
    mismatch: Optional[Edge] = None

    def to_dict(self) -> Dict[str, Any]:
        key = "components" if self.mode == "t4" else "families"
        return {
            "mode": self.mode,
            "t": self.t,
            "verified": self.verified,
            "gprime_edges_added": self.gprime_edges_added,
            key: self.components,
            "violations": self.violations,
            "mismatch": list(self.mismatch) if self.mismatch else None,
        }


def locate_violation(graph: Graph, violation: FactViolation) -> Dict[str, Any]:
    """Exact density and maximum density of the subgraph a violation names."""
    sub = induced_subgraph(graph, violation.vertices)
    value = subset_density(graph, violation.vertices)
    best = max_density(sub)
    logger.warning(
        "%s in component %d: %d vertices, density %s, max density %s (%s)",
        violation.which, violation.component, sub.n,
        rational_str(value), rational_str(best.value), violation.detail,
    )
    return {
        "component": violation.component,
        "which": violation.which,
        "vertices": sorted(violation.vertices),
        "density": rational_str(value),
        "max_density": rational_str(best.value),
        "dense": best.value >= DENSE_BOUND,
        "detail": violation.detail,
    }


def _first_mismatch(graph: Graph, t: int, gprime: Graph) -> Optional[Edge]:
    closure, _ = close_k2t(graph, t, record_trace=False)
    extra = closure.extra_edges(gprime)
    if extra:
        return extra[0]
    missing = gprime.extra_edges(closure)
    return missing[0] if missing else None


def certify_t4(graph: Graph) -> WitnessReport:
    """
    Run the t = 4 procedure, build G' and verify it against the closure.

    A FactViolation is turned into a located dense subgraph in
    ``violations`` and an unverified report.
    """
    try:
        components = f_procedure_t4(graph)
    except FactViolation as violation:
        return WitnessReport(
            mode="t4", t=4, verified=False, gprime_edges_added=None,
            violations=[locate_violation(graph, violation)],
        )
    gprime = gprime_t4(graph, components)
    verified = verify_witness(graph, 4, gprime)
    report = WitnessReport(
        mode="t4", t=4, verified=verified,
        gprime_edges_added=gprime.m - graph.m,
        components=[c.to_dict() for c in components],
    )
    if not verified:
        report.mismatch = _first_mismatch(graph, 4, gprime)
        logger.warning("t=4 witness not verified; first differing edge %s", report.mismatch)
    return report


def certify_general(graph: Graph, t: int) -> WitnessReport:
    """Build the disjoint-family witness for t >= 4 and verify it."""
    witness = lower_witness(graph, t)
    verified = verify_witness(graph, t, witness.gprime)
    report = WitnessReport(
        mode="general", t=t, verified=verified,
        gprime_edges_added=witness.gprime.m - graph.m,
        components=[f.to_dict() for f in witness.families],
    )
    if not verified:
        report.mismatch = _first_mismatch(graph, t, witness.gprime)
        logger.warning("t=%d witness not verified; first differing edge %s", t, report.mismatch)
    return report
