#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Structure of closed graphs.

A connected graph containing K_{t-1,t-1} closes under K_{2,t}-bootstrap
to a complete graph, a complete bipartite graph or a complete split
graph whose clique part has at most t-1 vertices. This module recognises
those shapes with an explicit partition and computes the twin relation
x ≈ y  ⇔  N(x) \\ {y} = N(y) \\ {x}  on a closure.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from perclab.closure import close_k2t
from perclab.graph import Graph, VertexSet, bits_to_list, iter_bits, mask_of, two_coloring

COMPLETE = "complete"
COMPLETE_BIPARTITE = "complete_bipartite"
COMPLETE_SPLIT = "complete_split"
OTHER = "other"


@dataclass(frozen=True)
class StructureClass:
    """
    Shape of a graph together with the partition that witnesses it.

    Attributes:
        kind: one of "complete", "complete_bipartite", "complete_split", "other"
        sizes: (a, b) with a <= b for complete bipartite, (i, c) for
          complete split (independent part, clique part), () otherwise
        partition: the vertex parts in the same order as ``sizes``
    """

    kind: str
    sizes: Tuple[int, ...] = ()
    partition: Tuple[VertexSet, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "sizes": list(self.sizes),
            "partition": [sorted(part) for part in self.partition],
        }


def classify_structure(graph: Graph) -> StructureClass:
    """
    Classify a graph as complete, complete bipartite, complete split or other.

    The tests run in that order. For complete split graphs the clique
    part is the set of universal vertices, the largest possible choice;
    an edgeless graph on n >= 2 vertices is reported as CompleteSplit(n, 0).
    """
    n = graph.n
    everyone = frozenset(range(n))
    if graph.is_complete():
        return StructureClass(COMPLETE, (n,), (everyone,))

    colouring = two_coloring(graph)
    if colouring is not None:
        left, right = colouring
        a, b = left.bit_count(), right.bit_count()
        if a and b and graph.m == a * b:
            parts = sorted(
                (frozenset(iter_bits(left)), frozenset(iter_bits(right))),
                key=lambda part: (len(part), min(part)),
            )
            return StructureClass(COMPLETE_BIPARTITE, (len(parts[0]), len(parts[1])), tuple(parts))

    universal = mask_of(v for v in range(n) if graph.degree(v) == n - 1)
    rest = graph.full_mask & ~universal
    if rest and all(graph.adjacency[v] & rest == 0 for v in iter_bits(rest)):
        independent = frozenset(iter_bits(rest))
        clique = frozenset(iter_bits(universal))
        return StructureClass(COMPLETE_SPLIT, (len(independent), len(clique)), (independent, clique))

    return StructureClass(OTHER)


def twins(graph: Graph, x: int, y: int) -> bool:
    """True iff N(x) \\ {y} = N(y) \\ {x}."""
    adj = graph.adjacency
    return adj[x] & ~(1 << y) == adj[y] & ~(1 << x)


@dataclass
class EquivalenceClasses:
    """
    Twin classes of a closure.

    Attributes:
        closure: the closed graph Ĝ the classes refer to
        classes: vertex classes sorted by smallest member
        transitive: True if every two members of a class are twins, i.e.
          the twin relation is an equivalence relation on Ĝ
    """

    closure: Graph
    classes: List[VertexSet] = field(default_factory=list)
    transitive: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "classes": [sorted(c) for c in self.classes],
            "transitive": self.transitive,
        }


def equivalence_classes(graph: Graph, t: int) -> EquivalenceClasses:
    """
    Close G under K_{2,t}-bootstrap and partition V(Ĝ) into twin classes.

    Classes are the connected components of the twin relation; the
    ``transitive`` flag records whether each component is a clique of
    that relation.
    """
    closure, _ = close_k2t(graph, t, record_trace=False)
    n = closure.n
    related = [1 << x for x in range(n)]
    for x in range(n):
        for y in range(x + 1, n):
            if twins(closure, x, y):
                related[x] |= 1 << y
                related[y] |= 1 << x

    classes: List[VertexSet] = []
    transitive = True
    unassigned = closure.full_mask
    while unassigned:
        start = (unassigned & -unassigned).bit_length() - 1
        component = 1 << start
        frontier = component
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= related[v]
            frontier = reach & ~component
            component |= frontier
        if any(related[v] & component != component for v in iter_bits(component)):
            transitive = False
        classes.append(frozenset(bits_to_list(component)))
        unassigned &= ~component
    return EquivalenceClasses(closure=closure, classes=classes, transitive=transitive)
