#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Immutable simple-graph representation.

Vertices are dense integer ids 0..n-1. Each vertex stores its
neighbourhood as a Python integer used as a bitset, so a neighbourhood
intersection is one ``&`` over n/w machine words followed by a popcount.
Every other module (closure engine, density, witnesses, experiments)
goes through the primitives defined here.
"""

from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from perclab.errors import GraphError

VertexSet = FrozenSet[int]
Edge = Tuple[int, int]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_list(mask: int) -> List[int]:
    """Return the set bit positions of ``mask`` as a sorted list."""
    return list(iter_bits(mask))


def mask_of(vertices: Iterable[int]) -> int:
    """Return the bitset with exactly the given positions set."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def first_bits(mask: int, count: int) -> List[int]:
    """Return the ``count`` lowest set positions of ``mask``."""
    out = []
    for v in iter_bits(mask):
        if len(out) == count:
            break
        out.append(v)
    return out


class Graph:
    """
    Immutable simple undirected graph on vertices 0..n-1.

    Instances are values: equality and hashing use (n, adjacency), and no
    method mutates the receiver. Use :func:`from_edges` to build one from
    an edge list; the constructor trusts its adjacency argument.

    Attributes:
        n: vertex count
        m: edge count
        adjacency: tuple of neighbourhood bitsets, one per vertex
    """

    __slots__ = ("_n", "_adj", "_m")

    def __init__(self, n: int, adjacency: Sequence[int], m: Optional[int] = None):
        self._n = n
        self._adj = tuple(adjacency)
        if m is None:
            m = sum(a.bit_count() for a in self._adj) // 2
        self._m = m

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def adjacency(self) -> Tuple[int, ...]:
        return self._adj

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighbor_mask(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> List[int]:
        return bits_to_list(self._adj[v])

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> List[int]:
        return [a.bit_count() for a in self._adj]

    def edges(self) -> List[Edge]:
        """All edges as (u, v) with u < v in lexicographic order."""
        out = []
        for u, a in enumerate(self._adj):
            for v in iter_bits(a >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def non_edges(self) -> Iterator[Edge]:
        """All non-adjacent pairs (u, v) with u < v in lexicographic order."""
        full = self.full_mask
        for u, a in enumerate(self._adj):
            missing = (full & ~a) >> (u + 1)
            for v in iter_bits(missing):
                yield (u, u + 1 + v)

    def is_complete(self) -> bool:
        return self._m == self._n * (self._n - 1) // 2

    def is_subgraph_of(self, other: "Graph") -> bool:
        """True if both graphs share the vertex set and E(self) ⊆ E(other)."""
        if self._n != other._n:
            return False
        return all(a & ~b == 0 for a, b in zip(self._adj, other._adj))

    def add_edges(self, pairs: Iterable[Edge]) -> "Graph":
        """Return a new graph with the given edges added."""
        adj = list(self._adj)
        for u, v in pairs:
            _check_pair(self._n, u, v)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(self._n, adj)

    def extra_edges(self, base: "Graph") -> List[Edge]:
        """Edges of self that are not edges of ``base`` (same vertex set)."""
        if self._n != base._n:
            raise GraphError("graphs have different vertex counts")
        out = []
        for u in range(self._n):
            diff = (self._adj[u] & ~base._adj[u]) >> (u + 1)
            for v in iter_bits(diff):
                out.append((u, u + 1 + v))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


def _check_pair(n: int, u: int, v: int) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise GraphError(f"edge ({u},{v}) out of range for n={n}")
    if u == v:
        raise GraphError(f"loop edge ({u},{v})")


def from_edges(n: int, edges: Iterable[Edge]) -> Graph:
    """
    Build a graph with exactly the given edges.

    Duplicate pairs and both orientations of a pair collapse to one edge.

    Args:
        n: vertex count (nonnegative)
        edges: iterable of vertex pairs with endpoints in 0..n-1

    Returns:
        The immutable graph.

    Raises:
        GraphError: negative n, out-of-range endpoint or loop edge.
    """
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    adj = [0] * n
    for u, v in edges:
        u, v = int(u), int(v)
        _check_pair(n, u, v)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, adj)


def common_neighbor_mask(graph: Graph, x: int, y: int) -> int:
    if x == y:
        raise GraphError("common neighbourhood needs two distinct vertices")
    return graph.adjacency[x] & graph.adjacency[y]


def common_neighbor_count(graph: Graph, x: int, y: int) -> int:
    """
    Return |N(x) ∩ N(y)| using one word-parallel intersection.

    Raises:
        GraphError: if x == y.
    """
    return common_neighbor_mask(graph, x, y).bit_count()


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> Graph:
    """
    Return G[S], relabelled by the sorted order of the original ids.

    Args:
        graph: host graph
        vertices: subset S of V(G)

    Returns:
        Graph on |S| vertices; vertex i corresponds to the i-th smallest
        element of S.
    """
    order = sorted(set(vertices))
    for v in order:
        if not 0 <= v < graph.n:
            raise GraphError(f"vertex {v} out of range for n={graph.n}")
    index = {v: i for i, v in enumerate(order)}
    keep = mask_of(order)
    adj = []
    for v in order:
        new = 0
        for w in iter_bits(graph.adjacency[v] & keep):
            new |= 1 << index[w]
        adj.append(new)
    return Graph(len(order), adj)


def induced_edge_count(graph: Graph, mask: int) -> int:
    """Number of edges of G with both endpoints in the bitset ``mask``."""
    total = 0
    for v in iter_bits(mask):
        total += (graph.adjacency[v] & mask).bit_count()
    return total // 2


def component_mask(graph: Graph, start: int, within: Optional[int] = None) -> int:
    """Bitset of the connected component of ``start`` (inside ``within``)."""
    allowed = graph.full_mask if within is None else within
    seen = 1 << start
    frontier = seen
    adj = graph.adjacency
    while frontier:
        reach = 0
        for v in iter_bits(frontier):
            reach |= adj[v]
        frontier = reach & allowed & ~seen
        seen |= frontier
    return seen


def is_connected(graph: Graph) -> bool:
    """
    Breadth-first connectivity test.

    Raises:
        GraphError: on the empty graph (n = 0).
    """
    if graph.n < 1:
        raise GraphError("connectivity is undefined for the empty graph")
    return component_mask(graph, 0) == graph.full_mask


def two_coloring(graph: Graph) -> Optional[Tuple[int, int]]:
    """
    Return a proper 2-colouring as two bitsets, or None if none exists.

    Components are coloured independently; within each component the
    smallest vertex gets colour 0.
    """
    adj = graph.adjacency
    side = [0, 0]
    uncolored = graph.full_mask
    while uncolored:
        start = (uncolored & -uncolored).bit_length() - 1
        colour = 0
        frontier = 1 << start
        seen = frontier
        while frontier:
            side[colour] |= frontier
            reach = 0
            for v in iter_bits(frontier):
                reach |= adj[v]
            if reach & side[colour]:
                return None
            frontier = reach & ~seen
            seen |= frontier
            colour ^= 1
        uncolored &= ~seen
    return side[0], side[1]


def is_bipartite(graph: Graph) -> bool:
    """Breadth-first bipartiteness test (n >= 1)."""
    if graph.n < 1:
        raise GraphError("bipartiteness is undefined for the empty graph")
    return two_coloring(graph) is not None


def find_complete_bipartite(graph: Graph, a: int, b: int) -> Optional[Tuple[VertexSet, VertexSet]]:
    """
    Find a copy of K_{a,b} as a (not necessarily induced) subgraph.

    Backtracks over a-sets X in increasing id order while keeping the
    common neighbourhood of X as a bitset; branches whose common
    neighbourhood drops below b are cut.

    Returns:
        (X, Y) with |X| = a, |Y| = b and every X–Y pair adjacent, or None.
    """
    if a < 0 or b < 0:
        raise GraphError("part sizes must be nonnegative")
    if a + b > graph.n:
        return None
    if a == 0:
        return frozenset(), frozenset(range(b))
    adj = graph.adjacency
    full = graph.full_mask

    def extend(start: int, chosen: List[int], common: int) -> Optional[Tuple[VertexSet, VertexSet]]:
        if len(chosen) == a:
            return frozenset(chosen), frozenset(first_bits(common, b))
        for v in range(start, graph.n):
            narrowed = common & adj[v]
            if narrowed.bit_count() < b:
                continue
            chosen.append(v)
            found = extend(v + 1, chosen, narrowed)
            if found is not None:
                return found
            chosen.pop()
        return None

    return extend(0, [], full)
