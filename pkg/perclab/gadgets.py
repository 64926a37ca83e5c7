#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Gadget graphs with role labels.

The fan 𝒢_r(u; u_1, ..., u_s) is s copies of K_{2,r} glued at one vertex
u; copy i has 2-side {u, u_i} and r middle vertices. ℋ_t joins three fans

    𝒢_{t-1}(u; u_1..u_r),  𝒢_{s-1}(v; v_1..v_s),  𝒢_{r-1}(w; w_1..w_{t-2})

with r = ⌊(t-1)/2⌋ and s = t-1-r, and adds the edges u–v, u–v_j, v–w
and v–w_k. Its maximum subgraph density is η(t) and its K_{2,t}-closure
contains K_{t-1,t-1}.

Vertex numbering is deterministic: block by block (u, v, w), each block
as hub, part vertices, then middles copy by copy.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from perclab.errors import UsageError
from perclab.graph import Edge, Graph, from_edges


@dataclass
class LabeledGadget:
    """
    A gadget graph plus a role tag for every vertex.

    Role tags: the hub names ("u", "v", "w"), part vertices "u_1",
    "v_2", ..., and middles "m(u,i,j)" for slot j of copy i of the fan
    hubbed at u (1-based).

    Attributes:
        graph: the gadget
        roles: vertex id -> role tag
        params: construction parameters, e.g. {"t": 4, "r": 1, "s": 2}
    """

    graph: Graph
    roles: Dict[int, str]
    params: Dict[str, int] = field(default_factory=dict)

    def vertex(self, role: str) -> int:
        """Return the vertex carrying ``role``."""
        for v, tag in self.roles.items():
            if tag == role:
                return v
        raise KeyError(role)

    def parts(self, hub: str) -> List[int]:
        """Part vertices hub_1, hub_2, ... in index order."""
        prefix = f"{hub}_"
        found = [(int(tag[len(prefix):]), v) for v, tag in self.roles.items() if tag.startswith(prefix)]
        return [v for _, v in sorted(found)]

    def middles(self, hub: str) -> List[int]:
        prefix = f"m({hub},"
        return sorted(v for v, tag in self.roles.items() if tag.startswith(prefix))

    def role_comments(self) -> List[str]:
        """Edge-list header comments describing the parameters and roles."""
        lines = []
        if self.params:
            lines.append("params " + " ".join(f"{k}={v}" for k, v in self.params.items()))
        lines.append("roles " + " ".join(f"{v}={self.roles[v]}" for v in sorted(self.roles)))
        return lines


class _Builder:
    """Accumulates vertices and edges while blocks are laid out."""

    def __init__(self):
        self.roles: Dict[int, str] = {}
        self.edges: List[Edge] = []

    def vertex(self, role: str) -> int:
        v = len(self.roles)
        self.roles[v] = role
        return v

    def fan(self, r: int, s: int, hub: str) -> Tuple[int, List[int]]:
        centre = self.vertex(hub)
        parts = [self.vertex(f"{hub}_{i}") for i in range(1, s + 1)]
        for i, part in enumerate(parts, start=1):
            for j in range(1, r + 1):
                middle = self.vertex(f"m({hub},{i},{j})")
                self.edges.append((centre, middle))
                self.edges.append((part, middle))
        return centre, parts

    def build(self, params: Dict[str, int]) -> LabeledGadget:
        graph = from_edges(len(self.roles), self.edges)
        return LabeledGadget(graph=graph, roles=dict(self.roles), params=params)


def build_fan(r: int, s: int) -> LabeledGadget:
    """
    Build 𝒢_r(u; u_1, ..., u_s).

    Args:
        r: middles per copy (r = 0 leaves u and each u_i nonadjacent)
        s: number of copies (s >= 1)

    Returns:
        Gadget with 1 + s + s·r vertices and 2·s·r edges.

    Raises:
        UsageError: if r < 0 or s < 1

    Example:
        >>> build_fan(4, 3).graph
        Graph(n=16, m=24)
    """
    if r < 0 or s < 1:
        raise UsageError(f"fan needs r >= 0 and s >= 1, got r={r}, s={s}")
    builder = _Builder()
    builder.fan(r, s, "u")
    return builder.build({"r": r, "s": s})


def ht_parameters(t: int) -> Tuple[int, int]:
    """Return (r, s) = (⌊(t-1)/2⌋, t-1-r)."""
    r = (t - 1) // 2
    return r, t - 1 - r


def build_Ht(t: int) -> LabeledGadget:
    """
    Build ℋ_t for t >= 4.

    Raises:
        UsageError: if t < 4

    Example:
        >>> build_Ht(4).graph
        Graph(n=13, m=16)
    """
    if t < 4:
        raise UsageError(f"ℋ_t is defined for t >= 4, got t={t}")
    r, s = ht_parameters(t)
    builder = _Builder()
    u, _ = builder.fan(t - 1, r, "u")
    v, v_parts = builder.fan(s - 1, s, "v")
    w, w_parts = builder.fan(r - 1, t - 2, "w")
    for x in [v] + v_parts:
        builder.edges.append((u, x))
    for x in [w] + w_parts:
        builder.edges.append((v, x))
    return builder.build({"t": t, "r": r, "s": s})


def build_remark_gadget(t: int) -> LabeledGadget:
    """𝒢_{t-1}(u; u_1, ..., u_{t-2}), the fan whose closure already holds K_{t-1,t-1}."""
    if t < 4:
        raise UsageError(f"remark gadget is defined for t >= 4, got t={t}")
    gadget = build_fan(t - 1, t - 2)
    gadget.params = {"t": t, "r": t - 1, "s": t - 2}
    return gadget


def build_complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with parts 0..a-1 and a..a+b-1."""
    if a < 0 or b < 0:
        raise UsageError("part sizes must be nonnegative")
    return from_edges(a + b, [(x, a + y) for x in range(a) for y in range(b)])


def build_complete_split(i: int, c: int) -> Graph:
    """Independent set 0..i-1 fully joined to the clique i..i+c-1."""
    if i < 0 or c < 0:
        raise UsageError("part sizes must be nonnegative")
    clique = range(i, i + c)
    edges = [(x, y) for x in range(i) for y in clique]
    edges += [(x, y) for x in clique for y in clique if x < y]
    return from_edges(i + c, edges)


def build_complete(n: int) -> Graph:
    if n < 0:
        raise UsageError("vertex count must be nonnegative")
    return from_edges(n, [(x, y) for x in range(n) for y in range(x + 1, n)])
