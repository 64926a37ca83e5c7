#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Pytest configuration and fixtures for the perclab test suite.

This module provides seeded graph factories shared by the unit tests.
"""

import numpy as np
import pytest

from perclab.graph import Graph, from_edges
from perclab.io import format_edge_list


def pytest_configure(config):
    """Configure pytest markers."""
    config.addinivalue_line(
        "markers", "slow: mark test as slow (deselect with '-m \"not slow\"')"
    )
    config.addinivalue_line(
        "markers", "integration: mark test as integration test"
    )


def random_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p) drawn from numpy's default generator, independent of perclab's streams."""
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(n, 1)
    keep = rng.random(rows.size) < p
    return from_edges(n, zip(rows[keep].tolist(), cols[keep].tolist()))


def planted_bipartite(n: int, a: int, b: int, seed: int) -> Graph:
    """
    Connected graph on n vertices containing K_{a,b} on 0..a+b-1.

    Every other vertex hangs off a random earlier vertex (a random tree
    extension) plus a few random chords.
    """
    rng = np.random.default_rng(seed)
    edges = [(x, a + y) for x in range(a) for y in range(b)]
    for v in range(a + b, n):
        edges.append((int(rng.integers(0, v)), v))
    for _ in range(n // 3):
        x, y = (int(z) for z in rng.integers(0, n, size=2))
        if x != y:
            edges.append((x, y))
    return from_edges(n, edges)


@pytest.fixture
def make_random_graph():
    """Factory fixture: make_random_graph(n, p, seed) -> Graph."""
    return random_graph


@pytest.fixture
def make_planted_bipartite():
    """Factory fixture: make_planted_bipartite(n, a, b, seed) -> Graph."""
    return planted_bipartite


@pytest.fixture
def k23() -> Graph:
    """K_{2,3} with 2-side {0, 1} and 3-side {2, 3, 4}."""
    return from_edges(5, [(x, y) for x in (0, 1) for y in (2, 3, 4)])


@pytest.fixture
def edge_list_file(tmp_path):
    """Factory fixture writing a graph to an edge-list file and returning its path."""

    def write(graph: Graph, name: str = "graph.txt") -> str:
        path = tmp_path / name
        path.write_text(format_edge_list(graph))
        return str(path)

    return write
