#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Exception hierarchy for perclab.

Library code raises these; only the command-line layer turns them into
messages and exit codes (UsageError -> 2, DomainError -> 1).
"""

from typing import FrozenSet, Iterable, Optional


class PerclabError(Exception):
    """Base class for every error raised by perclab."""


class UsageError(PerclabError, ValueError):
    """Invalid parameters or malformed input."""


class DomainError(PerclabError):
    """A computation reached a domain-level failure."""


class GraphError(UsageError):
    """Invalid graph construction or query (loops, bad endpoints, x = y)."""


class EdgeListError(UsageError):
    """Malformed edge-list text."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BracketError(DomainError):
    """Threshold bisection could not bracket the target probability."""


class FactViolation(DomainError):
    """
    A structural fact of the F-procedure (or its counter bound) failed.

    This signals a bounded subgraph of density at least 13/10 in the
    input graph. The offending vertex set is carried so the caller can
    locate and report it.

    Attributes:
        component: index of the component being grown (or the first of
          the two components for fact2/fact3)
        which: one of "fact1", "fact2", "fact3", "counter_bound"
        vertices: vertex set of the offending subgraph
    """

    FACTS = ("fact1", "fact2", "fact3", "counter_bound")

    def __init__(self, component: int, which: str, vertices: Iterable[int], detail: str = ""):
        if which not in self.FACTS:
            raise ValueError(f"unknown fact {which!r}")
        self.component = component
        self.which = which
        self.vertices: FrozenSet[int] = frozenset(vertices)
        self.detail = detail
        message = f"component {component}: {which} violated"
        if detail:
            message += f" ({detail})"
        super().__init__(message)
