#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
CLI function for the ``witness`` subcommand.
"""

from typing import TextIO

from perclab.errors import DomainError, UsageError
from perclab.export import write_json
from perclab.io import read_edge_list
from perclab.witness import certify_general, certify_t4

WITNESS_MODES = ("general", "t4")


def perform_witness_cli(t: int, input_file: str, output_file: TextIO, mode: str = "general") -> None:
    """
    Build and verify a non-percolation witness for the input graph.

    The report is always written. If the t = 4 procedure hit a fact
    violation the command then fails with a DomainError (exit code 1).
    """
    if mode not in WITNESS_MODES:
        raise UsageError(f"unknown witness mode {mode!r}")
    if mode == "t4" and t != 4:
        raise UsageError(f"mode t4 requires --t 4, got {t}")
    graph = read_edge_list(input_file)
    report = certify_t4(graph) if mode == "t4" else certify_general(graph, t)
    write_json(report.to_dict(), output_file)
    if report.violations:
        first = report.violations[0]
        raise DomainError(
            f"{first['which']} violated in component {first['component']}: "
            f"subgraph of density {first['density']} located"
        )
