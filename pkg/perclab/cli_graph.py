#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
CLI functions for graph construction, closure and density commands.

This module backs the ``gadget``, ``close``, ``density``, ``eta`` and
``seven`` subcommands, separated from the main CLI to keep the argument
parser readable.
"""

import logging
from typing import Callable, List, Optional, TextIO

from perclab.closure import close_k2t
from perclab.density import density, eta, even_case_readings, max_density, seven_candidate_densities
from perclab.errors import UsageError
from perclab.export import rational_str, write_csv, write_json
from perclab.gadgets import (
    build_complete,
    build_complete_bipartite,
    build_complete_split,
    build_fan,
    build_Ht,
    build_remark_gadget,
)
from perclab.io import read_edge_list, write_edge_list
from perclab.structure import classify_structure

logger = logging.getLogger(__name__)

GADGET_KINDS = {
    "fan": 2,
    "ht": 1,
    "remark": 1,
    "kst": 2,
    "split": 2,
    "complete": 1,
}


def perform_gadget_cli(kind: str, params: List[int], output_file: TextIO) -> None:
    """
    Write a gadget in edge-list format.

    Args:
        kind: fan (r s), ht (t), remark (t), kst (a b), split (i c) or
          complete (n)
        params: integer parameters of the construction
        output_file: destination stream

    Raises:
        UsageError: on an unknown kind or a wrong number of parameters
    """
    if kind not in GADGET_KINDS:
        raise UsageError(f"unknown gadget kind {kind!r}")
    if len(params) != GADGET_KINDS[kind]:
        raise UsageError(f"gadget {kind} takes {GADGET_KINDS[kind]} parameter(s), got {len(params)}")
    comments = [f"gadget {kind} " + " ".join(str(p) for p in params)]
    if kind == "fan":
        gadget = build_fan(*params)
    elif kind == "ht":
        gadget = build_Ht(*params)
    elif kind == "remark":
        gadget = build_remark_gadget(*params)
    else:
        builders = {"kst": build_complete_bipartite, "split": build_complete_split, "complete": build_complete}
        write_edge_list(builders[kind](*params), output_file, comments)
        return
    write_edge_list(gadget.graph, output_file, comments + gadget.role_comments())


def perform_close_cli(
    t: int,
    input_file: str,
    output_file: TextIO,
    trace_file: Optional[str] = None,
    rounds: bool = False,
    output_format: str = "json",
) -> None:
    """
    Close a graph under K_{2,t}-bootstrap and report the result.

    The JSON summary lists the closure's edges and its structure class;
    ``edgelist`` format writes the closure itself. The certificate trace
    goes to ``trace_file`` when given.
    """
    graph = read_edge_list(input_file)
    scheduler = "rounds" if rounds else "sequential"
    closure, trace = close_k2t(graph, t, scheduler=scheduler, record_trace=trace_file is not None or rounds)
    logger.info("closure: %d -> %d edges, complete=%s", graph.m, closure.m, closure.is_complete())
    if trace_file is not None:
        with open(trace_file, "w", encoding="utf-8") as handle:
            write_json(trace.to_dict(), handle)
    if output_format == "edgelist":
        write_edge_list(closure, output_file, [f"K_{{2,{t}}}-closure"])
        return
    payload = {
        "t": t,
        "n": graph.n,
        "m_before": graph.m,
        "m_after": closure.m,
        "complete": closure.is_complete(),
        "scheduler": scheduler,
        "rounds": len(trace.rounds) if trace.rounds is not None else None,
        "structure": classify_structure(closure).to_dict(),
        "closure_edges": [list(e) for e in closure.edges()],
    }
    write_json(payload, output_file)


def perform_density_cli(
    input_file: str, output_file: TextIO, method: str = "auto", executor: Callable = map
) -> None:
    """Report d(G) and the exact maximum subgraph density with its witness."""
    graph = read_edge_list(input_file)
    report = max_density(graph, method=method, executor=executor)
    payload = report.to_dict()
    payload["density"] = rational_str(density(graph))
    payload["n"] = graph.n
    payload["m"] = graph.m
    write_json(payload, output_file)


def perform_eta_cli(t: int, output_file: TextIO) -> None:
    print(rational_str(eta(t)), file=output_file)


def perform_seven_cli(t: int, output_file: TextIO, output_format: str = "csv") -> None:
    """Tabulate the seven candidate densities of ℋ_t."""
    candidates = seven_candidate_densities(t)
    best = max(c.value for c in candidates)
    if best != eta(t):
        logger.warning("largest candidate density %s differs from η(%d) = %s", best, t, eta(t))
    if output_format == "csv":
        write_csv(["label", "size", "edges", "density"], (c.to_row() for c in candidates), output_file)
        return
    payload = {
        "t": t,
        "eta": rational_str(eta(t)),
        "candidates": [
            {"label": c.label, "size": len(c.vertices), "edges": c.edges, "density": rational_str(c.value)}
            for c in candidates
        ],
        "even_case": even_case_readings(t).to_dict() if t % 2 == 0 else None,
    }
    write_json(payload, output_file)
