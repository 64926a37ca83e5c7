#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Input/Output operations for edge-list files.

Every command that accepts a graph reads the same text format::

    # optional comment lines
    n m
    u v        (m lines, 0-based ids, whitespace separated)

This module validates files before reading them (existence, type,
readability, size) and parses the text into a :class:`Graph`.
"""

import os
import sys
from pathlib import Path
from typing import Iterable, List, Optional, TextIO

from perclab.constants import MAX_EDGE_LINES, MAX_FILE_SIZE
from perclab.errors import EdgeListError, GraphError
from perclab.graph import Graph, from_edges

STDIN_PATH = "-"


def sanitize_file_path(filepath: str) -> Path:
    """
    Resolve a file path and reject pseudo-filesystems.

    Args:
        filepath: Input file path string

    Returns:
        Path object with resolved absolute path

    Raises:
        EdgeListError: If the path cannot be resolved or points into
          /proc or /sys
    """
    try:
        path = Path(filepath).resolve()
    except (OSError, ValueError) as e:
        raise EdgeListError(f"invalid file path: {filepath} ({e})") from e

    path_str = str(path)
    if path_str.startswith("/proc") or path_str.startswith("/sys"):
        raise EdgeListError(f"suspicious file path: {filepath}")
    return path


def validate_edge_list_file(filename: str) -> Path:
    """
    Validate that an edge-list file exists, is readable and not too large.

    Raises:
        EdgeListError: on any failed check
    """
    file_path = sanitize_file_path(filename)

    if not file_path.exists():
        raise EdgeListError(f"edge-list file not found: {filename}")
    if not file_path.is_file():
        raise EdgeListError(f"path is not a file: {filename}")
    if not os.access(str(file_path), os.R_OK):
        raise EdgeListError(f"edge-list file is not readable: {filename}")

    file_size = file_path.stat().st_size
    if file_size == 0:
        raise EdgeListError(f"edge-list file is empty: {filename}")
    if file_size > MAX_FILE_SIZE:
        raise EdgeListError(
            f"edge-list file too large: {filename} "
            f"({file_size} bytes, maximum {MAX_FILE_SIZE})"
        )
    return file_path


def _parse_int_pair(tokens: List[str], line_no: int) -> tuple:
    if len(tokens) != 2:
        raise EdgeListError(f"expected two integers, found {len(tokens)} tokens", line_no)
    try:
        return int(tokens[0]), int(tokens[1])
    except ValueError:
        raise EdgeListError(f"non-integer token in {' '.join(tokens)!r}", line_no) from None


def parse_edge_list(lines: Iterable[str]) -> Graph:
    """
    Parse edge-list text into a graph.

    Comment lines start with '#'; blank lines are skipped. The header
    "n m" must precede the edges and m must equal the number of edge
    lines.

    Raises:
        EdgeListError: on a missing header, malformed line, count
          mismatch, out-of-range endpoint or loop
    """
    header = None
    edges = []
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        pair = _parse_int_pair(line.split(), line_no)
        if header is None:
            n, m = pair
            if n < 0 or m < 0:
                raise EdgeListError("negative vertex or edge count in header", line_no)
            header = (n, m)
            continue
        if len(edges) >= MAX_EDGE_LINES:
            raise EdgeListError(f"more than {MAX_EDGE_LINES} edge lines", line_no)
        u, v = pair
        if not (0 <= u < header[0] and 0 <= v < header[0]):
            raise EdgeListError(f"endpoint out of range for n={header[0]}: ({u},{v})", line_no)
        if u == v:
            raise EdgeListError(f"loop edge ({u},{v})", line_no)
        edges.append(pair)

    if header is None:
        raise EdgeListError("missing 'n m' header")
    n, m = header
    if len(edges) != m:
        raise EdgeListError(f"header announces {m} edges, found {len(edges)}")
    try:
        return from_edges(n, edges)
    except GraphError as e:
        raise EdgeListError(str(e)) from e


def read_edge_list(filename: str = STDIN_PATH, stdin: Optional[TextIO] = None) -> Graph:
    """
    Read and validate an edge-list file ("-" reads standard input).

    Raises:
        EdgeListError: if validation or parsing fails
    """
    if filename == STDIN_PATH:
        return parse_edge_list(stdin if stdin is not None else sys.stdin)
    path = validate_edge_list_file(filename)
    with open(path, mode="r", encoding="utf-8") as handle:
        return parse_edge_list(handle)


def format_edge_list(graph: Graph, comments: Iterable[str] = ()) -> str:
    """
    Render a graph in edge-list format, edges sorted lexicographically.

    Args:
        graph: graph to render
        comments: lines emitted first, each prefixed with '# '
    """
    out = [f"# {c}" for c in comments]
    out.append(f"{graph.n} {graph.m}")
    out.extend(f"{u} {v}" for u, v in graph.edges())
    return "\n".join(out) + "\n"


def write_edge_list(graph: Graph, output_file: TextIO, comments: Iterable[str] = ()) -> None:
    output_file.write(format_edge_list(graph, comments))
