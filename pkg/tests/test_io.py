#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Unit tests for I/O operations.

Tests for edge-list file validation, parsing and formatting.
"""

import io
import os

import pytest

from perclab.errors import EdgeListError, UsageError
from perclab.gadgets import build_Ht
from perclab.graph import from_edges
from perclab.io import (
    format_edge_list,
    parse_edge_list,
    read_edge_list,
    sanitize_file_path,
    validate_edge_list_file,
    write_edge_list,
)


class TestValidateEdgeListFile:
    """Tests for validate_edge_list_file function."""

    def test_valid_file(self, tmp_path):
        """A readable nonempty file passes."""
        path = tmp_path / "g.txt"
        path.write_text("2 1\n0 1\n")
        assert validate_edge_list_file(str(path)) == path.resolve()

    def test_file_not_found(self):
        """Nonexistent files are rejected."""
        with pytest.raises(EdgeListError, match="not found"):
            validate_edge_list_file("/nonexistent/graph.txt")

    def test_file_not_readable(self, tmp_path):
        """Unreadable files are rejected."""
        path = tmp_path / "g.txt"
        path.write_text("2 1\n0 1\n")
        if os.name == "nt" or os.geteuid() == 0:
            pytest.skip("permission bits are not enforced here")
        os.chmod(path, 0o000)
        try:
            with pytest.raises(EdgeListError, match="not readable"):
                validate_edge_list_file(str(path))
        finally:
            os.chmod(path, 0o644)

    def test_empty_file(self, tmp_path):
        """Empty files are rejected."""
        path = tmp_path / "empty.txt"
        path.write_text("")
        with pytest.raises(EdgeListError, match="empty"):
            validate_edge_list_file(str(path))

    def test_directory_not_file(self, tmp_path):
        """Directories are rejected."""
        with pytest.raises(EdgeListError, match="not a file"):
            validate_edge_list_file(str(tmp_path))

    def test_proc_rejected(self):
        """Pseudo-filesystems are refused."""
        with pytest.raises(EdgeListError, match="suspicious"):
            sanitize_file_path("/proc/self/status")


class TestParseEdgeList:
    """Tests for parse_edge_list function."""

    def test_header_and_edges(self):
        """Header, comments and blank lines."""
        text = "# a path\n\n3 2\n0 1\n# inner comment\n1 2\n"
        g = parse_edge_list(text.splitlines())
        assert g.n == 3
        assert g.edges() == [(0, 1), (1, 2)]

    def test_isolated_vertices(self):
        """Vertices without edges still count."""
        g = parse_edge_list(["5 1", "0 4"])
        assert g.n == 5
        assert g.degrees() == [1, 0, 0, 0, 1]

    def test_missing_header(self):
        """A file with only comments has no header."""
        with pytest.raises(EdgeListError, match="header"):
            parse_edge_list(["# nothing"])

    def test_count_mismatch(self):
        """The header's m must match the edge lines."""
        with pytest.raises(EdgeListError, match="announces 2 edges"):
            parse_edge_list(["3 2", "0 1"])

    def test_bad_token_reports_line(self):
        """Errors carry the 1-based line number."""
        with pytest.raises(EdgeListError) as excinfo:
            parse_edge_list(["3 1", "0 x"])
        assert excinfo.value.line == 2
        assert "line 2" in str(excinfo.value)

    def test_three_tokens(self):
        """Each line holds exactly two integers."""
        with pytest.raises(EdgeListError):
            parse_edge_list(["3 1", "0 1 2"])

    def test_out_of_range_endpoint(self):
        """Endpoints must be below n."""
        with pytest.raises(EdgeListError, match="out of range"):
            parse_edge_list(["3 1", "0 3"])

    def test_loop(self):
        """Loops are malformed."""
        with pytest.raises(EdgeListError, match="loop"):
            parse_edge_list(["3 1", "2 2"])

    def test_negative_header(self):
        """Negative counts are malformed."""
        with pytest.raises(EdgeListError):
            parse_edge_list(["-1 0"])

    def test_is_usage_error(self):
        """Malformed input maps to the usage exit code."""
        assert issubclass(EdgeListError, UsageError)


class TestReadEdgeList:
    """Tests for read_edge_list function."""

    def test_read_file(self, tmp_path):
        """Reading from a path."""
        path = tmp_path / "g.txt"
        path.write_text("3 1\n1 2\n")
        assert read_edge_list(str(path)) == from_edges(3, [(1, 2)])

    def test_read_stdin(self):
        """'-' reads the given stream."""
        g = read_edge_list("-", stdin=io.StringIO("2 1\n0 1\n"))
        assert g.m == 1


class TestFormatEdgeList:
    """Tests for edge-list output."""

    def test_format(self):
        """Comments first, then header and sorted edges."""
        g = from_edges(3, [(2, 1), (0, 2)])
        text = format_edge_list(g, ["demo"])
        assert text == "# demo\n3 2\n0 2\n1 2\n"

    def test_written_gadget_reads_back(self):
        """A gadget survives writing and reading."""
        gadget = build_Ht(4)
        buffer = io.StringIO()
        write_edge_list(gadget.graph, buffer, gadget.role_comments())
        assert parse_edge_list(buffer.getvalue().splitlines()) == gadget.graph
