#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Constants used throughout the perclab package.

This module defines named constants for limits, defaults and output
conventions so that no module carries magic numbers.
"""

from fractions import Fraction

# Output conventions
SCHEMA_VERSION = "perclab/1"  # Stamped into every JSON document
JSON_INDENT = 2

# Security constants (input files)
MAX_FILE_SIZE = 64 * 1024 * 1024  # 64 MB maximum edge-list size
MAX_EDGE_LINES = 5_000_000  # Maximum number of edge lines to read

# Exact density limits
BRUTEFORCE_MAX_VERTICES = 26  # 2^26 induced subsets at most
BRUTEFORCE_CHUNKS = 64  # Gray-code ranges handed to the executor
AUTO_BRUTEFORCE_MAX_VERTICES = 18  # max_density(method="auto") switches to min-cut above this

# Generic H-bootstrap oracle scale
ORACLE_MAX_PATTERN_VERTICES = 12

# Monte Carlo defaults
DEFAULT_TARGET_PROB = Fraction(1, 2)
DEFAULT_CONFIDENCE = 0.95
DEFAULT_SEED = 0
DEFAULT_TRIALS = 200
DEFAULT_TOLERANCE = 0.05
BRACKET_PADDING = 10  # Theory bracket padded by one decade each side
BRACKET_EXPANSIONS = 6  # Extra decades tried when the padded bracket fails
MAX_BISECTION_STEPS = 60

# Worker pool
WORKERS_ENV = "PERCLAB_WORKERS"
