#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
CLI functions for the Monte Carlo commands: ``pc``, ``curve``,
``exponent`` and ``witness-rate``.

Each function receives the executor owned by the CLI; none of them
starts worker processes.
"""

import logging
from fractions import Fraction
from typing import Callable, List, Optional, TextIO

import numpy as np

from perclab.density import bracket_exponents
from perclab.errors import UsageError
from perclab.experiments import (
    estimate_pc,
    fit_exponent,
    percolation_curve,
    witness_success_rate,
)
from perclab.export import write_csv, write_json

logger = logging.getLogger(__name__)


def parse_grid(spec: str) -> List[float]:
    """
    Parse "lo:hi:steps" into an evenly spaced grid of probabilities.

    Raises:
        UsageError: on malformed text, steps < 1 or bounds outside [0, 1]
    """
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must look like lo:hi:steps, got {spec!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"grid must look like lo:hi:steps, got {spec!r}") from None
    if steps < 1 or not 0.0 <= lo <= hi <= 1.0:
        raise UsageError(f"grid needs 0 <= lo <= hi <= 1 and steps >= 1, got {spec!r}")
    if steps == 1:
        return [lo]
    return [float(p) for p in np.linspace(lo, hi, steps)]


def parse_ns(spec: str) -> List[int]:
    try:
        ns = [int(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--ns expects comma-separated integers, got {spec!r}") from None
    if not ns:
        raise UsageError("--ns is empty")
    return ns


def parse_fraction(spec: str) -> Fraction:
    try:
        return Fraction(spec)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {spec!r}") from None


def perform_pc_cli(
    n: int, t: int, trials: int, tolerance: float, seed: int, target: Fraction,
    output_file: TextIO, executor: Callable = map,
) -> None:
    estimate = estimate_pc(n, t, trials, tolerance, seed, target_prob=target, executor=executor)
    write_json(estimate.to_dict(), output_file)


def perform_curve_cli(
    n: int, t: int, grid: List[float], trials: int, seed: int,
    output_file: TextIO, output_format: str = "csv", executor: Callable = map,
) -> None:
    """Percolation probability along a p grid as CSV (p, fraction, ci_lo, ci_hi) or JSON."""
    points = percolation_curve(n, t, grid, trials, seed, executor)
    if output_format == "csv":
        rows = ([pt.p, float(pt.fraction), pt.ci_lo, pt.ci_hi] for pt in points)
        write_csv(["p", "fraction", "ci_lo", "ci_hi"], rows, output_file)
        return
    write_json({"n": n, "t": t, "seed": seed, "points": [pt.to_dict() for pt in points]}, output_file)


def perform_exponent_cli(
    t: int, ns: List[int], trials: int, tolerance: float, seed: int,
    output_file: TextIO, executor: Callable = map,
) -> None:
    """
    Estimate p_c at every n and fit the exponent.

    Every n uses the same master seed.
    """
    if len(set(ns)) < 3:
        raise UsageError("exponent needs at least three distinct n")
    estimates = []
    for n in sorted(set(ns)):
        logger.info("estimating p_c for n=%d", n)
        estimates.append(estimate_pc(n, t, trials, tolerance, seed, executor=executor))
    fit = fit_exponent(estimates)
    payload = fit.to_dict()
    payload["estimates"] = [e.to_dict() for e in estimates]
    write_json(payload, output_file)


def witness_probability(n: int, t: int, p_scale: float) -> float:
    """p = p_scale · n^e with e the lower-bound exponent (-10/13 for t = 4)."""
    exps = bracket_exponents(t)
    exponent = exps.get("sharp", exps["lower"])
    return p_scale * n ** float(exponent)


def perform_witness_rate_cli(
    n: int, t: int, trials: int, seed: int, output_file: TextIO,
    p_scale: float = 0.1, p: Optional[float] = None, executor: Callable = map,
) -> None:
    """Certify non-percolation over ``trials`` samples and report the counts."""
    if p is None:
        p = witness_probability(n, t, p_scale)
    rate = witness_success_rate(n, t, p, trials, seed, executor)
    logger.info("witness verified in %d of %d samples", rate.verified, rate.trials)
    write_json(rate.to_dict(), output_file)
