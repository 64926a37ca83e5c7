#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Monte Carlo experiments on G(n, p).

Samples are coupled across p: trial i always uses the same uniforms
(see :mod:`perclab.reproducibility`), so the sample at p is a subgraph
of the sample at p' > p and, because the closure is monotone, each
trial's percolation indicator is nondecreasing in p. The threshold
search relies on this to bisect on p with the same trials at every step.

Every function that runs trials takes an ``executor`` (builtin ``map``
or a pool's ``map``). Counts are reduced in trial order, so results are
identical for any worker count.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from perclab.closure import percolates
from perclab.constants import (
    BRACKET_EXPANSIONS,
    BRACKET_PADDING,
    DEFAULT_CONFIDENCE,
    DEFAULT_TARGET_PROB,
    MAX_BISECTION_STEPS,
)
from perclab.density import bracket_exponents
from perclab.export import rational_str
from perclab.errors import BracketError, UsageError
from perclab.graph import Graph, from_edges
from perclab.reproducibility import pair_uniforms, trial_generator
from perclab.witness import certify_general, certify_t4

logger = logging.getLogger(__name__)

Executor = Callable[..., Iterable[Any]]


@dataclass(frozen=True)
class TrialConfig:
    """
    One batch of percolation trials.

    Attributes:
        n: vertex count
        t: bootstrap parameter
        p: edge probability in [0, 1]
        trials: number of independent samples
        master_seed: root of the per-trial streams
    """

    n: int
    t: int
    p: float
    trials: int
    master_seed: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise UsageError(f"n must be nonnegative, got {self.n}")
        if self.t < 2:
            raise UsageError(f"t must be at least 2, got {self.t}")
        if not 0.0 <= self.p <= 1.0:
            raise UsageError(f"p must lie in [0, 1], got {self.p}")
        if self.trials < 1:
            raise UsageError(f"trials must be at least 1, got {self.trials}")


def sample_gnp(n: int, p: float, seed: int, trial: int = 0) -> Graph:
    """
    Sample G(n, p) from the stream of (seed, trial).

    Pair (i, j), i < j, is an edge iff its uniform is below p.

    Raises:
        UsageError: if p is outside [0, 1]
    """
    if not 0.0 <= p <= 1.0:
        raise UsageError(f"p must lie in [0, 1], got {p}")
    if n < 2:
        return from_edges(max(n, 0), [])
    uniforms = pair_uniforms(n, trial_generator(seed, trial))
    rows, cols = np.triu_indices(n, 1)
    keep = uniforms < p
    return from_edges(n, zip(rows[keep].tolist(), cols[keep].tolist()))


def _run_trial(task: Tuple[int, int, float, int, int]) -> bool:
    n, t, p, seed, index = task
    return percolates(sample_gnp(n, p, seed, index), t)


def wilson_interval(successes: int, trials: int, confidence: float = DEFAULT_CONFIDENCE) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        return 0.0, 1.0
    z = float(stats.norm.ppf(1.0 - (1.0 - confidence) / 2.0))
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    centre = phat + z2 / (2.0 * trials)
    radius = z * math.sqrt(max(0.0, phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials)))
    return max(0.0, (centre - radius) / denom), min(1.0, (centre + radius) / denom)


@dataclass(frozen=True)
class PercolationEstimate:
    p: float
    successes: int
    trials: int
    ci_lo: float
    ci_hi: float

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.successes, self.trials)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "successes": self.successes,
            "trials": self.trials,
            "fraction": rational_str(self.fraction),
            "ci_lo": self.ci_lo,
            "ci_hi": self.ci_hi,
        }


def count_percolating(cfg: TrialConfig, executor: Executor = map) -> int:
    tasks = [(cfg.n, cfg.t, cfg.p, cfg.master_seed, i) for i in range(cfg.trials)]
    return sum(1 for hit in executor(_run_trial, tasks) if hit)


def percolation_probability(
    cfg: TrialConfig, executor: Executor = map, confidence: float = DEFAULT_CONFIDENCE
) -> PercolationEstimate:
    """
    Fraction of trials whose sample percolates, with a Wilson interval.

    Example:
        >>> percolation_probability(TrialConfig(n=8, t=4, p=1.0, trials=3)).fraction
        Fraction(1, 1)
    """
    successes = count_percolating(cfg, executor)
    lo, hi = wilson_interval(successes, cfg.trials, confidence)
    return PercolationEstimate(cfg.p, successes, cfg.trials, lo, hi)


def percolation_curve(
    n: int,
    t: int,
    grid: Sequence[float],
    trials: int,
    seed: int = 0,
    executor: Executor = map,
    confidence: float = DEFAULT_CONFIDENCE,
) -> List[PercolationEstimate]:
    """Percolation probability along a grid of p, same trials at every p."""
    return [
        percolation_probability(TrialConfig(n, t, float(p), trials, seed), executor, confidence)
        for p in grid
    ]


# Threshold search


@dataclass
class ThresholdEstimate:
    """
    Bracket [p_lo, p_hi] around the p where the percolating fraction
    crosses ``target_prob``.

    Attributes:
        n, t: problem size and bootstrap parameter
        p_lo, p_hi: fraction(p_lo) < target <= fraction(p_hi)
        p_hat: geometric midpoint of the bracket
        target_prob: crossing level, 1/2 by default
        trials_per_step: trials evaluated at each tested p
        seed: master seed shared by every step
        history: tested (p, successes) in the order evaluated
    """

    n: int
    t: int
    p_lo: float
    p_hi: float
    p_hat: float
    target_prob: Fraction
    trials_per_step: int
    seed: int
    history: List[Tuple[float, int]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "t": self.t,
            "p_lo": self.p_lo,
            "p_hi": self.p_hi,
            "p_hat": self.p_hat,
            "target_prob": rational_str(self.target_prob),
            "trials_per_step": self.trials_per_step,
            "seed": self.seed,
            "history": [{"p": p, "successes": s} for p, s in self.history],
        }


def initial_bracket(n: int, t: int) -> Tuple[float, float]:
    """
    Theory bracket padded by BRACKET_PADDING on each side.

    For t >= 4 this is [n^{-t/(2t-3)} / 10, 10·n^{-1/η(t)}]; smaller t
    fall back to the bound that holds for every pattern, up to p = 1.
    """
    if t >= 4:
        exps = bracket_exponents(t)
        lo = n ** float(exps["lower"]) / BRACKET_PADDING
        hi = min(1.0, BRACKET_PADDING * n ** float(exps["upper"]))
    else:
        lo = n ** (-(t + 1) / (2 * t - 2)) / BRACKET_PADDING
        hi = 1.0
    return lo, hi


def estimate_pc(
    n: int,
    t: int,
    trials_per_step: int,
    tolerance: float,
    seed: int = 0,
    target_prob: Fraction = DEFAULT_TARGET_PROB,
    executor: Executor = map,
) -> ThresholdEstimate:
    """
    Bisect on p (geometric midpoints) for the percolation threshold.

    The padded theory bracket is widened by further decades (at most
    BRACKET_EXPANSIONS times) until it brackets the target, then halved
    until p_hi - p_lo < tolerance·p_hat.

    Raises:
        UsageError: if tolerance <= 0, trials_per_step < 1 or the target
          is outside (0, 1]
        BracketError: if n < t + 2 or no bracket is found
    """
    if tolerance <= 0:
        raise UsageError(f"tolerance must be positive, got {tolerance}")
    if trials_per_step < 1:
        raise UsageError(f"trials per step must be at least 1, got {trials_per_step}")
    target = Fraction(target_prob)
    if not 0 < target <= 1:
        raise UsageError(f"target probability must lie in (0, 1], got {target}")
    if n < t + 2:
        raise BracketError(f"n={n} is below t+2={t + 2}: only complete samples percolate")

    history: List[Tuple[float, int]] = []

    def reaches(p: float) -> bool:
        successes = count_percolating(TrialConfig(n, t, p, trials_per_step, seed), executor)
        history.append((p, successes))
        return Fraction(successes, trials_per_step) >= target

    lo, hi = initial_bracket(n, t)
    expansions = 0
    while reaches(lo):
        if expansions == BRACKET_EXPANSIONS:
            raise BracketError(f"fraction reaches {target} already at p={lo:.3g}")
        lo /= BRACKET_PADDING
        expansions += 1
    expansions = 0
    while not reaches(hi):
        if hi >= 1.0 or expansions == BRACKET_EXPANSIONS:
            raise BracketError(f"fraction stays below {target} up to p={hi:.3g}")
        hi = min(1.0, hi * BRACKET_PADDING)
        expansions += 1

    steps = 0
    while hi - lo >= tolerance * math.sqrt(lo * hi) and steps < MAX_BISECTION_STEPS:
        mid = math.sqrt(lo * hi)
        if reaches(mid):
            hi = mid
        else:
            lo = mid
        steps += 1
        logger.info("n=%d t=%d: bracket [%.6g, %.6g] after %d steps", n, t, lo, hi, steps)
    return ThresholdEstimate(
        n=n, t=t, p_lo=lo, p_hi=hi, p_hat=math.sqrt(lo * hi),
        target_prob=target, trials_per_step=trials_per_step, seed=seed, history=history,
    )


# Exponent fits


@dataclass
class ExponentFit:
    """
    Least-squares fit of log p_hat against log n.

    Attributes:
        points: (n, p_hat) sorted by n
        slope, intercept: fitted line in natural logarithms
        residual: root mean square of the fit residuals
        t: bootstrap parameter, if known
        brackets: theory exponents for t (see density.bracket_exponents)
    """

    points: List[Tuple[int, float]]
    slope: float
    intercept: float
    residual: float
    t: Optional[int] = None
    brackets: Dict[str, Fraction] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "points": [{"n": n, "p_hat": p} for n, p in self.points],
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "t": self.t,
            "brackets": {k: rational_str(v) for k, v in sorted(self.brackets.items())},
        }


def fit_power_law(points: Sequence[Tuple[int, float]], t: Optional[int] = None) -> ExponentFit:
    """
    Fit p = C·n^slope through (n, p) points.

    Raises:
        UsageError: with fewer than three distinct n or a nonpositive p
    """
    ordered = sorted((int(n), float(p)) for n, p in points)
    if len({n for n, _ in ordered}) < 3:
        raise UsageError("an exponent fit needs at least three distinct n")
    if any(n <= 0 or p <= 0 for n, p in ordered):
        raise UsageError("an exponent fit needs positive n and p")
    x = np.log([n for n, _ in ordered])
    y = np.log([p for _, p in ordered])
    fit = stats.linregress(x, y)
    residuals = y - (fit.intercept + fit.slope * x)
    residual = float(np.sqrt(np.mean(residuals ** 2)))
    brackets = bracket_exponents(t) if t is not None and t >= 4 else {}
    return ExponentFit(
        points=ordered, slope=float(fit.slope), intercept=float(fit.intercept),
        residual=residual, t=t, brackets=brackets,
    )


def fit_exponent(estimates: Sequence[ThresholdEstimate]) -> ExponentFit:
    """
    Fit the threshold exponent through a set of threshold estimates.

    Raises:
        UsageError: with fewer than three distinct n or mixed t values
    """
    ts = {e.t for e in estimates}
    if len(ts) > 1:
        raise UsageError(f"estimates mix several t values: {sorted(ts)}")
    t = ts.pop() if ts else None
    return fit_power_law([(e.n, e.p_hat) for e in estimates], t)


# Witness harness


def _run_witness(task: Tuple[int, int, float, int, int]) -> Tuple[bool, int, int]:
    n, t, p, seed, index = task
    graph = sample_gnp(n, p, seed, index)
    report = certify_t4(graph) if t == 4 else certify_general(graph, t)
    dense = sum(1 for v in report.violations if v["dense"])
    return report.verified, len(report.violations), dense


@dataclass(frozen=True)
class WitnessRate:
    """
    Witness outcomes over a batch of samples.

    ``unexplained`` counts failures with no located dense subgraph.
    """

    n: int
    t: int
    p: float
    trials: int
    verified: int
    violations: int
    dense_violations: int
    unexplained: int

    @property
    def rate(self) -> Fraction:
        return Fraction(self.verified, self.trials)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "t": self.t,
            "p": self.p,
            "trials": self.trials,
            "verified": self.verified,
            "rate": rational_str(self.rate),
            "violations": self.violations,
            "dense_violations": self.dense_violations,
            "unexplained": self.unexplained,
        }


def witness_success_rate(
    n: int, t: int, p: float, trials: int, seed: int = 0, executor: Executor = map
) -> WitnessRate:
    """
    Sample ``trials`` graphs and try to certify non-percolation of each.

    t = 4 uses the component procedure, larger t the disjoint-family
    witness.
    """
    if t < 4:
        raise UsageError(f"witnesses are defined for t >= 4, got t={t}")
    if trials < 1:
        raise UsageError(f"trials must be at least 1, got {trials}")
    if not 0.0 <= p <= 1.0:
        raise UsageError(f"p must lie in [0, 1], got {p}")
    verified = violations = dense = unexplained = 0
    tasks = [(n, t, p, seed, i) for i in range(trials)]
    for ok, found, dense_found in executor(_run_witness, tasks):
        verified += ok
        violations += found
        dense += dense_found
        if not ok and dense_found == 0:
            unexplained += 1
    return WitnessRate(n, t, p, trials, verified, violations, dense, unexplained)
