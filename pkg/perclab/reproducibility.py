#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Per-trial random streams.

Every trial draws from its own Philox stream derived from
(master_seed, trial_index) through :class:`numpy.random.SeedSequence`,
so a trial's graph depends only on those two numbers and never on the
worker that ran it or the order trials were scheduled in.

A trial stream is consumed exactly once, as one uniform per unordered
vertex pair. Sampling at edge probability p keeps the pairs whose
uniform is below p, which couples samples across p: the graph at p is
a subgraph of the graph at any p' > p.
"""

import numpy as np

from perclab.errors import UsageError


def trial_seed_sequence(master_seed: int, trial_index: int) -> np.random.SeedSequence:
    if master_seed < 0 or trial_index < 0:
        raise UsageError("seeds and trial indices must be nonnegative")
    return np.random.SeedSequence(master_seed, spawn_key=(trial_index,))


def trial_generator(master_seed: int, trial_index: int) -> np.random.Generator:
    """Counter-based generator for one trial."""
    return np.random.Generator(np.random.Philox(trial_seed_sequence(master_seed, trial_index)))


def pair_uniforms(n: int, generator: np.random.Generator) -> np.ndarray:
    """
    One uniform in [0, 1) per unordered pair, in ``numpy.triu_indices(n, 1)`` order.
    """
    return generator.random(n * (n - 1) // 2)
