"""Deterministic child-seed derivation.

Every randomized operation in this package takes one integer master seed
and derives independent child streams from it with numpy's SeedSequence,
using the entropy list ``[master, *path]`` where ``path`` is a fixed tuple
of small non-negative integers identifying the consumer (for example
``(rep, corpus_index, lottery_side)``). Two different paths give streams
that are independent for all practical purposes, and adding consumers
never perturbs the streams of existing ones.
"""

import numpy as np

__all__ = ["derive_seed", "rng_from"]


def derive_seed(master: int, *path: int) -> int:
    """Collapse (master, *path) to a single child seed integer."""
    ss = np.random.SeedSequence([int(master), *(int(p) for p in path)])
    return int(ss.generate_state(1, np.uint64)[0])


def rng_from(master: int, *path: int) -> np.random.Generator:
    """Generator seeded from (master, *path)."""
    ss = np.random.SeedSequence([int(master), *(int(p) for p in path)])
    return np.random.default_rng(ss)
