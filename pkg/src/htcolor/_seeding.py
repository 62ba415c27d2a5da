"""Splittable seeding: every random stream is derived from one integer seed."""
import numpy as np


def rng_for(seed, *stream):
    """Independent generator for ``stream`` under root ``seed``.

    ``seed`` may already be a ``numpy.random.Generator``, which is returned as is.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.default_rng(ss)


def derive_seed(seed, *stream):
    """32-bit integer seed for a child stream; stable across platforms."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(s) for s in stream))
    return int(ss.generate_state(1, dtype=np.uint32)[0])
