"""Seed derivation shared by the estimator, the simulators and the harness.

Every random stream is keyed by ``(master_seed, *indices)`` through
:class:`numpy.random.SeedSequence` spawn keys, so a replicate's stream does
not depend on how many other replicates exist or on execution order.
"""

import numpy as np


def seed_sequence(master_seed, *keys):
    """Return the ``SeedSequence`` for ``master_seed`` and an index path."""
    return np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(k) for k in keys))


def replicate_rng(master_seed, *keys):
    """Return a PCG64 ``Generator`` keyed by ``master_seed`` and an index path."""
    return np.random.default_rng(seed_sequence(master_seed, *keys))


def derive_seed(master_seed, *keys):
    """Return a 64-bit integer seed derived from ``master_seed`` and an index path."""
    return int(seed_sequence(master_seed, *keys).generate_state(1, np.uint64)[0])


def as_generator(rng):
    """Coerce ``None``, an int seed, a ``SeedSequence`` or a ``Generator``."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)
