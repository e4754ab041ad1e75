"""Shared generators for seeded property tests."""

import numpy as np

from toeprange.operators import PeriodicBandedSpec, random_spec


def random_spec_with_s(rng: np.random.Generator) -> tuple[PeriodicBandedSpec, int]:
    """Spec with period 1..4, band 0..3, plus a replication count s in 2..6
    satisfying s * period >= 2 * band + 1."""
    while True:
        period = int(rng.integers(1, 5))
        band = int(rng.integers(0, 4))
        valid = [s for s in range(2, 7) if s * period >= 2 * band + 1]
        if valid:
            s = int(valid[rng.integers(0, len(valid))])
            return random_spec(rng, period, band), s


def random_unit_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_complex_matrix(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    m = random_complex_matrix(rng, dim)
    return 0.5 * (m + m.conj().T)
