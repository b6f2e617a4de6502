"""Seeded random generators for states, isometries, and channels.

All samplers take a ``numpy.random.Generator`` (or anything accepted by
``numpy.random.default_rng``) so callers stay reproducible.
"""

from __future__ import annotations

import numpy as np

from .channels import LinearMapRep, map_from_function
from .tensor_ops import partial_trace

__all__ = [
    "rng_from",
    "ginibre",
    "random_unit_vector",
    "haar_isometry",
    "haar_unitary",
    "random_density",
    "random_channel",
]


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(rows: int, cols: int, rng) -> np.ndarray:
    """Matrix of i.i.d. standard complex Gaussians."""
    rng = rng_from(rng)
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_unit_vector(dim: int, rng) -> np.ndarray:
    z = ginibre(dim, 1, rng).reshape(-1)
    return z / np.linalg.norm(z)


def haar_isometry(dim_from: int, dim_to: int, rng) -> np.ndarray:
    """Haar-random isometry C^dim_from -> C^dim_to (dim_to >= dim_from)."""
    if dim_to < dim_from:
        raise ValueError("isometry needs dim_to >= dim_from")
    g = ginibre(dim_to, dim_from, rng_from(rng))
    q, r = np.linalg.qr(g)
    # fix phases so the distribution is Haar, not QR-biased
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def haar_unitary(dim: int, rng) -> np.ndarray:
    return haar_isometry(dim, dim, rng)


def random_density(dim: int, rng, rank: int | None = None) -> np.ndarray:
    """Normalized G G* for a Ginibre G with the given rank (default full)."""
    rank = dim if rank is None else rank
    g = ginibre(dim, rank, rng_from(rng))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_channel(dim_in: int, dim_out: int, rng, env_dim: int | None = None) -> LinearMapRep:
    """Channel from a Haar-random Stinespring isometry into out (x) env."""
    env_dim = dim_out if env_dim is None else env_dim
    a = haar_isometry(dim_in, dim_out * env_dim, rng_from(rng))

    def act(x: np.ndarray) -> np.ndarray:
        return partial_trace(a @ x @ a.conj().T, (dim_out, env_dim), keep=1)

    return map_from_function(act, dim_in, dim_out)
