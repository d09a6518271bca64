"""Random test objects: unitaries, states, channels, POVMs, kernels."""

from __future__ import annotations

import numpy as np


def _rng(rng):
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def ginibre(rows, cols, rng=None):
    rng = _rng(rng)
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def unit_vectors(count, dim, rng=None):
    """Rows are uniform random unit vectors in C^dim."""
    g = ginibre(count, dim, rng)
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def rand_unitary(d, rng=None):
    q, r = np.linalg.qr(ginibre(d, d, rng))
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def rand_isometry(rows, cols, rng=None):
    q, r = np.linalg.qr(ginibre(rows, cols, rng))
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def rand_psd(d, rng=None, rank=None):
    g = ginibre(d, rank or d, rng)
    return g @ g.conj().T


def rand_density(d, rng=None, rank=None):
    a = rand_psd(d, rng, rank)
    return a / np.trace(a).real


def rand_hermitian(d, rng=None):
    g = ginibre(d, d, rng)
    return g + g.conj().T


def rand_kraus(dim_in, dim_out, rank=None, rng=None):
    """Kraus operators (rank, dim_out, dim_in) of a random trace-preserving map."""
    rank = rank or dim_in * dim_out
    iso = rand_isometry(rank * dim_out, dim_in, rng)
    return iso.reshape(rank, dim_out, dim_in)


def rand_channel(dim_in, dim_out=None, rank=None, rng=None):
    from .channels import make_channel

    return make_channel(rand_kraus(dim_in, dim_out or dim_in, rank, rng))


def rand_povm(d, outcomes, rng=None):
    rng = _rng(rng)
    parts = [rand_psd(d, rng) for _ in range(outcomes)]
    total_inv_half = _inv_sqrt(sum(parts))
    return [total_inv_half @ p @ total_inv_half for p in parts]


def rand_probability(n, rng=None):
    rng = _rng(rng)
    return rng.dirichlet(np.ones(n))


def rand_stochastic(rows, cols, rng=None):
    rng = _rng(rng)
    return rng.dirichlet(np.ones(rows), size=cols).T


def _inv_sqrt(a):
    w, v = np.linalg.eigh(a)
    return (v / np.sqrt(w)) @ v.conj().T
