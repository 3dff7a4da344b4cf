"""Shared helpers for the test suite."""

import numpy as np
import pytest

from spcov.graphs import all_pairs_shortest_paths, make_graph
from spcov.model import graph_cov, make_psd_instance


def toeplitz_matrix(t):
    """Materialize the symmetric Toeplitz matrix with first row t."""
    t = np.asarray(t, dtype=np.float64)
    idx = np.arange(t.shape[0])
    return t[np.abs(idx[:, None] - idx[None, :])]


def circulant_matrix(c):
    """Materialize the circulant matrix with first row c."""
    c = np.asarray(c, dtype=np.float64)
    m = c.shape[0]
    idx = np.arange(m)
    return c[(idx[None, :] - idx[:, None]) % m]


def path_instance(d, rho):
    """PSD instance on a path with geometric base vector rho**s."""
    g = make_graph("path", d=d)
    return make_psd_instance(g, [rho ** s for s in range(d)])


def identity_instance(d):
    """Sigma = I on a path of d nodes."""
    g = make_graph("path", d=d)
    t = all_pairs_shortest_paths(g)
    return graph_cov(g, t, [1.0] + [0.0] * (d - 1))


@pytest.fixture
def np_rng():
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(1234)))
