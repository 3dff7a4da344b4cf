"""Shortest-path covariance model.

A distance-indexed vector a_0..a_D and a graph determine the matrix
Sigma[i, j] = a[dist(i, j)].  This module materializes such matrices,
validates positive semidefiniteness, generates PSD instances by shrinking
the off-diagonal part, computes the stable rank, and exposes the star-graph
block decomposition.
"""

from dataclasses import dataclass

import numpy as np

from spcov import linalg
from spcov.errors import NotPsdError, SpcovError
from spcov.graphs import DistanceTable, Graph, all_pairs_shortest_paths
from spcov.linalg import SymMatrix

# Eigenvalues no lower than -PSD_TOL_FACTOR * max(1, ||Sigma||_2) count as
# PSD; matches the clamp band of linalg.psd_sqrt.
PSD_TOL_FACTOR = 1e-8

SHRINK_GRID = 1024  # gamma resolution for make_psd_instance


@dataclass(frozen=True)
class SPCovInstance:
    """A graph, its distance table, the vector a, and the materialized
    covariance matrix, kept together so they cannot drift apart."""

    graph: Graph
    distances: DistanceTable
    a: np.ndarray
    sigma: SymMatrix


@dataclass(frozen=True)
class PsdCheck:
    psd: bool
    min_eig: float


@dataclass(frozen=True)
class StarBlocks:
    """Distinct blocks of a star-graph covariance matrix.

    ``sigma1`` is the (2*depth+1) x (2*depth+1) Toeplitz matrix on a
    diameter path (two opposite branches plus the center).  ``sigma2`` is a
    within-branch block, ``sigma3`` a cross-branch block, ``sigma4`` the
    center-to-branch column.  Depth indices count from nearest-to-center,
    so sigma2[p, q] = a[|p-q|], sigma3[p, q] = a[p+q+2], sigma4[p] = a[p+1];
    all three are submatrices of sigma1.
    """

    sigma1: SymMatrix
    sigma2: np.ndarray
    sigma3: np.ndarray
    sigma4: np.ndarray
    a0: float

    @property
    def depth(self) -> int:
        return self.sigma4.shape[0]


def graph_cov(g: Graph, t: DistanceTable, a) -> SPCovInstance:
    """Materialize Sigma[i, j] = a[dist(i, j)].

    Requires len(a) = diameter + 1.  Deliberately does not check PSD: the
    estimator assembles its (possibly indefinite) output through this same
    path, and validity is reported separately by validate_psd.
    """
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 1:
        raise SpcovError("covariance vector must be one dimensional")
    if arr.shape[0] != t.diameter + 1:
        raise SpcovError(
            f"covariance vector has length {arr.shape[0]}, "
            f"expected diameter + 1 = {t.diameter + 1}"
        )
    sigma = SymMatrix(arr[t.dist])
    a_stored = arr.copy()
    a_stored.setflags(write=False)
    return SPCovInstance(graph=g, distances=t, a=a_stored, sigma=sigma)


def validate_psd(inst: SPCovInstance) -> PsdCheck:
    """PSD check with a roundoff band proportional to the spectral norm."""
    decomp = linalg.eigh(inst.sigma)
    min_eig = float(decomp.values[-1])
    scale = max(1.0, float(np.max(np.abs(decomp.values))))
    return PsdCheck(psd=min_eig >= -PSD_TOL_FACTOR * scale, min_eig=min_eig)


def make_psd_instance(g: Graph, base_a) -> SPCovInstance:
    """Largest uniform off-diagonal shrinkage that yields a PSD instance.

    Keeps a_0 and scales a_1..a_D by the largest gamma on the 1/1024 grid
    passing validate_psd (gamma = 1 when the base vector is already PSD).
    Shrinkage stays inside the model class, unlike eigenvalue clipping.
    gamma = 0 gives a_0 * I, so the search always succeeds.
    """
    base = np.asarray(base_a, dtype=np.float64)
    if base.ndim != 1 or base.shape[0] < 1:
        raise SpcovError("base covariance vector must be a nonempty 1-d array")
    if base[0] <= 0.0:
        raise NotPsdError("covariance vector needs a_0 > 0")
    t = all_pairs_shortest_paths(g)

    def instance_at(k: int) -> SPCovInstance:
        gamma = k / SHRINK_GRID
        a = base.copy()
        a[1:] *= gamma
        return graph_cov(g, t, a)

    if validate_psd(instance_at(SHRINK_GRID)).psd:
        return instance_at(SHRINK_GRID)
    # min eigenvalue is concave in gamma, so the feasible gammas form an
    # interval containing 0; bisect for its upper end on the grid
    lo, hi = 0, SHRINK_GRID  # lo feasible, hi infeasible
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if validate_psd(instance_at(mid)).psd:
            lo = mid
        else:
            hi = mid
    return instance_at(lo)


def stable_rank(inst: SPCovInstance) -> float:
    """Tr(Sigma) / ||Sigma||_2 for a PSD, nonzero instance.

    This single number is the effective rank: whenever a near-low-rank
    split (r, xi) is chosen tight, the combined quantity r + xi ||.||_F /
    ||.||_2 collapses to exactly this ratio.
    """
    decomp = linalg.eigh(inst.sigma)
    top = float(np.max(np.abs(decomp.values)))
    min_eig = float(decomp.values[-1])
    if min_eig < -PSD_TOL_FACTOR * max(1.0, top):
        raise NotPsdError(f"stable_rank requires PSD input, min eigenvalue {min_eig:.6g}")
    if top == 0.0:
        raise SpcovError("stable_rank is undefined for the zero matrix")
    return float(np.trace(inst.sigma.data)) / top


def _star_params(inst: SPCovInstance) -> tuple:
    if inst.graph.kind != "star":
        raise SpcovError("star block decomposition requires a star graph")
    return int(inst.graph.param("branches")), int(inst.graph.param("depth"))


def star_blocks(inst: SPCovInstance) -> StarBlocks:
    """Decompose a star-graph covariance into its four distinct blocks."""
    _, depth = _star_params(inst)
    a = inst.a
    p = np.arange(depth)
    sigma2 = a[np.abs(p[:, None] - p[None, :])]
    sigma3 = a[p[:, None] + p[None, :] + 2]
    sigma4 = a[p + 1]
    span = np.arange(2 * depth + 1)
    sigma1 = SymMatrix(a[np.abs(span[:, None] - span[None, :])])
    return StarBlocks(sigma1=sigma1, sigma2=sigma2, sigma3=sigma3,
                      sigma4=sigma4, a0=float(a[0]))


def star_assemble(blocks: StarBlocks, l: int) -> SymMatrix:
    """Rebuild the full star covariance from its blocks.

    Center node first, then l whole branches ordered by depth; equals the
    directly materialized matrix entry for entry.
    """
    if l < 2:
        raise SpcovError("star requires at least 2 branches")
    depth = blocks.depth
    d = 1 + l * depth
    sigma = np.empty((d, d), dtype=np.float64)
    sigma[0, 0] = blocks.a0
    for b in range(l):
        rows = slice(1 + b * depth, 1 + (b + 1) * depth)
        sigma[0, rows] = blocks.sigma4
        sigma[rows, 0] = blocks.sigma4
        for c in range(l):
            cols = slice(1 + c * depth, 1 + (c + 1) * depth)
            sigma[rows, cols] = blocks.sigma2 if b == c else blocks.sigma3
    return SymMatrix(sigma)
