"""Symmetric matrix helpers built on the Jacobi eigensolver kernel.

All matrices here are dense float64 and symmetric.  The eigensolver is the
project's own cyclic Jacobi implementation (compiled when available) so that
results are reproducible bit for bit across runs of the same build; numpy's
LAPACK solver is used only as an independent oracle in the test suite.
"""

from dataclasses import dataclass

import numpy as np

from spcov import kernels
from spcov.errors import NotPsdError, SpcovError

# Convergence: off-diagonal Frobenius mass relative to the input norm.
JACOBI_TOL_FACTOR = 1e-12
JACOBI_MAX_SWEEPS = 100

# Eigenvalues in [-PSD_TOL_FACTOR * max(1, ||A||_2), 0) are treated as
# roundoff and clamped to zero by psd_sqrt.
PSD_TOL_FACTOR = 1e-8


class SymMatrix:
    """Immutable dense symmetric matrix.

    Input is symmetrized as (A + A^T) / 2 and stored read-only, so every
    downstream routine may assume exact symmetry.
    """

    __slots__ = ("_data",)

    def __init__(self, data) -> None:
        arr = np.array(data, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise SpcovError("SymMatrix requires a square 2-d array")
        if arr.shape[0] < 1:
            raise SpcovError("SymMatrix requires dimension >= 1")
        arr = (arr + arr.T) / 2.0
        arr.setflags(write=False)
        self._data = arr

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def dim(self) -> int:
        return self._data.shape[0]

    def __repr__(self) -> str:
        return f"SymMatrix(dim={self.dim})"


@dataclass(frozen=True)
class EigenDecomp:
    """Eigenvalues in descending order with matching eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def eigh(a: SymMatrix) -> EigenDecomp:
    """Full eigendecomposition via cyclic Jacobi rotations.

    Rotations sweep all index pairs in row order until the off-diagonal
    Frobenius mass falls below 1e-12 times the input Frobenius norm, with a
    hard cap of 100 sweeps.  Deterministic for identical input bits.
    """
    work = np.array(a.data, dtype=np.float64, order="C")
    if not np.all(np.isfinite(work)):
        raise SpcovError("eigh requires finite matrix entries")
    tol = JACOBI_TOL_FACTOR * float(np.linalg.norm(work))
    values, vectors = kernels.jacobi_eigh(work, tol, JACOBI_MAX_SWEEPS)
    order = np.argsort(-values, kind="stable")
    values = np.ascontiguousarray(values[order])
    vectors = np.ascontiguousarray(vectors[:, order])
    values.setflags(write=False)
    vectors.setflags(write=False)
    return EigenDecomp(values=values, vectors=vectors)


def spectral_norm(a: SymMatrix) -> float:
    """Largest absolute eigenvalue."""
    values = eigh(a).values
    return float(np.max(np.abs(values)))


def frobenius_norm(a: SymMatrix) -> float:
    return float(np.linalg.norm(a.data))


def min_eigenvalue(a: SymMatrix) -> float:
    return float(eigh(a).values[-1])


def trace(a: SymMatrix) -> float:
    return float(np.trace(a.data))


def psd_sqrt(a: SymMatrix) -> SymMatrix:
    """Symmetric square root of a positive semidefinite matrix.

    Eigenvalues slightly negative from roundoff (within 1e-8 of the scale
    max(1, ||A||_2)) are clamped to zero; anything more negative raises
    ``NotPsdError``.
    """
    decomp = eigh(a)
    values = decomp.values
    tol = PSD_TOL_FACTOR * max(1.0, float(np.max(np.abs(values))))
    if values[-1] < -tol:
        raise NotPsdError(
            f"matrix is not positive semidefinite: min eigenvalue {values[-1]:.6g}"
        )
    clamped = np.where(values < 0.0, 0.0, values)
    root = (decomp.vectors * np.sqrt(clamped)) @ decomp.vectors.T
    return SymMatrix(root)
