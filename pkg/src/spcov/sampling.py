"""Seeded Gaussian sampling and entry-masked samples.

Sampling goes through the symmetric PSD square root (x = root @ z) rather
than Cholesky so rank-deficient covariances produced by shrinkage still
sample cleanly.  Standard normal variates come from numpy's PCG64 generator
keyed by a (seed, stream) pair: identical pairs replay identical sequences
within one build, distinct streams are statistically independent.

A MaskedSample stores entries only at its index set; estimators that accept
MaskedSample are physically unable to read anything else, which is exactly
the per-sample entry budget being measured.
"""

import numpy as np

from spcov import linalg
from spcov.errors import SpcovError
from spcov.model import SPCovInstance


class SeededRng:
    """One reproducible random stream per (seed, stream) pair.

    z values are always consumed in ascending index order, so a masked draw
    and a full draw from equal states see the same underlying vector.
    """

    __slots__ = ("seed", "stream", "_gen")

    def __init__(self, seed: int, stream: int = 0) -> None:
        seed = int(seed)
        stream = int(stream)
        if seed < 0 or stream < 0:
            raise SpcovError("seed and stream must be nonnegative integers")
        self.seed = seed
        self.stream = stream
        self._gen = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence((seed, stream)))
        )

    def normal(self, size=None):
        return self._gen.standard_normal(size)


def standard_normal(rng: SeededRng) -> float:
    """One standard normal variate from the stream."""
    return float(rng.normal())


class MaskedSample:
    """Entries of one sample at a fixed node subset.

    Only ``len(indices)`` values exist; there is no accessor for anything
    outside the mask.
    """

    __slots__ = ("_indices", "_values")

    def __init__(self, indices, values) -> None:
        idx = tuple(int(i) for i in indices)
        vals = np.asarray(values, dtype=np.float64)
        if vals.ndim != 1 or len(idx) != vals.shape[0]:
            raise SpcovError("masked sample needs one value per index")
        if len(idx) == 0:
            raise SpcovError("masked sample needs at least one index")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise SpcovError("mask indices must be strictly increasing")
        vals = vals.copy()
        vals.setflags(write=False)
        self._indices = idx
        self._values = vals

    @property
    def indices(self) -> tuple:
        return self._indices

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self) -> int:
        return len(self._indices)


def _check_mask(mask, dim: int) -> tuple:
    idx = tuple(int(i) for i in mask)
    if len(idx) == 0:
        raise SpcovError("mask must contain at least one index")
    if any(i < 0 or i >= dim for i in idx):
        raise SpcovError(f"mask indices must lie in [0, {dim})")
    if len(set(idx)) != len(idx):
        raise SpcovError("mask indices must be distinct")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise SpcovError("mask indices must be sorted ascending")
    return idx


class GaussianSampler:
    """Draws from N(0, Sigma) for one PSD instance.

    Holds the precomputed symmetric square root; immutable, so one sampler
    may serve many trials as long as each trial brings its own SeededRng.
    """

    __slots__ = ("dim", "_root")

    def __init__(self, inst: SPCovInstance) -> None:
        root = linalg.psd_sqrt(inst.sigma)  # rejects non-PSD input
        self.dim = root.dim
        self._root = root.data

    def draw(self, rng: SeededRng) -> np.ndarray:
        """One full sample x = root @ z."""
        z = rng.normal(self.dim)
        return self._root @ z

    def draw_batch(self, rng: SeededRng, count: int) -> np.ndarray:
        """``count`` samples as rows, consuming the stream exactly like
        ``count`` sequential draws."""
        if count < 1:
            raise SpcovError("draw_batch requires count >= 1")
        z = rng.normal((count, self.dim))
        return z @ self._root.T

    def draw_masked(self, rng: SeededRng, mask) -> MaskedSample:
        """Full draw internally, then projection onto the mask.

        The mask never changes the underlying sample: the same rng state
        yields the same x whether or not a mask is applied.
        """
        idx = _check_mask(mask, self.dim)
        x = self.draw(rng)
        return MaskedSample(idx, x[list(idx)])

    def draw_masked_batch(self, rng: SeededRng, count: int, mask) -> list:
        idx = _check_mask(mask, self.dim)
        xs = self.draw_batch(rng, count)
        cols = list(idx)
        return [MaskedSample(idx, row[cols]) for row in xs]


def gaussian_sampler(inst: SPCovInstance) -> GaussianSampler:
    return GaussianSampler(inst)
