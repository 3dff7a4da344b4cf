"""Circulant embedding bounds for symmetric Toeplitz matrices.

A d x d symmetric Toeplitz matrix with first row t_0..t_{d-1} embeds in a
2d x 2d circulant whose eigenvalues are the cosine sums
t_0 + 2 * sum_j t_j cos(pi j k / d) on the uniform frequency grid
k = 0..2d-1.  The largest |value| on that grid therefore upper-bounds the
Toeplitz spectral norm.  Applied to an error vector e = a - a_hat from a
path-graph estimate, the same evaluation certifies the spectral error
without forming any matrix; that is ``le_certificate``.

``kappa`` combines the ruler's coverage deficiency with the spectral norms
of the covariance and its ruler-indexed submatrix into the quantity that
drives the predicted vector sample count.
"""

import math

import numpy as np

from spcov import kernels, linalg
from spcov.errors import SpcovError
from spcov.linalg import SymMatrix
from spcov.model import SPCovInstance
from spcov.rulers import Ruler, coverage_deficiency, pair_classes


def embed(tv) -> np.ndarray:
    """First row of the 2d circulant containing Toeplitz(t).

    Layout is (t_0, t_1, ..., t_{d-1}, 0, t_{d-1}, ..., t_1); the zero sits
    at position d and the tail mirrors the head.
    """
    t = np.asarray(tv, dtype=np.float64)
    if t.ndim != 1 or t.shape[0] < 1:
        raise SpcovError("Toeplitz first row must be a nonempty 1-d array")
    d = t.shape[0]
    c = np.zeros(2 * d, dtype=np.float64)
    c[:d] = t
    c[d + 1:] = t[:0:-1]
    return c


def circulant_spectral_bound(tv) -> float:
    """Upper bound on the spectral norm of Toeplitz(t).

    Maximum of |t_0 + 2 * sum_j t_j cos(pi j k / d)| over the 2d-point
    frequency grid.  These are exactly the circulant embedding's
    eigenvalue magnitudes, so the bound also equals the circulant's
    spectral norm.  The absolute value makes the bound valid for
    indefinite matrices too.
    """
    t = np.ascontiguousarray(tv, dtype=np.float64)
    if t.ndim != 1 or t.shape[0] < 1:
        raise SpcovError("Toeplitz first row must be a nonempty 1-d array")
    return float(kernels.cosine_grid_max(t))


def le_certificate(e) -> float:
    """Certified upper bound on ||Toeplitz(e)||_2 for an error vector e.

    Same grid evaluation as circulant_spectral_bound; the name reflects its
    use on e = a - a_hat after a path-graph estimation run, where it
    certifies the spectral estimation error from d numbers alone.
    """
    return circulant_spectral_bound(e)


def kappa(inst: SPCovInstance, r: Ruler, eps: float) -> float:
    """min(1, eps^2 ||Sigma||^2 / (Delta(R) ||Sigma_R||^2)).

    Sigma_R is the principal submatrix at the ruler marks (the instance
    must live on a path, where positions are node indices) and Delta is the
    coverage deficiency under the unordered-pair convention, so values are
    comparable across runs of this package but not to conventions counting
    ordered pairs.
    """
    if eps <= 0.0:
        raise SpcovError("kappa requires eps > 0")
    if inst.graph.kind != "path":
        raise SpcovError("kappa requires a path-graph instance")
    if r.D != inst.distances.diameter:
        raise SpcovError("ruler span does not match instance diameter")
    marks = list(r.marks)
    sigma_norm = linalg.spectral_norm(inst.sigma)
    sub = SymMatrix(inst.sigma.data[np.ix_(marks, marks)])
    sub_norm = linalg.spectral_norm(sub)
    if sub_norm == 0.0:
        raise SpcovError("kappa is undefined for a zero ruler submatrix")
    delta = coverage_deficiency(pair_classes(r))
    return min(1.0, (eps * sigma_norm) ** 2 / (delta * sub_norm ** 2))


def predicted_vsc(kappa_value: float, d: int, delta: float, c: float) -> float:
    """log(d / delta) / (c * kappa): the predicted vector sample count.

    c is an unspecified universal constant supplied by the caller, so this
    is a scaling diagnostic rather than a guarantee.
    """
    if kappa_value <= 0.0:
        raise SpcovError("predicted_vsc requires kappa > 0")
    if d < 1:
        raise SpcovError("predicted_vsc requires d >= 1")
    if not 0.0 < delta < 1.0:
        raise SpcovError("predicted_vsc requires failure probability in (0, 1)")
    if c <= 0.0:
        raise SpcovError("predicted_vsc requires c > 0")
    return math.log(d / delta) / (c * kappa_value)
