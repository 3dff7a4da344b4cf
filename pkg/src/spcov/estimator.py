"""Covariance estimation from entry-masked samples.

Given samples restricted to graph-ruler nodes, each distance s gets an
unbiased estimate a_hat[s] from products x_i * x_j over node pairs at
distance s.  ``single_pair`` mode uses one fixed pair per distance;
``averaged`` mode averages over every pair in the class, which can only
lower the variance.  The estimated matrix is assembled entrywise from
a_hat with no PSD projection, so it may be indefinite.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from spcov import kernels, linalg
from spcov.errors import NotRulerError, SpcovError
from spcov.graphs import DistanceTable, GraphRuler
from spcov.linalg import SymMatrix

MODES = ("single_pair", "averaged")


@dataclass(frozen=True)
class EstimatorConfig:
    """Estimation run parameters; seeds ride along for provenance."""

    n: int
    mode: str = "single_pair"
    seed: int = 0
    stream: int = 0

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise SpcovError(f"mode must be one of {MODES}")
        if self.n < 1:
            raise SpcovError("sample count n must be >= 1")


@dataclass(frozen=True)
class ErrorMetrics:
    spectral_rel: float
    frob_rel: float
    max_entry: float


@dataclass(frozen=True)
class EstimateReport:
    """Estimate plus its two sample-complexity counters.

    esc is the number of entries read per sample (the graph-ruler size);
    vsc is the number of vector samples.  Error fields are populated only
    when the true covariance was supplied.
    """

    a_hat: np.ndarray
    sigma_hat: SymMatrix
    esc: int
    vsc: int
    spectral_rel_err: Optional[float] = None
    frob_rel_err: Optional[float] = None
    max_entry_err: Optional[float] = None


def graph_pair_classes(gr: GraphRuler, t: DistanceTable) -> tuple:
    """Ruler-node pairs grouped by graph distance.

    Element s lists the unordered pairs (u, w), u <= w, with
    dist(u, w) = s; distance 0 is the diagonal singletons.  Every class
    must be nonempty, otherwise the ruler does not cover some distance.
    """
    nodes = sorted(gr.nodes)
    classes = [[] for _ in range(gr.diameter + 1)]
    for i, u in enumerate(nodes):
        classes[0].append((u, u))
        for w in nodes[i + 1:]:
            classes[int(t.dist[u, w])].append((u, w))
    for s, cls in enumerate(classes):
        if not cls:
            raise NotRulerError(f"ruler coverage violated: no pair at distance {s}")
        cls.sort()
    return tuple(tuple(cls) for cls in classes)


def estimate(samples, gr: GraphRuler, t: DistanceTable,
             cfg: EstimatorConfig, sigma_true: Optional[SymMatrix] = None) -> EstimateReport:
    """Estimate a_hat and Sigma_hat from masked samples.

    Every sample must be masked to exactly the ruler nodes, and cfg.n must
    equal the number of samples.  Deterministic: identical inputs give an
    identical report.  Supplying sigma_true adds error metrics.
    """
    n = len(samples)
    if n == 0:
        raise SpcovError("estimate requires at least one sample")
    if cfg.n != n:
        raise SpcovError(f"config declares n={cfg.n} but {n} samples were given")
    mask = tuple(sorted(gr.nodes))
    for sample in samples:
        if sample.indices != mask:
            raise SpcovError("sample index set does not match the ruler nodes")

    classes = graph_pair_classes(gr, t)
    if cfg.mode == "single_pair":
        classes = tuple((cls[0],) for cls in classes)

    column = {node: pos for pos, node in enumerate(mask)}
    ii, jj, offsets = [], [], [0]
    for cls in classes:
        for u, w in cls:
            ii.append(column[u])
            jj.append(column[w])
        offsets.append(len(ii))

    values = np.ascontiguousarray(
        np.stack([sample.values for sample in samples]), dtype=np.float64
    )
    a_hat = kernels.pair_product_means(
        values,
        np.asarray(ii, dtype=np.int64),
        np.asarray(jj, dtype=np.int64),
        np.asarray(offsets, dtype=np.int64),
    )
    sigma_hat = SymMatrix(a_hat[t.dist])

    report = EstimateReport(a_hat=a_hat, sigma_hat=sigma_hat,
                            esc=len(mask), vsc=n)
    if sigma_true is not None:
        metrics = error_metrics(sigma_true, sigma_hat)
        report = EstimateReport(
            a_hat=a_hat, sigma_hat=sigma_hat, esc=len(mask), vsc=n,
            spectral_rel_err=metrics.spectral_rel,
            frob_rel_err=metrics.frob_rel,
            max_entry_err=metrics.max_entry,
        )
    return report


def empirical_covariance(samples, n: Optional[int] = None) -> SymMatrix:
    """Plain full-entry baseline (1/n) * sum of x xT."""
    xs = np.asarray(samples, dtype=np.float64)
    if xs.ndim == 1:
        xs = xs[None, :]
    if xs.ndim != 2 or xs.shape[0] == 0:
        raise SpcovError("empirical_covariance requires at least one full vector")
    if n is None:
        n = xs.shape[0]
    if n < 1 or n != xs.shape[0]:
        raise SpcovError(f"sample count mismatch: n={n}, samples={xs.shape[0]}")
    return SymMatrix(xs.T @ xs / n)


def error_metrics(sigma: SymMatrix, sigma_hat: SymMatrix) -> ErrorMetrics:
    """Spectral and Frobenius errors relative to the truth, plus the
    largest entrywise deviation."""
    if sigma.dim != sigma_hat.dim:
        raise SpcovError("error_metrics requires matching dimensions")
    spectral_true = linalg.spectral_norm(sigma)
    if spectral_true == 0.0:
        raise SpcovError("error_metrics requires a nonzero true covariance")
    diff = SymMatrix(sigma.data - sigma_hat.data)
    return ErrorMetrics(
        spectral_rel=linalg.spectral_norm(diff) / spectral_true,
        frob_rel=linalg.frobenius_norm(diff) / linalg.frobenius_norm(sigma),
        max_entry=float(np.max(np.abs(diff.data))),
    )
