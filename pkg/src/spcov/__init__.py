"""Covariance estimation for shortest-path structured Gaussian models.

A covariance matrix is shortest-path structured when Sigma[i, j] depends
only on the graph distance between nodes i and j.  Such matrices are
determined by one value per distance, so a handful of entries per sample
(the nodes of a graph sparse ruler) suffices to estimate all of Sigma.
This package builds the rulers, places them on graphs, draws seeded
Gaussian samples, runs the masked estimator, and bounds the resulting
error through circulant embeddings.
"""

from spcov.bench import (LowerBoundReport, SweepConfig, SweepRow, gaussian_kl,
                         lower_bound_report, pinsker_nfold_tv, run_sweep,
                         spiked_kl, spiked_pair)
from spcov.errors import (NotConnectedError, NotPsdError, NotRulerError,
                          SpcovError)
from spcov.estimator import (ErrorMetrics, EstimateReport, EstimatorConfig,
                             empirical_covariance, error_metrics, estimate,
                             graph_pair_classes)
from spcov.graphs import (DiameterPath, DistanceTable, Graph, GraphRuler,
                          all_pairs_shortest_paths, diameter_path,
                          graph_sparse_ruler, make_graph)
from spcov.kernels import BACKEND as KERNEL_BACKEND
from spcov.linalg import (EigenDecomp, SymMatrix, eigh, frobenius_norm,
                          min_eigenvalue, psd_sqrt, spectral_norm, trace)
from spcov.model import (PsdCheck, SPCovInstance, StarBlocks, graph_cov,
                         make_psd_instance, stable_rank, star_assemble,
                         star_blocks, validate_psd)
from spcov.rulers import (Ruler, coverage_deficiency, is_ruler, pair_classes,
                          sqrt_ruler)
from spcov.sampling import (GaussianSampler, MaskedSample, SeededRng,
                            gaussian_sampler, standard_normal)
from spcov.toeplitz import (circulant_spectral_bound, embed, kappa,
                            le_certificate, predicted_vsc)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "SpcovError", "NotConnectedError", "NotPsdError", "NotRulerError",
    "Ruler", "sqrt_ruler", "is_ruler", "pair_classes", "coverage_deficiency",
    "Graph", "DistanceTable", "DiameterPath", "GraphRuler", "make_graph",
    "all_pairs_shortest_paths", "diameter_path", "graph_sparse_ruler",
    "SymMatrix", "EigenDecomp", "eigh", "spectral_norm", "frobenius_norm",
    "min_eigenvalue", "trace", "psd_sqrt",
    "SPCovInstance", "PsdCheck", "StarBlocks", "graph_cov", "validate_psd",
    "make_psd_instance", "stable_rank", "star_blocks", "star_assemble",
    "SeededRng", "MaskedSample", "GaussianSampler", "gaussian_sampler",
    "standard_normal",
    "EstimatorConfig", "EstimateReport", "ErrorMetrics", "estimate",
    "graph_pair_classes", "empirical_covariance", "error_metrics",
    "embed", "circulant_spectral_bound", "le_certificate", "kappa",
    "predicted_vsc",
    "SweepConfig", "SweepRow", "run_sweep", "gaussian_kl", "spiked_kl",
    "pinsker_nfold_tv", "LowerBoundReport", "lower_bound_report",
    "spiked_pair",
    "__version__",
]
