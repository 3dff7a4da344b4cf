"""Experiment harness and distinguishability diagnostics.

``run_sweep`` measures estimation error across sample counts and trials
with one RNG stream per trial, so rows are reproducible from (config, seed)
alone and trials could run in any order.  The KL helpers quantify how many
samples separate N(0, I) from the rank-one spiked alternative
N(0, I + (eps/d) J); ``lower_bound_report`` packages them into the smallest
sample count at which the two become distinguishable.
"""

import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from spcov import linalg
from spcov.errors import SpcovError
from spcov.estimator import EstimatorConfig, estimate
from spcov.graphs import graph_sparse_ruler
from spcov.linalg import SymMatrix
from spcov.model import SPCovInstance
from spcov.rulers import sqrt_ruler
from spcov.sampling import GaussianSampler, SeededRng


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: a PSD instance, ascending sample counts, repeated trials."""

    instance: SPCovInstance
    n_list: tuple
    trials: int
    seed: int = 0
    mode: str = "single_pair"
    timing: bool = False  # wall_ms stays 0.0 unless explicitly requested

    def __post_init__(self) -> None:
        n_list = tuple(int(n) for n in self.n_list)
        if len(n_list) == 0:
            raise SpcovError("n_list must be nonempty")
        if any(n < 1 for n in n_list):
            raise SpcovError("sample counts must be >= 1")
        if any(b <= a for a, b in zip(n_list, n_list[1:])):
            raise SpcovError("n_list must be strictly ascending")
        if self.trials < 1:
            raise SpcovError("trials must be >= 1")
        object.__setattr__(self, "n_list", n_list)


@dataclass(frozen=True)
class SweepRow:
    n: int
    trial: int
    spectral_rel: float
    frob_rel: float
    max_entry: float
    wall_ms: float


def run_sweep(cfg: SweepConfig):
    """All (n, trial) estimation runs for the sweep.

    Trial t draws from RNG stream t and consumes it across the ascending
    n_list, so adding trials never perturbs existing ones.  Returns rows
    sorted by (n, trial) plus per-n quartile aggregates of spectral_rel.

    Timing is off by default to keep sweep output a pure function of
    (config, seed); with cfg.timing the wall_ms column carries real
    measurements and byte-reproducibility is forfeited.
    """
    inst = cfg.instance
    table = inst.distances
    ruler = sqrt_ruler(table.diameter)
    gr = graph_sparse_ruler(inst.graph, table, ruler)
    mask = tuple(sorted(gr.nodes))
    sampler = GaussianSampler(inst)

    rows = []
    for trial in range(cfg.trials):
        rng = SeededRng(cfg.seed, stream=trial)
        for n in cfg.n_list:
            started = time.perf_counter()
            samples = sampler.draw_masked_batch(rng, n, mask)
            est_cfg = EstimatorConfig(n=n, mode=cfg.mode, seed=cfg.seed,
                                      stream=trial)
            report = estimate(samples, gr, table, est_cfg,
                              sigma_true=inst.sigma)
            wall_ms = (time.perf_counter() - started) * 1e3 if cfg.timing else 0.0
            rows.append(SweepRow(n=n, trial=trial,
                                 spectral_rel=report.spectral_rel_err,
                                 frob_rel=report.frob_rel_err,
                                 max_entry=report.max_entry_err,
                                 wall_ms=wall_ms))
    rows.sort(key=lambda row: (row.n, row.trial))

    aggregates = []
    for n in cfg.n_list:
        errs = np.array([row.spectral_rel for row in rows if row.n == n])
        q25, q50, q75 = np.percentile(errs, [25.0, 50.0, 75.0])
        aggregates.append({"n": n, "q25": float(q25), "median": float(q50),
                           "q75": float(q75)})
    return rows, aggregates


def gaussian_kl(sigma1: SymMatrix, sigma2: SymMatrix) -> float:
    """KL divergence between N(0, Sigma1) and N(0, Sigma2).

    0.5 * [Tr(Sigma2^{-1} Sigma1) - d - log det Sigma1 + log det Sigma2],
    evaluated through eigendecompositions so log-determinants stay finite
    for d in the hundreds.  Sigma2 must be strictly positive definite;
    Sigma1 must be PSD (a singular Sigma1 gives infinity).  Tiny negative
    results from roundoff are clamped to zero.
    """
    if sigma1.dim != sigma2.dim:
        raise SpcovError("gaussian_kl requires matching dimensions")
    d = sigma1.dim
    decomp2 = linalg.eigh(sigma2)
    top2 = float(np.max(np.abs(decomp2.values)))
    if float(decomp2.values[-1]) <= 1e-12 * top2:
        raise SpcovError("gaussian_kl requires a strictly positive definite sigma2")
    decomp1 = linalg.eigh(sigma1)
    tol1 = 1e-8 * max(1.0, float(np.max(np.abs(decomp1.values))))
    if float(decomp1.values[-1]) < -tol1:
        raise SpcovError("gaussian_kl requires a positive semidefinite sigma1")
    lam1 = np.clip(decomp1.values, 0.0, None)
    if np.any(lam1 == 0.0):
        return math.inf
    rotated = decomp2.vectors.T @ sigma1.data @ decomp2.vectors
    trace_term = float(np.sum(np.diagonal(rotated) / decomp2.values))
    logdet1 = float(np.sum(np.log(lam1)))
    logdet2 = float(np.sum(np.log(decomp2.values)))
    kl = 0.5 * (trace_term - d - logdet1 + logdet2)
    if kl < -1e-9:
        raise SpcovError(f"gaussian_kl produced {kl:.3e}, below roundoff tolerance")
    return max(kl, 0.0)


def spiked_kl(s: int, beta: float) -> float:
    """KL divergence of N(0, I) from N(0, I + beta*J) restricted to an
    s-dimensional support.

    Closed form 0.5 * [log(1 + beta*s) - beta*s / (1 + beta*s)]; always at
    most (beta*s)^2.
    """
    if s < 1:
        raise SpcovError("spiked_kl requires s >= 1")
    if beta < 0.0:
        raise SpcovError("spiked_kl requires beta >= 0")
    x = beta * s
    return 0.5 * (math.log1p(x) - x / (1.0 + x))


def pinsker_nfold_tv(kl_single: float, n: int) -> float:
    """Total variation upper bound min(1, sqrt(n * kl / 2)) for n
    independent observations."""
    if kl_single < 0.0:
        raise SpcovError("pinsker_nfold_tv requires kl >= 0")
    if n < 1:
        raise SpcovError("pinsker_nfold_tv requires n >= 1")
    return min(1.0, math.sqrt(n * kl_single / 2.0))


@dataclass(frozen=True)
class LowerBoundReport:
    """Distinguishability diagnostics for the spiked identity pair.

    n_star is the smallest sample count at which the total variation upper
    bound reaches 2/3 (None when the two distributions coincide);
    spectral_gap is ||Sigma1 - Sigma2||_2 = eps exactly, since the
    difference has rank one.
    """

    kl: float
    tv_upper: float
    distinguishable: bool
    n_star: Optional[int]
    spectral_gap: float


def lower_bound_report(d: int, s: int, eps: float, n: int) -> LowerBoundReport:
    """Evaluate the spiked-pair diagnostics at (d, s, eps, n).

    s is the support size of the spike, 1 <= s <= d; eps >= 0 scales the
    rank-one perturbation (eps/d) * J.
    """
    if d < 1:
        raise SpcovError("lower_bound_report requires d >= 1")
    if not 1 <= s <= d:
        raise SpcovError("lower_bound_report requires 1 <= s <= d")
    if eps < 0.0:
        raise SpcovError("lower_bound_report requires eps >= 0")
    kl = spiked_kl(s, eps / d)
    tv_upper = pinsker_nfold_tv(kl, n)
    if kl == 0.0:
        n_star = None
    else:
        # tv reaches 2/3 when n * kl / 2 >= 4/9
        n_star = max(1, math.ceil(8.0 / (9.0 * kl)))
        while pinsker_nfold_tv(kl, n_star) < 2.0 / 3.0:
            n_star += 1
        while n_star > 1 and pinsker_nfold_tv(kl, n_star - 1) >= 2.0 / 3.0:
            n_star -= 1
    return LowerBoundReport(kl=kl, tv_upper=tv_upper,
                            distinguishable=tv_upper >= 2.0 / 3.0,
                            n_star=n_star, spectral_gap=float(eps))


def spiked_pair(d: int, eps: float):
    """Materialize (Sigma1, Sigma2) = (I, I + (eps/d) J) with J the all-ones
    matrix; the difference has rank one and spectral norm exactly eps."""
    if d < 1:
        raise SpcovError("spiked_pair requires d >= 1")
    if eps < 0.0:
        raise SpcovError("spiked_pair requires eps >= 0")
    sigma1 = np.eye(d)
    sigma2 = np.eye(d) + (eps / d) * np.ones((d, d))
    return SymMatrix(sigma1), SymMatrix(sigma2)
