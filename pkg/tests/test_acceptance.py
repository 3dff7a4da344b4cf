"""Acceptance gate: fifteen end-to-end criteria with frozen tolerances.

Each criterion prints one ``acceptance NN PASS/FAIL`` line.  Run under
pytest (collected in order) or directly::

    python tests/test_acceptance.py

Monte-Carlo thresholds were calibrated with independent oracles
(numpy.linalg, brute-force enumeration) before being frozen here.
"""

import contextlib
import functools
import io
import json
import math
import os
import tempfile
import time

import numpy as np

from conftest import circulant_matrix, path_instance, toeplitz_matrix
from spcov import cli
from spcov.bench import (SweepConfig, gaussian_kl, lower_bound_report,
                         run_sweep, spiked_kl, spiked_pair)
from spcov.estimator import EstimatorConfig, estimate
from spcov.graphs import (all_pairs_shortest_paths, diameter_path,
                          graph_sparse_ruler, make_graph)
from spcov.linalg import SymMatrix, spectral_norm
from spcov.model import make_psd_instance, stable_rank, star_assemble, star_blocks
from spcov.rulers import Ruler, is_ruler, sqrt_ruler
from spcov.sampling import GaussianSampler, MaskedSample, SeededRng
from spcov.toeplitz import circulant_spectral_bound, le_certificate

CRITERIA = []


def criterion(num, name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper():
            try:
                fn()
            except BaseException:
                print(f"acceptance {num:02d} FAIL  {name}", flush=True)
                raise
            print(f"acceptance {num:02d} PASS  {name}", flush=True)

        CRITERIA.append(wrapper)
        return wrapper

    return decorate


def ruler_setup(inst):
    table = inst.distances
    gr = graph_sparse_ruler(inst.graph, table, sqrt_ruler(table.diameter))
    return gr, table, tuple(sorted(gr.nodes))


def run_cli(*argv):
    """Invoke the CLI in-process, returning (exit code, stdout text)."""
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        code = cli.main(list(argv))
    return code, buffer.getvalue()


@criterion(1, "square-root ruler covers every span up to 1000")
def test_01_ruler_construction():
    start = time.perf_counter()
    for span in range(1001):
        r = sqrt_ruler(span)
        assert is_ruler(r.marks, span)
        assert len(r.marks) <= max(1, 2 * math.ceil(math.sqrt(span)))
    assert time.perf_counter() - start < 1.0


@criterion(2, "graph ruler coverage and entry budget on five families")
def test_02_graph_ruler_coverage():
    graphs = [
        make_graph("path", d=101),
        make_graph("cycle", d=100),
        make_graph("star", branches=4, depth=25),
        make_graph("grid", rows=10, cols=10),
        make_graph("complete", d=50),
    ]
    for g in graphs:
        table = all_pairs_shortest_paths(g)
        d_max = table.diameter
        gr = graph_sparse_ruler(g, table, sqrt_ruler(d_max))
        seen = {table.dist[u, w] for u in gr.nodes for w in gr.nodes}
        assert seen == set(range(d_max + 1))
        assert gr.size <= 2 * math.ceil(math.sqrt(d_max))


@criterion(3, "published four-mark ruler and its path placement")
def test_03_known_ruler_placement():
    marks = (0, 1, 4, 6)
    assert is_ruler(marks, 6)
    g = make_graph("path", d=7)
    table = all_pairs_shortest_paths(g)
    gr = graph_sparse_ruler(g, table, Ruler(6, marks))
    assert gr.nodes == marks
    seen = {table.dist[u, w] for u in gr.nodes for w in gr.nodes}
    assert seen == set(range(7))


@criterion(4, "estimator is unbiased per distance (5 SE)")
def test_04_unbiasedness():
    start = time.perf_counter()
    inst = path_instance(16, 0.8)
    gr, table, mask = ruler_setup(inst)
    sampler = GaussianSampler(inst)
    runs, n = 200, 50
    a_hats = []
    for run in range(runs):
        samples = sampler.draw_masked_batch(SeededRng(0, run), n, mask)
        a_hats.append(estimate(samples, gr, table, EstimatorConfig(n=n)).a_hat)
    mean_hat = np.mean(np.array(a_hats), axis=0)
    sig = inst.sigma.data
    from spcov.estimator import graph_pair_classes

    for s, cls in enumerate(graph_pair_classes(gr, table)):
        i, j = cls[0]
        se = math.sqrt((sig[i, i] * sig[j, j] + sig[i, j] ** 2) / (runs * n))
        assert abs(mean_hat[s] - inst.a[s]) <= 5.0 * se
    assert time.perf_counter() - start < 30.0


@criterion(5, "error shrinks at the root-n rate across a 16x sample jump")
def test_05_root_n_convergence():
    start = time.perf_counter()
    inst = path_instance(32, 0.8)
    cfg = SweepConfig(instance=inst, n_list=(2000, 32000), trials=30, seed=0)
    _, aggregates = run_sweep(cfg)
    ratio = aggregates[0]["median"] / aggregates[1]["median"]
    assert 2.5 <= ratio <= 6.5
    assert time.perf_counter() - start < 120.0


@criterion(6, "lower effective rank gives lower median error")
def test_06_rank_dependence():
    clique = make_psd_instance(make_graph("complete", d=64), [1.0, 0.5])
    path = path_instance(64, 0.9)
    assert 1.9 <= stable_rank(clique) <= 2.05
    assert stable_rank(path) > stable_rank(clique)
    medians = {}
    for label, inst in (("clique", clique), ("path", path)):
        cfg = SweepConfig(instance=inst, n_list=(5000,), trials=20, seed=0)
        medians[label] = run_sweep(cfg)[1][0]["median"]
    assert medians["clique"] < medians["path"]


@criterion(7, "desk-scale estimate meets the frozen error budget")
def test_07_end_to_end_cli():
    with tempfile.TemporaryDirectory() as tmp:
        inst_path = os.path.join(tmp, "instance.json")
        report_path = os.path.join(tmp, "report.json")
        code, _ = run_cli("make-instance", "--graph", "path", "--d", "32",
                          "--decay", "0.8", "--out", inst_path)
        assert code == 0
        code, _ = run_cli("estimate", "--instance", inst_path, "--n", "20000",
                          "--seed", "7", "--out", report_path)
        assert code == 0
        with open(report_path, encoding="utf-8") as handle:
            report = json.load(handle)
    assert report["spectral_rel_err"] <= 0.35


@criterion(8, "circulant bound is sound and matches the dense embedding")
def test_08_circulant_bound():
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(8)))
    for _ in range(500):
        d = int(rng.integers(1, 65))
        t = rng.normal(size=d)
        bound = circulant_spectral_bound(t)
        dense_norm = float(np.abs(np.linalg.eigvalsh(toeplitz_matrix(t))).max())
        assert bound >= dense_norm - 1e-9
        c = np.concatenate([t, [0.0], t[:0:-1]])
        circ_norm = float(np.abs(np.linalg.eigvalsh(circulant_matrix(c))).max())
        assert abs(bound - circ_norm) <= 1e-8


@criterion(9, "frequency-grid certificate dominates the error norm")
def test_09_le_certificate():
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(9)))
    for _ in range(500):
        d = int(rng.integers(1, 65))
        e = rng.normal(size=d) * float(rng.choice([0.01, 1.0, 100.0]))
        cert = le_certificate(e)
        err_norm = float(np.abs(np.linalg.eigvalsh(toeplitz_matrix(e))).max())
        assert cert >= err_norm - 1e-9 * max(1.0, err_norm)

    inst = path_instance(32, 0.8)
    gr, table, mask = ruler_setup(inst)
    samples = GaussianSampler(inst).draw_masked_batch(SeededRng(0), 2000, mask)
    report = estimate(samples, gr, table, EstimatorConfig(n=2000))
    residual = np.asarray(inst.a) - report.a_hat
    measured = spectral_norm(SymMatrix(inst.sigma.data - report.sigma_hat.data))
    assert le_certificate(residual) >= measured - 1e-9 * max(1.0, measured)


@criterion(10, "spiked-pair divergence formulas agree with the dense oracle")
def test_10_kl_formulas():
    for s in (1, 5, 20):
        for beta in (0.001, 0.01, 0.1):
            s1 = SymMatrix(np.eye(s))
            s2 = SymMatrix(np.eye(s) + beta * np.ones((s, s)))
            assert abs(gaussian_kl(s1, s2) - spiked_kl(s, beta)) <= 1e-9
            assert spiked_kl(s, beta) <= (beta * s) ** 2
    for d in (2, 10, 100):
        s1, s2 = spiked_pair(d, 0.3)
        gap = spectral_norm(SymMatrix(s2.data - s1.data))
        assert abs(gap - 0.3) <= 1e-10


@criterion(11, "required sample count scales like dimension squared")
def test_11_lower_bound_scaling():
    for d, s, eps in [(100, 10, 0.3), (64, 4, 0.5), (200, 1, 1.0)]:
        small = lower_bound_report(d, s, eps, 1).n_star
        large = lower_bound_report(4 * d, s, eps, 1).n_star
        assert 14.0 <= large / small <= 18.0


@criterion(12, "star covariance assembles exactly from its four blocks")
def test_12_star_assembly():
    for branches in (2, 3, 5):
        for depth in (1, 4, 10):
            g = make_graph("star", branches=branches, depth=depth)
            table = all_pairs_shortest_paths(g)
            from spcov.model import graph_cov

            a = [2.0 ** -s for s in range(2 * depth + 1)]
            inst = graph_cov(g, table, a)
            blocks = star_blocks(inst)
            rebuilt = star_assemble(blocks, branches)
            np.testing.assert_array_equal(rebuilt.data, inst.sigma.data)
            s1 = blocks.sigma1.data
            np.testing.assert_array_equal(blocks.sigma2, s1[:depth, :depth])
            np.testing.assert_array_equal(blocks.sigma4, s1[depth, depth + 1:])
            for p in range(depth):
                for q in range(depth):
                    assert blocks.sigma3[p, q] == s1[depth - 1 - p, depth + 1 + q]


class CountingSample(MaskedSample):
    """Masked sample whose value reads are tallied."""

    __slots__ = ()
    reads = []

    @property
    def values(self):
        vals = MaskedSample.values.fget(self)
        CountingSample.reads.append(vals.shape[0])
        return vals


@criterion(13, "estimation reads exactly the budgeted entries per sample")
def test_13_entry_budget():
    inst = path_instance(12, 0.7)
    gr, table, mask = ruler_setup(inst)
    sampler = GaussianSampler(inst)
    n = 40

    masked = sampler.draw_masked_batch(SeededRng(5), n, mask)
    counted = [CountingSample(s.indices, s.values) for s in masked]
    CountingSample.reads.clear()
    report_masked = estimate(counted, gr, table, EstimatorConfig(n=n),
                             sigma_true=inst.sigma)
    assert len(CountingSample.reads) >= n
    assert all(width == gr.size for width in CountingSample.reads)
    for sample in counted:
        assert len(sample) == gr.size

    full = sampler.draw_batch(SeededRng(5), n)
    projected = [MaskedSample(mask, row[list(mask)]) for row in full]
    report_full = estimate(projected, gr, table, EstimatorConfig(n=n),
                           sigma_true=inst.sigma)
    np.testing.assert_array_equal(report_masked.a_hat, report_full.a_hat)
    np.testing.assert_array_equal(report_masked.sigma_hat.data,
                                  report_full.sigma_hat.data)
    assert report_masked.spectral_rel_err == report_full.spectral_rel_err
    assert report_masked.frob_rel_err == report_full.frob_rel_err
    assert report_masked.max_entry_err == report_full.max_entry_err


@criterion(14, "fourth-moment identity holds to Monte-Carlo precision")
def test_14_moment_oracle():
    inst = path_instance(8, 0.6)
    xs = GaussianSampler(inst).draw_batch(SeededRng(11), 500_000)
    sig = inst.sigma.data
    pair_rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(5)))
    pairs = {tuple(sorted(map(int, pair_rng.integers(0, 8, size=2))))
             for _ in range(40)}
    for i, j in sorted(pairs)[:10]:
        prod_sq = (xs[:, i] * xs[:, j]) ** 2
        truth = sig[i, i] * sig[j, j] + 2.0 * sig[i, j] ** 2
        se = prod_sq.std(ddof=1) / math.sqrt(prod_sq.shape[0])
        assert abs(prod_sq.mean() - truth) <= 5.0 * se


@criterion(15, "every command is byte-reproducible at fixed seed")
def test_15_cli_determinism():
    with tempfile.TemporaryDirectory() as tmp:
        afile = os.path.join(tmp, "a.json")
        with open(afile, "w", encoding="utf-8") as handle:
            handle.write("[1.0, 0.5, 0.25]")
        inst = os.path.join(tmp, "instance.json")

        def out(name):
            return os.path.join(tmp, name)

        commands = [
            (["ruler", "--D", "24"], []),
            (["graph-ruler", "--graph", "star", "--branches", "4",
              "--depth", "25"], []),
            (["make-instance", "--graph", "path", "--d", "12",
              "--decay", "0.7"], ["instance{run}.json"]),
            (["estimate", "--instance", inst, "--n", "300", "--seed", "5"],
             ["report{run}.json"]),
            (["sweep", "--instance", inst, "--n", "20,40", "--trials", "2",
              "--seed", "3"], ["sweep{run}.csv", "sweep{run}.agg.json"]),
            (["toeplitz-bound", "--a", afile], []),
            (["lower-bound", "--d", "64", "--s", "4", "--eps", "0.5",
              "--n", "100"], []),
        ]
        run_cli("make-instance", "--graph", "path", "--d", "12",
                "--decay", "0.7", "--out", inst)
        for argv, outputs in commands:
            results = []
            for run in (1, 2):
                files = [out(name.format(run=run)) for name in outputs]
                extra = ["--out", files[0]] if files else []
                code, stdout = run_cli(*argv, *extra)
                assert code == 0, argv
                blobs = [stdout.encode()]
                for path in files:
                    with open(path, "rb") as handle:
                        blobs.append(handle.read())
                results.append(blobs)
            assert results[0] == results[1], argv


if __name__ == "__main__":
    failures = 0
    for check in CRITERIA:
        try:
            check()
        except BaseException as exc:  # report and keep going
            failures += 1
            print(f"  -> {type(exc).__name__}: {exc}", flush=True)
    raise SystemExit(1 if failures else 0)
