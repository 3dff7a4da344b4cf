"""Compiled and pure numpy kernel backends must agree."""

import numpy as np
import pytest

from spcov import _kernels_py
from spcov import kernels

compiled = pytest.importorskip("spcov._kernels",
                               reason="compiled extension not built")


def test_selected_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")
    # with the extension importable, selection must prefer it
    assert kernels.BACKEND == "compiled"


class TestJacobiBackends:
    def test_agreement_random(self, np_rng):
        for k in range(30):
            d = int(np_rng.integers(1, 48))
            m = np_rng.normal(size=(d, d))
            a = np.ascontiguousarray((m + m.T) / 2.0)
            tol = 1e-12 * np.linalg.norm(a)
            w1, v1 = compiled.jacobi_eigh(a.copy(), tol, 100)
            w2, v2 = _kernels_py.jacobi_eigh(a.copy(), tol, 100)
            np.testing.assert_allclose(w1, w2, atol=1e-12)
            np.testing.assert_allclose(v1, v2, atol=1e-12)

    def test_zero_matrix(self):
        for impl in (compiled, _kernels_py):
            w, v = impl.jacobi_eigh(np.zeros((3, 3)), 0.0, 100)
            np.testing.assert_array_equal(w, np.zeros(3))
            np.testing.assert_array_equal(v, np.eye(3))

    def test_one_by_one(self):
        for impl in (compiled, _kernels_py):
            w, v = impl.jacobi_eigh(np.array([[7.0]]), 1e-12, 100)
            assert w[0] == 7.0 and v[0, 0] == 1.0


class TestPairProductBackends:
    def test_agreement(self, np_rng):
        values = np.ascontiguousarray(np_rng.normal(size=(200, 10)))
        ii = np.array([0, 1, 2, 0, 5, 9], dtype=np.int64)
        jj = np.array([0, 3, 2, 9, 6, 9], dtype=np.int64)
        offsets = np.array([0, 1, 3, 6], dtype=np.int64)
        out_c = compiled.pair_product_means(values, ii, jj, offsets)
        out_p = _kernels_py.pair_product_means(values, ii, jj, offsets)
        np.testing.assert_allclose(out_c, out_p, atol=1e-13)

    def test_single_sample_single_pair(self):
        values = np.array([[2.0, 3.0]])
        ii = np.array([0], dtype=np.int64)
        jj = np.array([1], dtype=np.int64)
        offsets = np.array([0, 1], dtype=np.int64)
        for impl in (compiled, _kernels_py):
            out = impl.pair_product_means(values, ii, jj, offsets)
            assert out[0] == 6.0


class TestCosineGridBackends:
    def test_agreement(self, np_rng):
        for d in (1, 2, 7, 33, 64):
            t = np.ascontiguousarray(np_rng.normal(size=d))
            b_c = compiled.cosine_grid_max(t)
            b_p = _kernels_py.cosine_grid_max(t)
            assert abs(b_c - b_p) <= 1e-12 * max(1.0, abs(b_c))

    def test_constant_vector(self):
        t = np.array([3.5])
        for impl in (compiled, _kernels_py):
            assert impl.cosine_grid_max(t) == 3.5
