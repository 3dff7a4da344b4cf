# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels.

Hot loops only: the cyclic Jacobi eigensolver, per-distance means of sample
pair products, and the cosine-polynomial grid maximum used for circulant
spectral bounds.  ``spcov._kernels_py`` implements the same functions in
plain numpy; ``spcov.kernels`` picks whichever is importable.
"""

from libc.math cimport M_PI, cos, fabs, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()


def jacobi_eigh(double[:, ::1] a, double tol, Py_ssize_t max_sweeps):
    """Diagonalize a symmetric matrix in place with cyclic Jacobi rotations.

    ``a`` is destroyed.  Sweeps run over all (p, q) pairs in row order until
    the off-diagonal Frobenius mass drops to ``tol`` or ``max_sweeps`` is
    exhausted.  Returns ``(values, vectors)`` in diagonal order (unsorted);
    column k of ``vectors`` belongs to ``values[k]``.
    """
    cdef Py_ssize_t d = a.shape[0]
    vec_arr = np.eye(d)
    cdef double[:, ::1] v = vec_arr
    cdef Py_ssize_t p, q, k, sweep
    cdef double app, aqq, apq, tau, t, c, s, xp, xq, off

    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(d):
            for q in range(p + 1, d):
                off += 2.0 * a[p, q] * a[p, q]
        if sqrt(off) <= tol:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                tau = (aqq - app) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(d):
                    xp = a[k, p]
                    xq = a[k, q]
                    a[k, p] = c * xp - s * xq
                    a[k, q] = s * xp + c * xq
                for k in range(d):
                    xp = a[p, k]
                    xq = a[q, k]
                    a[p, k] = c * xp - s * xq
                    a[q, k] = s * xp + c * xq
                # the rotation is chosen to annihilate this pair exactly
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(d):
                    xp = v[k, p]
                    xq = v[k, q]
                    v[k, p] = c * xp - s * xq
                    v[k, q] = s * xp + c * xq

    val_arr = np.empty(d)
    cdef double[::1] w = val_arr
    for k in range(d):
        w[k] = a[k, k]
    return val_arr, vec_arr


def pair_product_means(double[:, ::1] values, cnp.int64_t[::1] ii,
                       cnp.int64_t[::1] jj, cnp.int64_t[::1] offsets):
    """Mean of ``values[l, ii[p]] * values[l, jj[p]]`` per contiguous class.

    ``values`` holds one sample per row.  Class s owns pair slots
    ``offsets[s]:offsets[s + 1]`` (every class nonempty); the mean for class
    s runs over all its pairs and all samples.
    """
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t n_classes = offsets.shape[0] - 1
    out_arr = np.empty(n_classes)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t s, p, l, i, j
    cdef double acc

    for s in range(n_classes):
        acc = 0.0
        for p in range(offsets[s], offsets[s + 1]):
            i = ii[p]
            j = jj[p]
            for l in range(n):
                acc += values[l, i] * values[l, j]
        out[s] = acc / ((offsets[s + 1] - offsets[s]) * n)
    return out_arr


def cosine_grid_max(double[::1] t):
    """Max over k in 0..2d-1 of |t[0] + 2 * sum_j t[j] cos(pi j k / d)|."""
    cdef Py_ssize_t d = t.shape[0]
    cdef Py_ssize_t k, j
    cdef double step = M_PI / d
    cdef double best = 0.0
    cdef double val

    for k in range(2 * d):
        val = t[0]
        for j in range(1, d):
            val += 2.0 * t[j] * cos(step * j * k)
        if fabs(val) > best:
            best = fabs(val)
    return best
