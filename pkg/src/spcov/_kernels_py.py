"""Pure numpy fallback for the compiled kernels.

Same rotation formulas, sweep order, and grid conventions as
``spcov._kernels``; only the inner loops are vectorized.  Results agree with
the compiled versions to floating point roundoff (not bitwise, because
summation order differs).
"""

import numpy as np


def jacobi_eigh(a, tol, max_sweeps):
    """Cyclic Jacobi diagonalization of a symmetric matrix, in place.

    See ``spcov._kernels.jacobi_eigh`` for the contract.
    """
    d = a.shape[0]
    v = np.eye(d)
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off <= tol:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
    return np.diagonal(a).copy(), v


def pair_product_means(values, ii, jj, offsets):
    """Mean of ``values[l, ii[p]] * values[l, jj[p]]`` per contiguous class."""
    products = values[:, ii] * values[:, jj]
    sums = products.sum(axis=0)
    counts = np.diff(offsets)
    totals = np.add.reduceat(sums, offsets[:-1])
    return totals / (counts * values.shape[0])


def cosine_grid_max(t):
    """Max over k in 0..2d-1 of |t[0] + 2 * sum_j t[j] cos(pi j k / d)|."""
    d = t.shape[0]
    if d == 1:
        return abs(t[0])
    k = np.arange(2 * d)
    j = np.arange(1, d)
    angles = (np.pi / d) * np.outer(k, j)
    vals = t[0] + 2.0 * (np.cos(angles) @ t[1:])
    return float(np.max(np.abs(vals)))
