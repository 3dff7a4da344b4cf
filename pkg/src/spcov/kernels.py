"""Kernel backend selection.

Prefers the compiled extension when it was built; otherwise falls back to
the numpy implementation.  ``BACKEND`` records which one is active.
"""

try:
    from spcov import _kernels as _impl

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    from spcov import _kernels_py as _impl

    BACKEND = "python"

jacobi_eigh = _impl.jacobi_eigh
pair_product_means = _impl.pair_product_means
cosine_grid_max = _impl.cosine_grid_max
