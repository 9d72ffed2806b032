"""Spectral kernels with a compiled fast path and a NumPy fallback.

The compiled backend (``curvtool._kernels._core``, Cython) and the reference
backend (``_pyref``) expose the same four functions; the compiled one is
picked at import time when available. Set ``CURVTOOL_BACKEND=python`` to force
the fallback or ``CURVTOOL_BACKEND=compiled`` to fail loudly when the
extension is missing.
"""

import os

from . import _pyref

_requested = os.environ.get("CURVTOOL_BACKEND", "auto").strip().lower() or "auto"
if _requested not in ("auto", "compiled", "python"):
    raise ImportError(
        f"CURVTOOL_BACKEND={_requested!r} not recognized "
        "(expected 'auto', 'compiled', or 'python')"
    )

_impl = None
if _requested in ("auto", "compiled"):
    try:
        from . import _core as _impl
    except ImportError:
        if _requested == "compiled":
            raise
        _impl = None
if _impl is None:
    _impl = _pyref

BACKEND = "python" if _impl is _pyref else "compiled"

jacobi_eigh = _impl.jacobi_eigh
skew_square_spectra = _impl.skew_square_spectra
pair_residual = _impl.pair_residual
fd_gradient = _impl.fd_gradient

__all__ = [
    "BACKEND",
    "jacobi_eigh",
    "skew_square_spectra",
    "pair_residual",
    "fd_gradient",
]
