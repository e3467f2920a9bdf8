"""Kernel backend selection.

The compiled Cython module is used when it imports; otherwise, or when the
environment variable ``DLUROTH_PURE_PYTHON`` is set to a non-empty value, the
pure-Python versions are used.  ``BACKEND`` names the active one.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("DLUROTH_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

bareiss_echelon = _impl.bareiss_echelon
kernel_mod_p = _impl.kernel_mod_p
monomial_rows_mod_p = _impl.monomial_rows_mod_p

__all__ = ["BACKEND", "bareiss_echelon", "kernel_mod_p", "monomial_rows_mod_p"]
