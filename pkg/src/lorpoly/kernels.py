"""Backend selection for the hot loops.

The compiled extension ``lorpoly._kernels`` is used when it was built;
otherwise, or when LORPOLY_PURE_PYTHON=1 is set, the pure-Python versions
in ``lorpoly._kernels_py`` are used.  Both expose the same functions.
"""
import os

from . import _kernels_py

try:
    if os.environ.get("LORPOLY_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python backend requested")
    from . import _kernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

ladder_word_coo = _impl.ladder_word_coo
casimir_coefficients = _impl.casimir_coefficients

__all__ = ["BACKEND", "ladder_word_coo", "casimir_coefficients"]
