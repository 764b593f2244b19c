"""Kernel backend selection.

The compiled Cython extension is preferred when importable; the numpy
fallback is used otherwise, or when AMPLEARN_PURE_PYTHON is set in the
environment. Both expose the identical function surface.
"""

import os

if os.environ.get("AMPLEARN_PURE_PYTHON"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

backend_name: str = kernels.BACKEND
