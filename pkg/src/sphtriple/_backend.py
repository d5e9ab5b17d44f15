"""Pick the compiled kernel module when available, else the pure-Python one.

Set ``SPHTRIPLE_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("SPHTRIPLE_PURE_PYTHON"):
    from . import _pycore as kernels
else:
    try:
        from . import _core as kernels
    except ImportError:  # extension not built
        from . import _pycore as kernels

BACKEND = "cython" if kernels.__name__.endswith("_core") else "python"

__all__ = ["kernels", "BACKEND"]
