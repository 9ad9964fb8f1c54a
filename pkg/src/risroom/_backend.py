"""Select the kernel implementation at import time.

The compiled core is used when present; setting ``RISROOM_PURE_PYTHON=1``
forces the numpy fallback.
"""

import os

if os.environ.get("RISROOM_PURE_PYTHON"):
    from risroom import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from risroom import _kernels as kernels

        BACKEND = "cython"
    except ImportError:
        from risroom import _kernels_py as kernels

        BACKEND = "python"

__all__ = ["BACKEND", "kernels"]
