"""Select the kernel implementation at import time.

The compiled extension is preferred; set ``QRCUBE_PURE_PYTHON=1`` to force
the pure-Python fallback.
"""
import os

from . import _pykernels

if os.environ.get("QRCUBE_PURE_PYTHON", "") not in ("", "0"):
    kernels = _pykernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _pykernels

BACKEND = kernels.NAME
