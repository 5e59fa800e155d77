"""Select the advection kernel at import time.

The compiled extension is used when it was built; setting
``DEFORMLAB_PURE_PYTHON=1`` forces the numpy fallback.
"""
import os

from . import _advect_py

try:
    if os.environ.get("DEFORMLAB_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend requested")
    from . import _advect_core as _kernel

    BACKEND = "compiled"
except ImportError:
    _kernel = _advect_py
    BACKEND = "numpy"

advect = _kernel.advect
advect_numpy = _advect_py.advect


def compiled_advect():
    """Return the compiled kernel, or ``None`` if it is not built."""
    try:
        from . import _advect_core
    except ImportError:
        return None
    return _advect_core.advect
