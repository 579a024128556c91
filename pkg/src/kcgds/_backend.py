"""Pick the kernel implementation once, at import.

The compiled ``_core`` extension is used when it was built; otherwise the
pure-Python ``_pycore`` module takes over. Set ``KCGDS_PURE_PYTHON=1`` to
force the fallback.
"""
import os

if os.environ.get("KCGDS_PURE_PYTHON", "") not in ("", "0"):
    from . import _pycore as kernels
    BACKEND = "python"
else:
    try:
        from . import _core as kernels
        BACKEND = "cython"
    except ImportError:
        from . import _pycore as kernels
        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
