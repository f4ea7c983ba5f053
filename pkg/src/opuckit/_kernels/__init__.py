"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; otherwise the
numpy implementation is used.  OPUCKIT_PURE_PYTHON=1 forces the fallback
(useful for benchmarking and for testing backend parity).
"""

import os

if os.environ.get("OPUCKIT_PURE_PYTHON"):
    from ._ref import log_phistar_abs

    BACKEND = "python"
else:
    try:
        from ._core import log_phistar_abs  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from ._ref import log_phistar_abs

        BACKEND = "python"

__all__ = ["log_phistar_abs", "BACKEND"]
