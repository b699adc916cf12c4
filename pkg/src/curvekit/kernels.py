"""Compute-kernel selection.

The compiled extension ``curvekit._speedups`` and the pure-Python module
``curvekit._fallback`` implement the same function-level interface; this
module picks the compiled one when it imports cleanly and falls back to pure
Python otherwise.  Set ``CURVEKIT_PURE=1`` in the environment to force the
pure backend (useful for benchmarking one against the other).
"""

from __future__ import annotations

import os

if os.environ.get("CURVEKIT_PURE") == "1":
    from . import _fallback as impl
else:
    try:
        from . import _speedups as impl  # type: ignore[no-redef]
    except ImportError:
        from . import _fallback as impl

BACKEND: str = impl.BACKEND
admissible_stream = impl.admissible_stream

__all__ = ["BACKEND", "admissible_stream", "impl"]
