"""Kernel backend selection.

Imports the compiled segment-field kernel when the extension built;
otherwise (or when ATOMCHIP_PURE_PYTHON=1 is set) uses the numpy fallback.
Both expose segment_fields() with identical semantics; tests assert their
outputs agree and the benchmark in benchmarks/ compares their speed.
"""

from __future__ import annotations

import os

from . import pure

if os.environ.get("ATOMCHIP_PURE_PYTHON", "") not in ("", "0"):
    _impl = pure
else:
    try:
        from . import _fastseg as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure

segment_fields = _impl.segment_fields
BACKEND_NAME: str = _impl.BACKEND_NAME

__all__ = ["segment_fields", "BACKEND_NAME", "pure"]
