"""Kernel selection: compiled rewrite core when available, pure Python otherwise.

Set ``CATCW_PURE_PYTHON=1`` to force the fallback (used by the benchmark and
by tests that cross-check the two implementations).
"""

from __future__ import annotations

import os

if os.environ.get("CATCW_PURE_PYTHON"):
    from ._rewrite_py import RuleTable

    KERNEL_BACKEND = "python"
else:
    try:
        from ._rewrite_c import RuleTable  # type: ignore[no-redef]

        KERNEL_BACKEND = "c"
    except ImportError:
        from ._rewrite_py import RuleTable  # type: ignore[no-redef]

        KERNEL_BACKEND = "python"

__all__ = ["RuleTable", "KERNEL_BACKEND"]
