"""Arithmetic kernel with a compiled lane and a pure-Python fallback.

The compiled extension is used when it imported cleanly; set the
environment variable ``QLSMODCAT_PURE=1`` to force the fallback.
Both lanes export the same functions with identical semantics.
"""

from __future__ import annotations

import os

if os.environ.get("QLSMODCAT_PURE"):
    from qlsmodcat._kernel.pure import *  # noqa: F401,F403
else:
    try:
        from qlsmodcat._kernel._speedups import *  # noqa: F401,F403
    except ImportError:
        from qlsmodcat._kernel.pure import *  # noqa: F401,F403
