"""Backend selection: compiled extension if present, pure Python otherwise.

Set ``QUADFACT_PURE=1`` in the environment to force the pure-Python core
(useful for benchmarking and for debugging the extension).
"""

from __future__ import annotations

import os

if os.environ.get("QUADFACT_PURE"):
    from . import _purecore as _impl

    BACKEND = "python"
else:
    try:
        from . import _fastcore as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _purecore as _impl

        BACKEND = "python"

expoly_eval = _impl.expoly_eval
expoly_eval_many = _impl.expoly_eval_many
zeta_series = _impl.zeta_series
