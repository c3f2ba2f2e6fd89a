"""Select the kernel backend once, at import time.

The compiled Cython extension is preferred; the numpy fallback is used
when the extension is unavailable or when ``SEQSCREEN_PURE_PYTHON`` is set
to a non-empty value.  Both expose identical functions and semantics, so
the rest of the package imports names from here and never cares which one
is active.
"""

from __future__ import annotations

import os

if os.environ.get("SEQSCREEN_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND_NAME

ppv_values = _impl.ppv_values
npv_values = _impl.npv_values
cumulative_log_odds = _impl.cumulative_log_odds
gap_integral = _impl.gap_integral
