"""Select the compiled series kernels when available, else the Python fallback.

Set MOCKCHAR_BACKEND=py to force the fallback (used by the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("MOCKCHAR_BACKEND", "").lower() in ("py", "python"):
    from . import _series_py as _impl
else:
    try:
        from . import _series_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _series_py as _impl

theta1_raw = _impl.theta1_raw
theta3_raw = _impl.theta3_raw
eta_prod_raw = _impl.eta_prod_raw
eta_pent_raw = _impl.eta_pent_raw
appell_raw = _impl.appell_raw


def backend_name() -> str:
    return _impl.BACKEND
