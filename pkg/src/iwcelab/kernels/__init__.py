"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The numba path is used when numba imports cleanly, unless the environment
variable ``IWCELAB_NUMBA`` is set to ``0``/``false``/``off``, which forces the
numpy reference path. ``BACKEND`` names the active path.
"""

import os

from . import _numpy

_flag = os.environ.get("IWCELAB_NUMBA", "1").strip().lower()
_want_numba = _flag not in ("0", "false", "off", "no")

_impl = _numpy
BACKEND = "numpy"
if _want_numba:
    try:
        from . import _numba as _impl  # noqa: F811
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is optional
        _impl = _numpy

xlogx = _impl.xlogx
gammainc_series = _impl.gammainc_series
gammainc_cf = _impl.gammainc_cf
step_entropy = _impl.step_entropy
pair_abs_diff_stats = _impl.pair_abs_diff_stats

__all__ = [
    "BACKEND",
    "xlogx",
    "gammainc_series",
    "gammainc_cf",
    "step_entropy",
    "pair_abs_diff_stats",
]
