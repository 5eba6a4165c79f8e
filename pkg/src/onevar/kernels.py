"""Hot loops, compiled when the extension is available.

The Cython module ``_ckernels`` is preferred; ``_pykernels`` is the drop-in
fallback. Set ``ONEVAR_PURE_PYTHON=1`` to force the fallback.
"""

import os

from onevar import _pykernels

if os.environ.get("ONEVAR_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from onevar import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

IMPLEMENTATION = _impl.IMPLEMENTATION
free_reduce = _impl.free_reduce
is_solution = _impl.is_solution
scan_ball = _impl.scan_ball
