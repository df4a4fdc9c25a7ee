"""Hot kernels: compiled extension when available, pure Python otherwise.

Set ``LOOPWEIGHTS_PURE=1`` to force the fallback (used by the benchmark and
by the equivalence tests).
"""

import os

from . import _fallback

BACKEND = "python"
if os.environ.get("LOOPWEIGHTS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _fallback
else:
    _impl = _fallback

weyl_closure = _impl.weyl_closure
orbit_closure = _impl.orbit_closure

__all__ = ["BACKEND", "weyl_closure", "orbit_closure"]
