"""Kernel backend selection.

The compiled extension (``_ckernels``) is used when it imports; otherwise the
pure-Python module.  ``PFLADDER_KERNELS=python`` forces the fallback.
"""

import contextlib
import os

from . import _pykernels
from ._pykernels import MonomialOverflow

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["compiled"] = _ckernels


def _default():
    forced = os.environ.get("PFLADDER_KERNELS", "").strip().lower()
    if forced:
        if forced not in BACKENDS:
            raise ImportError(f"kernel backend {forced!r} is not available")
        return BACKENDS[forced]
    return BACKENDS.get("compiled", _pykernels)


active = _default()


def backend_name(mod=None):
    mod = active if mod is None else mod
    return "compiled" if mod is _ckernels and mod is not None else "python"


@contextlib.contextmanager
def use(name):
    """Temporarily switch the active backend."""
    global active
    previous = active
    active = BACKENDS[name]
    try:
        yield active
    finally:
        active = previous


__all__ = ["BACKENDS", "MonomialOverflow", "active", "backend_name", "use"]
