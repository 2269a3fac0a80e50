"""Kernel backend selection.

The compiled module is used when it was built and ``CELLCX_PURE_PYTHON`` is
unset; otherwise the pure-Python module is used. Both expose the same
functions with the same results.
"""

import os

from . import _pykernels

python_backend = _pykernels

try:
    from . import _ckernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None


def _pick():
    if os.environ.get("CELLCX_PURE_PYTHON") or compiled_backend is None:
        return _pykernels
    return compiled_backend


KERNELS = ("strict_below", "transpose", "rank_violation", "gap_violation",
           "intersection_violation", "diamond_violation")


def select(backend):
    """Route the kernel functions through ``backend``; returns the previous one."""
    global active, BACKEND
    prev = globals().get("active")
    active = backend
    BACKEND = backend.BACKEND
    for name in KERNELS:
        globals()[name] = getattr(backend, name)
    return prev


select(_pick())


def available_backends():
    return [b for b in (_pykernels, compiled_backend) if b is not None]
