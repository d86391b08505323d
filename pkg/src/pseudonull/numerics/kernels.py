"""Kernel backend selection.

The compiled core is used when it was built; otherwise (or when the
environment variable ``PSEUDONULL_PURE_PYTHON`` is set to a non-empty value)
the numpy implementation is used.  Both expose ``mol_rk4``, ``frenet_rk4``
and ``filament_rk4`` with identical signatures.
"""

import os

from . import _pykernels as python_backend

try:
    if os.environ.get("PSEUDONULL_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _ckernels as compiled_backend
except ImportError:
    compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

mol_rk4 = backend.mol_rk4
frenet_rk4 = backend.frenet_rk4
filament_rk4 = backend.filament_rk4


def available_backends() -> dict:
    out = {"python": python_backend}
    if compiled_backend is not None:
        out["cython"] = compiled_backend
    return out
