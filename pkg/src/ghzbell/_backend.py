"""Kernel backend selection.

The compiled extension is used when it imports; set ``GHZBELL_BACKEND=python``
to force the numpy fallback.
"""

import importlib
import os

from . import _pykernels

_requested = os.environ.get("GHZBELL_BACKEND", "auto").lower()

if _requested not in ("auto", "cython", "python"):
    raise ImportError(f"GHZBELL_BACKEND must be auto, cython or python, not {_requested!r}")

kernels = _pykernels
BACKEND = "python"
if _requested != "python":
    try:
        kernels = importlib.import_module("ghzbell._ckernels")
        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise


def available_backends():
    out = {"python": _pykernels}
    try:
        out["cython"] = importlib.import_module("ghzbell._ckernels")
    except ImportError:
        pass
    return out
