"""Kernel backend selection.

Imports the compiled extension when present, otherwise the pure-Python
reference kernels.  Both expose identical signatures; set the environment
variable FRAMEFIELD_FORCE_PYTHON=1 to skip the extension (used by the
benchmark and the backend-equivalence tests).
"""

import os

from . import _kernels as _py

if os.environ.get("FRAMEFIELD_FORCE_PYTHON"):
    _impl = _py
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _py

BACKEND = _impl.BACKEND
frenet_integrate = _impl.frenet_integrate
double_reflection = _impl.double_reflection


def backend_name():
    return BACKEND
