"""Kernel backend selection.

The compiled extension is used when importable; set ``CARPET_LAB_PURE=1`` to
force the numpy implementation.
"""

import os

from . import _kernels_py

if os.environ.get("CARPET_LAB_PURE") == "1":
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "numpy"
beta_parts_seq = (_compiled or _kernels_py).beta_parts_seq

BACKENDS = {"numpy": _kernels_py.beta_parts_seq}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled.beta_parts_seq
