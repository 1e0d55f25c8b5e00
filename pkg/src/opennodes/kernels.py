"""Kernel selection: compiled extension if built, pure Python otherwise.

Set OPENNODES_PURE=1 to force the Python kernel (used by the benchmark
and the twin-parity tests).  Both kernels implement the identical
algorithm and must return bit-identical values.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("OPENNODES_PURE") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
multi_profile = _impl.multi_profile
multi_theta_entropy = _impl.multi_theta_entropy
