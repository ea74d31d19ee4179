"""Evaluation kernel backend selection.

The compiled extension is picked when it is importable; otherwise the
pure-Python kernels are used.  Setting ``WIRELAB_PURE_PYTHON=1`` in the
environment forces the fallback (useful for benchmarking the two).
"""

import os

from . import _pykernels

if os.environ.get("WIRELAB_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
node_vectors_general = _impl.node_vectors_general
output_vectors_depth2 = _impl.output_vectors_depth2
variable_mask = _pykernels.variable_mask
parity_table = _pykernels.parity_table
parity_candidate = _pykernels.parity_candidate

__all__ = [
    "BACKEND",
    "node_vectors_general",
    "output_vectors_depth2",
    "variable_mask",
    "parity_table",
    "parity_candidate",
]
