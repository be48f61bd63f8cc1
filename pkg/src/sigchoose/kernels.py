"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``SIGCHOOSE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if not os.environ.get("SIGCHOOSE_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl  # noqa: F811

        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels

SAT, UNSAT, BUDGET = _pykernels.SAT, _pykernels.UNSAT, _pykernels.BUDGET

search = _impl.search
claim2_sweep = _impl.claim2_sweep
claim2_sweep_bitmask = _pykernels.claim2_sweep_bitmask
