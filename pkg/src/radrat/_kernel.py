"""Kernel selection: compiled extension when available, numpy fallback else.

Set RADRAT_PURE=1 to force the pure kernel (used by the benchmark to compare
both implementations on the same workload).
"""

import os

if os.environ.get("RADRAT_PURE"):
    from . import _modlinalg_py as kernel
else:
    try:
        from . import _modlinalg as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _modlinalg_py as kernel

IMPL = kernel.IMPL
prepare = kernel.prepare
solve_prepared = kernel.solve_prepared
dixon_digits = kernel.dixon_digits
