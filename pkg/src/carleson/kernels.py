"""Backend selection for the numerical kernels.

The compiled Cython module is used when it was built and imports; set
``CARLESON_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

from . import _pykernels

python_backend = _pykernels

if os.environ.get("CARLESON_PURE_PYTHON", "") not in ("", "0"):
    compiled_backend = None
else:
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND_NAME = "cython" if compiled_backend is not None else "numpy"

arc_accumulate = backend.arc_accumulate
arc_max = backend.arc_max
ball_weights = backend.ball_weights
min_pseudo_distance = backend.min_pseudo_distance
