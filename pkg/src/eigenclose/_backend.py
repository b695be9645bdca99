"""Select the kernel backend at import time.

The compiled extension is used when it was built; otherwise, or when
``EIGENCLOSE_PURE_PYTHON=1`` is set, the pure-Python module is used.
"""

import importlib
import os

from . import _pykernels

_NAMES = (
    "lanczos_gamma",
    "lanczos_lgamma",
    "hyp2f1_series",
    "power_rational_integral",
    "power_exp_integral",
)


def load(name=None):
    """Return a kernel module: ``"c"``, ``"python"`` or ``None`` for auto."""
    if name == "python":
        return _pykernels
    if name == "c":
        return importlib.import_module("eigenclose._ckernels")
    if os.environ.get("EIGENCLOSE_PURE_PYTHON", "") not in ("", "0"):
        return _pykernels
    try:
        return importlib.import_module("eigenclose._ckernels")
    except ImportError:
        return _pykernels


def compiled_available():
    try:
        importlib.import_module("eigenclose._ckernels")
    except ImportError:
        return False
    return True


kernels = load()
BACKEND = "c" if kernels is not _pykernels else "python"

lanczos_gamma = kernels.lanczos_gamma
lanczos_lgamma = kernels.lanczos_lgamma
hyp2f1_series = kernels.hyp2f1_series
power_rational_integral = kernels.power_rational_integral
power_exp_integral = kernels.power_exp_integral
