"""Select the tensor-sum backend at import time.

The compiled extension is used when it was built; setting the environment
variable ``HOROFOURIER_BACKEND=python`` forces the numpy implementation.
"""
import os

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

BACKENDS = {"python": _pykernel.tensor_sum}
if _ckernel is not None:
    BACKENDS["compiled"] = _ckernel.tensor_sum

_requested = os.environ.get("HOROFOURIER_BACKEND", "").strip().lower()
if _requested == "python" or _ckernel is None:
    NAME = "python"
else:
    NAME = "compiled"

tensor_sum = BACKENDS[NAME]


def get_backend(name=None):
    """Return the tensor-sum function called ``name`` (default: the active one)."""
    if name is None:
        return tensor_sum
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
