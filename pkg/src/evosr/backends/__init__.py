"""Backend selection for the hot kernels.

Set EVOSR_BACKEND=numpy to force the pure-numpy fallback, EVOSR_BACKEND=numba
to require the jitted kernels. Default ("auto") prefers numba when available.
"""

import os

from . import numpy_impl

_requested = os.environ.get("EVOSR_BACKEND", "auto").strip().lower()

if _requested in ("", "auto"):
    try:
        from . import numba_impl as _impl
        _name = "numba"
    except ImportError:
        _impl = numpy_impl
        _name = "numpy"
elif _requested == "numpy":
    _impl = numpy_impl
    _name = "numpy"
elif _requested == "numba":
    from . import numba_impl as _impl
    _name = "numba"
else:
    raise ValueError(f"EVOSR_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

convolve2d = _impl.convolve2d
translate_nearest = _impl.translate_nearest
translate_bilinear = _impl.translate_bilinear
btv_gradient = _impl.btv_gradient
median_deposit = _impl.median_deposit
fill_holes = _impl.fill_holes
local_std = _impl.local_std


def active_backend():
    """Name of the kernel backend in use: 'numba' or 'numpy'."""
    return _name
