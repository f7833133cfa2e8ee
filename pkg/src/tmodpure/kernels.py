"""Select the polynomial kernel implementation at import time.

The compiled ``_kernels`` extension is used when it was built; otherwise the
pure-Python ``_kernels_py`` module is used.  Setting the environment variable
``TMODPURE_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("TMODPURE_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION

sp_add = _impl.sp_add
sp_sub = _impl.sp_sub
sp_scale = _impl.sp_scale
sp_mul = _impl.sp_mul
sp_divmod = _impl.sp_divmod
dn_mul = _impl.dn_mul
dn_divmod = _impl.dn_divmod
dn_rem = _impl.dn_rem
dn_gcd = _impl.dn_gcd

__all__ = [
    "IMPLEMENTATION",
    "sp_add",
    "sp_sub",
    "sp_scale",
    "sp_mul",
    "sp_divmod",
    "dn_mul",
    "dn_divmod",
    "dn_rem",
    "dn_gcd",
]
