"""Kernel selection: compiled extension when available, pure Python otherwise.

Set the environment variable MILNORQ_PURE=1 to force the pure backend.
The compiled kernel packs exponents into 16-bit fields of a 64-bit word and
raises OverflowError when they do not fit, in which case we transparently
fall back to the pure implementation for that call.
"""

import os

from . import _pure

if os.environ.get("MILNORQ_PURE"):
    _speedups = None
else:
    try:
        from . import _speedups
    except ImportError:
        _speedups = None


def backend_name():
    return "speedups" if _speedups is not None else "pure"


if _speedups is None:
    poly_mul = _pure.poly_mul
else:

    def poly_mul(a, b, p):
        try:
            return _speedups.poly_mul(a, b, p)
        except OverflowError:
            return _pure.poly_mul(a, b, p)
