"""Select the term-map kernel: compiled extension if available, else pure Python.

Set CELLULAR_TOWERS_PURE=1 to force the pure-Python kernel (used by the
benchmark and by CI to exercise both paths).
"""

import os

if os.environ.get("CELLULAR_TOWERS_PURE") == "1":
    from . import _poly_py as _impl
else:
    try:
        from . import _poly_core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _poly_py as _impl

KERNEL = _impl.KERNEL
terms_add = _impl.terms_add
terms_sub = _impl.terms_sub
terms_neg = _impl.terms_neg
terms_scale = _impl.terms_scale
terms_mul = _impl.terms_mul
terms_mul_monomial = _impl.terms_mul_monomial
