"""Bessel functions of the first kind and their positive zeros.

The compiled kernel (``_bessel_ext``) is used when it was built; otherwise the
pure-Python kernel with the same algorithm is loaded. Set
``L2STOKES_PURE_PYTHON=1`` to force the fallback.

Evaluation: power series for small arguments (or when x^2/4 <= nu + 1, where
the series has no cancellation), Hankel's asymptotic expansion for
x > 30 + nu^2, and Miller's backward recurrence normalised by the Neumann sum
``(x/2)^nu / Gamma(nu+1) = sum_k (nu+2k) (nu+1)_{k-1}/k! J_{nu+2k}(x)`` in between.
Zeros are bracketed by a unit-step scan from x = max(nu, 1/2) (J_nu > 0 on (0, j_{nu,1}),
consecutive zeros are more than 3 apart) and polished by Illinois regula falsi.
"""
from __future__ import annotations

import os

from . import _bessel_py

__all__ = ["BACKEND", "bessel_j", "bessel_zeros", "python_backend", "compiled_backend"]


def python_backend():
    return _bessel_py


def compiled_backend():
    """The compiled kernel module, or None when the extension is not built."""
    try:
        from . import _bessel_ext
    except ImportError:
        return None
    return _bessel_ext


_ext = None if os.environ.get("L2STOKES_PURE_PYTHON") else compiled_backend()
_impl = _ext if _ext is not None else _bessel_py
BACKEND = "cython" if _ext is not None else "python"

bessel_j = _impl.bessel_j
bessel_zeros = _impl.bessel_zeros
