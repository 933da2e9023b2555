"""Backend selection for the modular series kernels.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``FGL_PURE_PYTHON`` is set to a non-empty value other
than ``0``, the pure-Python twin is used.
"""

import os

from . import _pykernels

_force_py = os.environ.get("FGL_PURE_PYTHON", "") not in ("", "0")

if _force_py:
    impl = _pykernels
else:
    try:
        from . import _ckernels as impl
    except ImportError:  # extension not built
        impl = _pykernels

BACKEND = impl.NAME
mul_packed = impl.mul_packed
compose_univariate = impl.compose_univariate

# dense accumulators above this many slots are not worth it
MAX_DENSE_SIZE = 1 << 22


def use(backend: str):
    """Switch backend at runtime ("cython" or "python"); returns the previous name."""
    global impl, BACKEND, mul_packed, compose_univariate
    prev = BACKEND
    if backend == "python":
        impl = _pykernels
    elif backend == "cython":
        from . import _ckernels

        impl = _ckernels
    else:
        raise ValueError(f"unknown backend {backend!r}")
    BACKEND = impl.NAME
    mul_packed = impl.mul_packed
    compose_univariate = impl.compose_univariate
    return prev
