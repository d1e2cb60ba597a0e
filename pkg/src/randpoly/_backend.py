"""Backend selection for the hot kernels.

Kernels are written once, in a numba-compatible subset of numpy Python.
By default they are JIT-compiled; setting the environment variable
``RANDPOLY_BACKEND=numpy`` runs the same source uncompiled (slow but
dependency-free), which is also what the benchmark script compares.
"""

import os

ENV_VAR = "RANDPOLY_BACKEND"

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None
    HAS_NUMBA = False


def default_backend() -> str:
    choice = os.environ.get(ENV_VAR, "").strip().lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not HAS_NUMBA:
            raise RuntimeError(f"{ENV_VAR}=numba but numba is not importable")
        return "numba"
    if choice:
        raise RuntimeError(f"unknown {ENV_VAR} value {choice!r}; use numba or numpy")
    return "numba" if HAS_NUMBA else "numpy"


def jit_compile(pyfunc):
    if not HAS_NUMBA:  # pragma: no cover
        raise RuntimeError("numba backend requested but numba is unavailable")
    return njit(cache=True, nogil=True, fastmath=True)(pyfunc)
