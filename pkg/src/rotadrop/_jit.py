"""Backend switch for the compiled kernels.

Set ``ROTADROP_DISABLE_JIT=1`` to run the plain numpy/Python kernels even when
numba is installed.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
JIT_ENABLED = HAVE_NUMBA and os.environ.get("ROTADROP_DISABLE_JIT", "0").strip().lower() in ("", "0", "false", "no")


def njit(func):
    """Compile ``func`` with numba; identity when numba is missing."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True, nogil=True)(func)
