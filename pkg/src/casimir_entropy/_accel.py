"""JIT switch for the hot kernels.

Kernels are decorated with :func:`njit`. When numba is missing or the
environment variable ``CASIMIR_DISABLE_NUMBA`` is set to a truthy value,
the decorator is the identity and callers dispatch to the pure-numpy
implementations instead.
"""
import os

_FLAG = os.environ.get("CASIMIR_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False


def njit(*args, **kwargs):
    """``numba.njit`` when enabled, otherwise a no-op decorator."""
    if HAVE_NUMBA:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda func: func


def use_numba():
    """Whether the compiled kernels are active in this process."""
    return HAVE_NUMBA
