"""Selection between numba-compiled kernels and the pure-numpy fallback.

Set ``CVINV_DISABLE_NUMBA=1`` in the environment before import to force the
numpy path. If numba is not importable the numpy path is used regardless.
"""
import os

_FALSY = ("", "0", "false", "no", "off")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_REQUESTED = os.environ.get("CVINV_DISABLE_NUMBA", "").strip().lower() in _FALSY
USE_NUMBA = NUMBA_REQUESTED and numba is not None


def njit(fn):
    """Compile *fn* with ``numba.njit(cache=True)``; return it unchanged otherwise."""
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
