"""Select the compiled or the pure-Python path for :mod:`raagpl.kernels`.

Set ``RAAGPL_DISABLE_NUMBA=1`` to run the kernels as plain Python over numpy
arrays (same code, no compilation). Numba is also skipped if not importable.
"""

import os

DISABLED = os.environ.get("RAAGPL_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if DISABLED:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    _njit = None
    HAVE_NUMBA = False


def njit(*args, **kwargs):
    if HAVE_NUMBA:
        return _njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f
