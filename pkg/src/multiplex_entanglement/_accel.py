"""Backend selection for the numeric kernels.

Numba is used when importable unless ``MXENT_DISABLE_NUMBA`` is set to a
truthy value, in which case every dispatcher in :mod:`.kernels` falls back
to its vectorised numpy/scipy twin.
"""

import os
from typing import Any, Callable

_FLAG = "MXENT_DISABLE_NUMBA"

try:
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def _njit(*args: Any, **kwargs: Any) -> Callable:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


def _flag_set() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() in ("1", "true", "yes", "on")


USE_NUMBA = HAVE_NUMBA and not _flag_set()


def njit(*args: Any, **kwargs: Any) -> Callable:
    """``numba.njit`` with ``cache=True``; identity decorator without numba."""
    kwargs.setdefault("cache", True)
    return _njit(*args, **kwargs)


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
