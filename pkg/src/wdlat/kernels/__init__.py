"""Backend dispatch for the hot per-ideal kernels.

Two interchangeable implementations exist: a Numba JIT backend and a
pure-NumPy fallback. Selection is controlled by the ``WDLAT_BACKEND``
environment variable:

* unset or ``auto``: use Numba when importable, else fall back to NumPy;
* ``numba``: require the JIT backend (raises if Numba is unavailable);
* ``numpy``: force the fallback.

``set_backend`` overrides the environment for the current process, which
the test suite and the benchmark harness use to compare both paths.
"""

from __future__ import annotations

import os
from types import ModuleType
from typing import Optional

_ENV_VAR = "WDLAT_BACKEND"
_active: Optional[ModuleType] = None


def _resolve(name: str) -> ModuleType:
    if name == "numpy":
        from . import numpy_backend

        return numpy_backend
    if name == "numba":
        from . import numba_backend

        return numba_backend
    if name == "auto":
        try:
            from . import numba_backend

            return numba_backend
        except ImportError:
            from . import numpy_backend

            return numpy_backend
    raise ValueError(
        f"unknown kernel backend {name!r}; expected auto, numba, or numpy"
    )


def active_backend() -> ModuleType:
    """The kernel module currently in use, resolving the env flag once."""
    global _active
    if _active is None:
        _active = _resolve(os.environ.get(_ENV_VAR, "auto").strip().lower())
    return _active


def backend_name() -> str:
    return active_backend().NAME


def set_backend(name: Optional[str]) -> str:
    """Force a backend (``numba``/``numpy``/``auto``), or reset with None."""
    global _active
    _active = None if name is None else _resolve(name)
    return backend_name()
