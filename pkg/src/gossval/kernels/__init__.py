"""Kernel backend selection.

The compiled extension (_core, built from _core.pyx) is preferred when
importable; the pure-Python reference backend is the fallback.  Set
GOSSVAL_BACKEND=python or =cython to force a choice; forcing cython on a
build without the extension raises ImportError.
"""

from __future__ import annotations

import os


def _select():
    choice = os.environ.get("GOSSVAL_BACKEND", "auto").lower()
    if choice in ("auto", "", "cython", "c", "fast"):
        try:
            from . import _core

            return _core
        except ImportError:
            if choice not in ("auto", ""):
                raise
    elif choice not in ("python", "reference", "pure"):
        raise ValueError(f"unknown GOSSVAL_BACKEND={choice!r}")
    from . import reference

    return reference


_BACKEND = _select()


def backend():
    return _BACKEND


def backend_name() -> str:
    return getattr(_BACKEND, "BACKEND_NAME", "unknown")
