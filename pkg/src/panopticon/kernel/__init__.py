"""Stepping-kernel selection.

The compiled extension is used when it was built; ``PANOPTICON_PURE_PYTHON=1``
forces the pure-Python loop.  Both expose the same ``advance`` function.
"""
import os

from ._pykernel import HALTED, LIMIT, OUT_OF_TAPE
from ._pykernel import advance as py_advance

c_advance = None
if not os.environ.get("PANOPTICON_PURE_PYTHON"):
    try:
        from ._ckernel import advance as c_advance
    except ImportError:  # extension not built
        c_advance = None

advance = c_advance or py_advance
BACKEND = "cython" if c_advance is not None else "python"

__all__ = ["advance", "py_advance", "c_advance", "BACKEND", "HALTED", "LIMIT", "OUT_OF_TAPE"]
