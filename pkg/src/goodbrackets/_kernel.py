"""Kernel selection: compiled product if available, pure Python otherwise.

The active backend is re-exported as `mul_dicts`.  `set_backend` rebinds it
(used by the benchmark); GOODBRACKETS_BACKEND=pure forces the fallback at
import time.
"""

import os

from . import _product_py

try:
    from . import _product_c
except ImportError:
    _product_c = None

_BACKENDS = {"pure": _product_py.mul_dicts}
if _product_c is not None:
    _BACKENDS["compiled"] = _product_c.mul_dicts


def set_backend(name):
    """Switch the product kernel; returns the previous backend name."""
    global mul_dicts, backend_name
    if name not in _BACKENDS:
        raise KeyError("unknown kernel backend %r (have %s)" % (name, sorted(_BACKENDS)))
    prev = backend_name
    backend_name = name
    mul_dicts = _BACKENDS[name]
    return prev


def available_backends():
    return sorted(_BACKENDS)


if os.environ.get("GOODBRACKETS_BACKEND") == "pure" or _product_c is None:
    backend_name = "pure"
else:
    backend_name = "compiled"
mul_dicts = _BACKENDS[backend_name]
