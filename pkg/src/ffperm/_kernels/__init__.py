"""Kernel backend selection.

The hot loops (exp/log table construction, translator scans, bijection
oracles, linear-binomial sweeps, balancedness sweeps) exist twice: a
compiled Cython core (``core_c``) and a plain Python/numpy fallback
(``core_py``).  The compiled core is used when the extension was built;
set FFPERM_BACKEND=py or =c to force one.  ``benchmarks/bench_backends.py``
compares the two.
"""

import os

from . import core_py

try:
    from . import core_c
except ImportError:
    core_c = None


def get_backend(name=None):
    """Return the kernel module for `name` ('py', 'c', or None = default)."""
    if name is None:
        name = os.environ.get("FFPERM_BACKEND", "").strip() or None
    if name is None:
        return core_c if core_c is not None else core_py
    if name == "py":
        return core_py
    if name == "c":
        if core_c is None:
            raise RuntimeError("compiled kernel backend is not available")
        return core_c
    raise ValueError(f"unknown kernel backend {name!r}")


ACTIVE = get_backend()
