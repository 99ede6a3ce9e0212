"""Kernel backend selection.

The compiled extension is preferred when it imports cleanly; otherwise
the pure-numpy kernels are used.  Set ``NOMA_SCHED_BACKEND=python`` or
``=compiled`` to force a choice (forcing ``compiled`` raises if the
extension is unavailable).  Both backends implement the same function
surface and are cross-checked by the test suite; results agree to
floating-point round-off.
"""

import os

from . import _kernels_py


def _load_compiled():
    from . import _kernels  # noqa: PLC0415  - deferred: may not be built

    return _kernels


def select_backend(name: str | None = None):
    """Return (module, label) for the requested or best available backend."""
    if name in (None, ""):
        try:
            return _load_compiled(), "compiled"
        except ImportError:
            return _kernels_py, "python"
    if name == "python":
        return _kernels_py, "python"
    if name == "compiled":
        return _load_compiled(), "compiled"
    raise ValueError(f"unknown backend {name!r}; use 'compiled' or 'python'")


_impl, BACKEND = select_backend(os.environ.get("NOMA_SCHED_BACKEND"))

split_last_power = _impl.split_last_power
uspa_single = _impl.uspa_single
uspa_batch = _impl.uspa_batch
grid_subset_best = _impl.grid_subset_best

# grid construction is shared so both backends see identical candidates
grid_values = _kernels_py.grid_values


def backend_name() -> str:
    return BACKEND
