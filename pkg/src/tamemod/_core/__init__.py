"""Kernel selection: compiled extension when available, pure Python otherwise.

Set TAMEMOD_KERNEL=python or TAMEMOD_KERNEL=c to force a choice; forcing "c"
raises if the extension was not built.
"""

import os

from . import _pure

_forced = os.environ.get("TAMEMOD_KERNEL", "").strip().lower()

_fast = None
if _forced != "python":
    try:
        from . import _speedups as _fast
    except ImportError:
        _fast = None
    if _forced == "c" and _fast is None:
        raise ImportError(
            "TAMEMOD_KERNEL=c requested but the compiled kernel is not built; "
            "reinstall with a C compiler or unset TAMEMOD_KERNEL"
        )

impl = _fast if _fast is not None else _pure


def kernel_name():
    """Name of the active kernel: "c" or "python"."""
    return "c" if impl is not _pure else "python"


def implementations():
    """All importable kernels, keyed by name (for parity tests and benchmarks)."""
    out = {"python": _pure}
    if _fast is not None:
        out["c"] = _fast
    return out
