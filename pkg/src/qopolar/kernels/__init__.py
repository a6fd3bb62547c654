"""Hot polynomial kernels: compiled core with a pure-Python fallback.

The compiled extension ``_ckernels`` is used when it imports; otherwise (or
when ``QOPOLAR_KERNELS=python`` is set) the reference implementation in
``_pykernels`` is used.  Both expose the same functions.
"""

import os

from . import _pykernels

ENV_VAR = "QOPOLAR_KERNELS"


def _load_compiled():
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = _load_compiled()


def available_backends() -> list[str]:
    return ["python"] + (["compiled"] if _compiled is not None else [])


def get_backend(name: str | None = None):
    """Return the kernel module for ``name`` (``"compiled"``, ``"python"`` or default)."""
    if name is None:
        name = os.environ.get(ENV_VAR, "auto")
    if name == "python":
        return _pykernels
    if name in ("compiled", "auto"):
        if _compiled is not None:
            return _compiled
        if name == "compiled":
            raise ImportError("compiled kernels are not built")
        return _pykernels
    raise ValueError(f"unknown kernel backend {name!r}")


_active = get_backend()
BACKEND = _active.BACKEND
poly_mul = _active.poly_mul
poly_mul_sub = _active.poly_mul_sub
poly_divexact = _active.poly_divexact
bareiss_det = _active.bareiss_det
