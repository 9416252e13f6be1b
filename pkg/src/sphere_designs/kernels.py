"""Backend dispatch for the hot kernels.

The compiled extension is used when it imports; setting the environment
variable ``SPHERE_DESIGNS_PURE_PYTHON=1`` forces the numpy fallback.
"""

import os

from . import _kernels_py

_ext = None
if not os.environ.get("SPHERE_DESIGNS_PURE_PYTHON"):
    try:
        from . import _ckernels as _ext
    except ImportError:
        _ext = None

BACKENDS = {"python": _kernels_py}
if _ext is not None:
    BACKENDS["compiled"] = _ext

BACKEND = "compiled" if _ext is not None else "python"
_impl = BACKENDS[BACKEND]

symmetrize_table = _kernels_py.symmetrize_table


def get_backend(name=None):
    """Kernel module by name (``'compiled'`` or ``'python'``); default is the active one."""
    if name is None:
        return _impl
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None


def poly_sum_real(G, c, w):
    return _impl.poly_sum_real(G, c, w)


def poly_sum_complex(G, C, w):
    return _impl.poly_sum_complex(G, C, w)


def value_grad_real(V, c, w):
    return _impl.value_grad_real(V, c, w)


def value_grad_complex(V, C, w):
    return _impl.value_grad_complex(V, C, w)
