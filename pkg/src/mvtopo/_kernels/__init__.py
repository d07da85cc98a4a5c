"""Search kernels with a compiled fast path.

The Cython extension is used when it was built; otherwise the interpreted
twin in :mod:`._pure` is loaded. Both share one contract, so callers never
need to know which is active. ``BACKEND`` names the one in use.
"""

from types import ModuleType

from mvtopo.errors import InvalidInputError

from mvtopo._kernels import _pure

try:
    from mvtopo._kernels import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS: dict[str, ModuleType] = {"python": _pure}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

BACKEND = "cython" if _ckernels is not None else "python"
_impl = BACKENDS[BACKEND]

search_witness = _impl.search_witness
enumerate_inducing = _impl.enumerate_inducing


def get_backend(name: str) -> ModuleType:
    try:
        return BACKENDS[name]
    except KeyError:
        raise InvalidInputError(f"backend {name!r} is not available; have {sorted(BACKENDS)}") from None
