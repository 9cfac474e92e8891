"""Sampling kernel selection.

The compiled Cython kernel is used when the extension was built; otherwise
the numpy fallback is used. Both produce identical outcome codes.
"""

from . import _pysampler

try:
    from . import _csampler
except ImportError:  # extension not built
    _csampler = None

BACKENDS = {"python": _pysampler.sample_codes}
if _csampler is not None:
    BACKENDS["compiled"] = _csampler.sample_codes

DEFAULT_BACKEND = "compiled" if _csampler is not None else "python"


def get_kernel(backend: str | None = None):
    name = backend or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable sampling backend {name!r}; have {sorted(BACKENDS)}") from None
