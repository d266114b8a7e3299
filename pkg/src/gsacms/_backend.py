"""Pick the kernel implementation at import time.

The compiled module is preferred; ``GSACMS_PURE_PYTHON=1`` forces the
fallback, which is also used when the extension was not built.
"""
import os

if os.environ.get("GSACMS_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as kernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:
        from . import _pykernels as kernels

BACKEND = kernels.NAME


def available_backends():
    mods = {}
    try:
        from . import _ckernels
        mods[_ckernels.NAME] = _ckernels
    except ImportError:
        pass
    from . import _pykernels
    mods[_pykernels.NAME] = _pykernels
    return mods
