"""Hot triple-scan kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise
(or when ``YBE_PURE_PYTHON`` is set) the numpy fallback in ``_pykernels``
is selected.  Both expose the same functions.
"""

import os

from . import _pykernels

python = _pykernels

try:
    from . import _ckernels as compiled
except ImportError:  # extension not built
    compiled = None

if compiled is not None and not os.environ.get("YBE_PURE_PYTHON"):
    impl = compiled
    BACKEND = "cython"
else:
    impl = _pykernels
    BACKEND = "python"

assoc = impl.assoc
left_brace = impl.left_brace
right_brace = impl.right_brace
rump = impl.rump
raut = impl.raut
laut = impl.laut
braid = impl.braid

__all__ = [
    "BACKEND", "assoc", "left_brace", "right_brace", "rump", "raut", "laut", "braid",
    "compiled", "python",
]
