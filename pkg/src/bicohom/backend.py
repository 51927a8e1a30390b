"""Kernel backend selection.

The compiled kernel (_core_cy) is preferred when it imported cleanly; the
pure-Python twin (_core_py) is the fallback and can be forced with
BICOHOM_PURE_PYTHON=1 in the environment.  Both expose the same functions
with identical contracts, so nothing above this module cares which one won.
"""

import os

from . import _core_py

if os.environ.get("BICOHOM_PURE_PYTHON"):
    impl = _core_py
else:
    try:
        from . import _core_cy as impl  # type: ignore[no-redef]
    except ImportError:
        impl = _core_py

BACKEND = impl.BACKEND

xgcd = impl.xgcd
identity = impl.identity
mat_mul = impl.mat_mul
snf_transforms = impl.snf_transforms
col_echelon = impl.col_echelon
reduce_columns = impl.reduce_columns
det = impl.det
minor_gcds = impl.minor_gcds
