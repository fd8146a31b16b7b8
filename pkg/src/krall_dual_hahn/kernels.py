"""Kernel backend selection.

The compiled extension and the pure-Python module implement the same
contract; the compiled one is preferred when importable.  Set
KRALL_DUAL_HAHN_KERNELS=py or =c to force a backend.
"""

import os

_choice = os.environ.get("KRALL_DUAL_HAHN_KERNELS", "").strip().lower()

if _choice == "py":
    from . import _kernels_py as _impl

    BACKEND = "py"
elif _choice == "c":
    from . import _kernels_c as _impl

    BACKEND = "c"
elif _choice == "":
    try:
        from . import _kernels_c as _impl

        BACKEND = "c"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "py"
else:
    raise ValueError(f"KRALL_DUAL_HAHN_KERNELS must be 'py' or 'c', got {_choice!r}")

zp_trim = _impl.zp_trim
zp_add = _impl.zp_add
zp_sub = _impl.zp_sub
zp_neg = _impl.zp_neg
zp_mul = _impl.zp_mul
zp_mul_scalar = _impl.zp_mul_scalar
zp_divexact = _impl.zp_divexact
zp_content = _impl.zp_content
zp_primitive = _impl.zp_primitive
zp_gcd = _impl.zp_gcd
bareiss_det = _impl.bareiss_det
