"""Backend selection for the arithmetic kernels.

The compiled ``_kernels`` extension is used when it was built; otherwise the
pure-Python ``_kernels_py`` module is used.  Setting ``GRADEKIT_PURE=1`` in
the environment forces the pure-Python backend.
"""
import os

if os.environ.get("GRADEKIT_PURE", "") not in ("", "0"):
    from gradekit import _kernels_py as impl
else:
    try:
        from gradekit import _kernels as impl
    except ImportError:
        from gradekit import _kernels_py as impl

BACKEND = impl.BACKEND

normalize = impl.normalize
is_zero = impl.is_zero
add = impl.add
sub = impl.sub
neg = impl.neg
mul = impl.mul
galois = impl.galois
inv = impl.inv
rref = impl.rref
matmul = impl.matmul
matvec = impl.matvec
