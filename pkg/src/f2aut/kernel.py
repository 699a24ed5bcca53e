"""Kernel selection: compiled extension when available, pure Python otherwise.

Set F2AUT_FORCE_PURE=1 to skip the compiled backend (used by the benchmark
and the backend equivalence tests).
"""

import os

if os.environ.get("F2AUT_FORCE_PURE") == "1":
    from f2aut import _pure as _impl
else:
    try:
        from f2aut import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        from f2aut import _pure as _impl  # type: ignore[no-redef]

BACKEND = _impl.NAME

STEP_SIGMA = _impl.STEP_SIGMA
STEP_TAU = _impl.STEP_TAU
STEP_SIGMA_INV = _impl.STEP_SIGMA_INV
STEP_TAU_INV = _impl.STEP_TAU_INV

free_reduce = _impl.free_reduce
concat_reduce = _impl.concat_reduce
invert_bytes = _impl.invert_bytes
cyclic_trim = _impl.cyclic_trim
least_rotation = _impl.least_rotation
apply_mapped = _impl.apply_mapped
apply_mapped_cyclic = _impl.apply_mapped_cyclic
apply_step_cyclic = _impl.apply_step_cyclic
step_power_lengths = _impl.step_power_lengths


def get_backend():
    """Name of the active kernel backend ("compiled" or "pure")."""
    return BACKEND
