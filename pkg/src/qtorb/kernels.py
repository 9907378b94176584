"""Backend dispatch for the enumeration kernels.

The compiled extension (qtorb._core) is used when it imported cleanly,
unless QTORB_PURE is set in the environment or the input magnitudes
could overflow 64-bit intermediates; in those cases the pure big-int
implementation runs instead.  Both backends implement identical
algorithms, which the test suite and the bundled benchmark compare.
"""

from __future__ import annotations

import os

from . import _core_py

try:
    from . import _core
except ImportError:  # pragma: no cover - depends on the build environment
    _core = None

_INT64_SAFE = 2**62


def compiled_available() -> bool:
    return _core is not None


def _compiled_enabled() -> bool:
    return _core is not None and not os.environ.get("QTORB_PURE")


def backend_name() -> str:
    """Name of the backend the next kernel call will try first."""
    return "compiled" if _compiled_enabled() else "pure"


def _dilate_fits_int64(lo, hi, vt, adj, det_g, level, vmat) -> bool:
    """Exact worst-case bound for every intermediate of count_in_dilate."""
    x_max = max(max(abs(a), abs(b)) for a, b in zip(lo, hi))
    w_max = max(sum(abs(e) for e in row) for row in vt) * x_max
    c_max = max(sum(abs(e) for e in row) for row in adj) * w_max
    span_max = max(sum(abs(e) for e in row) for row in vmat) * c_max
    worst = max(
        w_max,
        c_max,
        len(adj) * c_max,
        span_max,
        abs(det_g) * x_max,
        abs(level),
    )
    return worst < _INT64_SAFE


def count_in_dilate(lo, hi, vt, adj, det_g, level, vmat) -> int:
    """Count lattice points of a dilated simplex; see _core_py for the contract."""
    if _compiled_enabled() and _dilate_fits_int64(lo, hi, vt, adj, det_g, level, vmat):
        return _core.count_in_dilate(lo, hi, vt, adj, det_g, level, vmat)
    return _core_py.count_in_dilate(lo, hi, vt, adj, det_g, level, vmat)


def box_solutions(cols_mod, r: int) -> list[tuple[int, ...]]:
    """Sorted list of t in [0, r)^k with sum_j t_j*cols_mod[j] == 0 mod r."""
    if _compiled_enabled() and 1 <= r < 2**20:
        sols = _core.box_solutions(cols_mod, r)
    else:
        sols = _core_py.box_solutions(cols_mod, r)
    return sorted(sols)
