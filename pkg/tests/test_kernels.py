"""The two kernel backends must be interchangeable: same counts, same
solution sets, with the dispatcher falling back to big integers whenever
64-bit intermediates could overflow."""

import pytest

from qtorb import _core_py, kernels
from qtorb.ehrhart import dilate_count
from tests.test_ehrhart import simplex_from_cols

needs_compiled = pytest.mark.skipif(
    not kernels.compiled_available(), reason="compiled kernels not built"
)

DILATE_CASES = [
    ([(1, 0), (0, 1)], 4),
    ([(1, 0), (1, 2)], 5),
    ([(1, 0, 0), (0, 1, 0), (-1, -1, 3)], 3),
    ([(1, 0, 0), (0, 1, 0), (-1, -1, 3), (0, 0, -1)], 2),
    ([(2, 1), (1, 3)], 4),
]

BOX_CASES = [
    ([[1, 1], [0, 2]], 2),
    ([[1, 0, 2], [0, 1, 0], [0, 0, 60]], 60),
    ([[1, 3]], 1),
    ([[1, 0], [1, 199]], 199),
]


def _dilate_args(cols, k):
    from qtorb.intlat import adjugate, det, mat_from_cols, transpose

    verts = [tuple(c) for c in cols]
    n = len(verts[0])
    lo = [min(k * v[i] for v in verts) for i in range(n)]
    hi = [max(k * v[i] for v in verts) for i in range(n)]
    vmat = mat_from_cols(verts)
    vt = transpose(vmat)
    gram = tuple(
        tuple(sum(a * b for a, b in zip(row, col)) for col in verts) for row in verts
    )
    det_g = det(gram)
    adj = adjugate(gram)
    return (
        lo,
        hi,
        [list(r) for r in vt],
        [list(r) for r in adj],
        det_g,
        k * det_g,
        [list(r) for r in vmat],
    )


@needs_compiled
@pytest.mark.parametrize("cols,kmax", DILATE_CASES)
def test_backends_agree_on_dilate_counts(cols, kmax):
    from qtorb import _core

    for k in range(kmax + 1):
        args = _dilate_args(cols, k)
        assert _core.count_in_dilate(*args) == _core_py.count_in_dilate(*args)


@needs_compiled
@pytest.mark.parametrize("cols_mod,r", BOX_CASES)
def test_backends_agree_on_box_solutions(cols_mod, r):
    from qtorb import _core

    reduced = [[e % r for e in col] for col in cols_mod]
    assert sorted(_core.box_solutions(reduced, r)) == sorted(
        _core_py.box_solutions(reduced, r)
    )


def test_pure_mode_env_var(monkeypatch):
    monkeypatch.setenv("QTORB_PURE", "1")
    assert kernels.backend_name() == "pure"
    sx = simplex_from_cols([(1, 0), (1, 2)])
    assert dilate_count(sx, 3) == 7
    monkeypatch.delenv("QTORB_PURE")


def test_overflow_routes_to_pure_backend():
    # Entries near 2**40 blow past any int64 bound; the dispatcher must
    # switch to big integers and still count exactly.
    big = 2**40
    sx = simplex_from_cols([(big, 0), (big, 2)])
    args = _dilate_args([(big, 0), (big, 2)], 3)
    assert not kernels._dilate_fits_int64(*args)
    assert dilate_count(sx, 3) == 7


def test_dispatcher_matches_direct_calls():
    args = _dilate_args([(1, 0), (1, 2)], 4)
    assert kernels.count_in_dilate(*args) == _core_py.count_in_dilate(*args)
    cols_mod = [[1, 0], [1, 0]]  # the columns (1,0) and (1,2) reduced mod 2
    sols = kernels.box_solutions(cols_mod, 2)
    assert sols == sorted(_core_py.box_solutions(cols_mod, 2))
    assert sols == [(0, 0), (1, 1)]
