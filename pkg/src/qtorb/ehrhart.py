"""Lattice simplices of faces and their dilate point counts.

Every face of positive codimension carries the simplex of points that
are nonnegative rational combinations of its characteristic vectors
with coefficient sum 1.  Counting lattice points of dilates yields the
numerator coefficients of the generating series, which must reproduce
the box-element ages computed independently in :mod:`qtorb.sectors`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import kernels
from .exact import binom
from .intlat import (
    IntVec,
    adjugate,
    coords_in_basis,
    det,
    mat_from_cols,
    transpose,
)
from .model import Face, Model
from .sectors import BoxElement, NonIntegralAgeError, box_of_columns

Counter = Callable[["LatticeSimplex", int], int]


@dataclass(frozen=True)
class LatticeSimplex:
    """Simplex with lattice-point vertices inside some face simplex.

    ``coords`` gives each vertex as a rational combination of the ambient
    face's characteristic vectors (nonnegative entries, sum 1).  The
    codimension is measured inside the ambient face simplex.
    """

    ambient_face: Face
    verts: tuple[IntVec, ...]
    coords: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.verts) - 1

    @property
    def codim(self) -> int:
        return (self.ambient_face.codim - 1) - self.dim


def face_simplex(face: Face, model: Model) -> LatticeSimplex:
    """The full simplex of a face: its characteristic vectors are the
    vertices, in facet-index order.  Undefined for the whole polytope."""
    if face.codim == 0:
        raise ValueError("the whole polytope carries no face simplex")
    cols = [model.char_vectors[i] for i in face.facet_set]
    k = len(cols)
    unit = tuple(
        tuple(Fraction(1 if j == i else 0) for j in range(k)) for i in range(k)
    )
    return LatticeSimplex(ambient_face=face, verts=tuple(cols), coords=unit)


def simplex_in_face(face: Face, model: Model, points: Sequence[IntVec]) -> LatticeSimplex:
    """Simplex on given lattice points, with coordinates recomputed over
    the face's characteristic vectors; validates containment in the face
    simplex (nonnegative coordinates summing to 1)."""
    cols = mat_from_cols([model.char_vectors[i] for i in face.facet_set])
    coords = []
    for point in points:
        c = coords_in_basis(cols, point)
        if any(x < 0 for x in c) or sum(c) != 1:
            raise ValueError(f"{list(point)} is not in the face simplex")
        coords.append(c)
    return LatticeSimplex(ambient_face=face, verts=tuple(points), coords=tuple(coords))


def dilate_count(sx: LatticeSimplex, k: int) -> int:
    """Number of lattice points of the k-th dilate, by brute force.

    Scans the integer bounding box of the dilated vertices and keeps the
    points that are nonnegative rational combinations of the vertices
    with coefficient sum k.  Exact, and independent of the box-element
    machinery; this is the slow oracle path.
    """
    if k < 0:
        raise ValueError("dilation factor must be nonnegative")
    verts = sx.verts
    n = len(verts[0])
    lo = [min(k * v[i] for v in verts) for i in range(n)]
    hi = [max(k * v[i] for v in verts) for i in range(n)]
    vmat = mat_from_cols(verts)
    vt = transpose(vmat)
    gram = tuple(
        tuple(sum(a * b for a, b in zip(row, col)) for col in verts) for row in verts
    )
    det_g = det(gram)
    assert det_g > 0, "independent vertices have positive Gram determinant"
    adj = adjugate(gram)
    return kernels.count_in_dilate(
        lo, hi, [list(r) for r in vt], [list(r) for r in adj], det_g, k * det_g,
        [list(r) for r in vmat],
    )


def dilate_count_fast(sx: LatticeSimplex, k: int) -> int:
    """Dilate count through the box decomposition: every lattice point of
    the cone splits uniquely as a box element plus a nonnegative integer
    combination of the vertices, so level-k points are counted by
    compositions above each age."""
    if k < 0:
        raise ValueError("dilation factor must be nonnegative")
    d = len(sx.verts)
    total = 0
    for element in box_of_columns(sx.verts, len(sx.verts[0])):
        if element.age.denominator != 1:
            raise NonIntegralAgeError(element)
        total += binom(k - element.age.numerator + d - 1, d - 1)
    return total


def ehrhart_numerator(sx: LatticeSimplex, counter: Counter = dilate_count) -> tuple[int, ...]:
    """Numerator coefficients (psi_0, ..., psi_{d-1}) of the dilate series.

    The series sum_k l(k Delta) t^k equals (sum_i psi_i t^i) / (1-t)^d
    with d = dim + 1, so d leading counts determine the numerator:
    psi_j = sum_i (-1)^i C(d, i) l((j-i) Delta).  Negative coefficients
    would mean an upstream counting bug and raise immediately.
    """
    d = sx.dim + 1
    counts = [counter(sx, k) for k in range(d)]
    psi = []
    for j in range(d):
        value = sum((-1) ** i * binom(d, i) * counts[j - i] for i in range(j + 1))
        if value < 0:
            raise ArithmeticError(
                f"negative numerator coefficient psi_{j} = {value}; dilate counts {counts}"
            )
        psi.append(value)
    return tuple(psi)


def box_elements_of_simplex(sx: LatticeSimplex) -> list[BoxElement]:
    """Box elements of the cone over the simplex's vertices."""
    return box_of_columns(sx.verts, len(sx.verts[0]))
