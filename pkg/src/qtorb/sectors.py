"""Local groups of faces, encoded as box elements.

The finite group attached to a face is enumerated through the Smith
normal form of its characteristic vectors: coset representatives map to
the unique coefficient vector with entries in [0, 1).  Each element
carries its lattice point, its age (the coefficient sum), and its height
(the number of nonzero coefficients, which equals the rank of g - id on
the tangent representation).

A second, independent enumeration by exhaustive search over denominators
dividing the group order is provided for cross-checking.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from . import kernels
from .exact import Poly
from .intlat import IntVec, lattice_index, mat_from_cols, smith_normal_form
from .model import Face, Model, faces


class NonIntegralAgeError(ValueError):
    """A box element has a fractional age where an integer one is required."""

    def __init__(self, element: "BoxElement"):
        self.element = element
        where = ""
        if element.face is not None:
            where = f" at face {list(element.face.facet_set)}"
        coeffs = [str(c) for c in element.coeffs]
        super().__init__(
            f"non-integral age {element.age}{where} for coefficients {coeffs}"
        )


@dataclass(frozen=True)
class BoxElement:
    """One local-group element in its canonical box representation.

    ``point = sum(coeffs[j] * column_j)`` is integral, every coefficient
    lies in [0, 1), ``age`` is the coefficient sum and ``height`` the
    number of nonzero coefficients.
    """

    coeffs: tuple[Fraction, ...]
    point: IntVec
    age: Fraction
    height: int
    face: Face | None = None

    @property
    def is_identity(self) -> bool:
        return self.height == 0

    @property
    def is_interior(self) -> bool:
        return all(c > 0 for c in self.coeffs)


def _element_from_coeffs(coeffs: Sequence[Fraction], cols: Sequence[IntVec], n: int) -> BoxElement:
    point = [Fraction(0)] * n
    for c, col in zip(coeffs, cols):
        for i in range(n):
            point[i] += c * col[i]
    assert all(p.denominator == 1 for p in point), "box point must be integral"
    return BoxElement(
        coeffs=tuple(coeffs),
        point=tuple(p.numerator for p in point),
        age=sum(coeffs, Fraction(0)),
        height=sum(1 for c in coeffs if c),
    )


def box_of_columns(cols: Sequence[IntVec], ambient_dim: int) -> list[BoxElement]:
    """All box elements of the cone spanned by independent lattice vectors.

    Enumerates Z^k modulo the column lattice via Smith normal form and
    maps every coset to its unique representative in [0, 1)^k.  The
    result is sorted by coefficient vector; the identity comes first.
    """
    k = len(cols)
    if k == 0:
        return [BoxElement((), (0,) * ambient_dim, Fraction(0), 0)]
    lattice = mat_from_cols(cols)
    _, d, v = smith_normal_form(lattice)
    diag = [d[i][i] for i in range(k)] if len(d) >= k else []
    if len(diag) < k or any(x == 0 for x in diag):
        raise ValueError("box enumeration requires independent columns")
    elements = []
    for z in itertools.product(*(range(x) for x in diag)):
        scaled = [Fraction(z[i], diag[i]) for i in range(k)]
        coeffs = []
        for i in range(k):
            c = sum((v[i][j] * scaled[j] for j in range(k)), Fraction(0))
            coeffs.append(c - math.floor(c))
        elements.append(_element_from_coeffs(coeffs, cols, ambient_dim))
    elements.sort(key=lambda e: e.coeffs)
    order = math.prod(diag)
    assert len({e.coeffs for e in elements}) == order, "coset representatives must be distinct"
    return elements


def box_by_exhaustion(cols: Sequence[IntVec], ambient_dim: int) -> list[BoxElement]:
    """Independent slow enumeration of the same box.

    The group order is read off as the gcd of the maximal minors, then
    every coefficient vector with denominator dividing that order is
    tried and kept when the combination is a lattice point.
    """
    k = len(cols)
    if k == 0:
        return [BoxElement((), (0,) * ambient_dim, Fraction(0), 0)]
    order = lattice_index(cols)
    cols_mod = [[e % order for e in col] for col in cols]
    solutions = kernels.box_solutions(cols_mod, order)
    elements = [
        _element_from_coeffs([Fraction(t, order) for t in sol], cols, ambient_dim)
        for sol in solutions
    ]
    elements.sort(key=lambda e: e.coeffs)
    return elements


def _face_columns(face: Face, model: Model) -> list[IntVec]:
    return [model.char_vectors[i] for i in face.facet_set]


def local_group_order(face: Face, model: Model) -> int:
    """Order of the local group: the product of the invariant factors of
    the face's characteristic vectors (1 for the whole polytope)."""
    if face.codim == 0:
        return 1
    cols = _face_columns(face, model)
    _, d, _ = smith_normal_form(mat_from_cols(cols))
    return math.prod(d[i][i] for i in range(face.codim))


def enumerate_box(face: Face, model: Model) -> list[BoxElement]:
    """Box elements of a face, tagged with the face, sorted by coefficients."""
    return [
        replace(e, face=face)
        for e in box_of_columns(_face_columns(face, model), model.n)
    ]


def box_interior(face: Face, model: Model) -> list[BoxElement]:
    """Box elements with every coefficient strictly positive.

    For the whole polytope (no facets) this is the single identity
    element, matching the convention that the open stratum carries the
    trivial group.
    """
    return [e for e in enumerate_box(face, model) if e.is_interior]


def _age_degree(element: BoxElement) -> int:
    if element.age.denominator != 1:
        raise NonIntegralAgeError(element)
    return element.age.numerator


def age_polynomial_of_columns(cols: Sequence[IntVec], ambient_dim: int) -> Poly:
    """Generating polynomial of ages over the box of a cone: sum of s^age."""
    acc: dict[int, int] = {}
    for element in box_of_columns(cols, ambient_dim):
        deg = _age_degree(element)
        acc[deg] = acc.get(deg, 0) + 1
    if not acc:
        return Poly.zero()
    out = [0] * (max(acc) + 1)
    for deg, count in acc.items():
        out[deg] = count
    return Poly(out)


def age_polynomial(face: Face, model: Model) -> Poly:
    """Sum of s^age over the whole box of the face (1 for the polytope)."""
    out = Poly.zero()
    for element in enumerate_box(face, model):
        out = out + Poly.monomial(_age_degree(element))
    return out


def interior_age_polynomial(face: Face, model: Model) -> Poly:
    """Sum of s^age over box elements of full height, i.e. the interior
    ones; equals 1 for the whole polytope and 0 for any smooth face of
    positive codimension."""
    out = Poly.zero()
    for element in box_interior(face, model):
        out = out + Poly.monomial(_age_degree(element))
    return out


def quasi_sl_violations(model: Model) -> list[BoxElement]:
    """Box elements with fractional ages; vertex faces suffice because
    every box element of any face reappears in some vertex box."""
    out = []
    for face in faces(model):
        if face.codim != model.n:
            continue
        for element in enumerate_box(face, model):
            if element.age.denominator != 1:
                out.append(element)
    return out


def is_quasi_sl(model: Model) -> bool:
    """True iff every age of every twisted sector is an integer."""
    return not quasi_sl_violations(model)


def ensure_quasi_sl(model: Model) -> None:
    violations = quasi_sl_violations(model)
    if violations:
        raise NonIntegralAgeError(violations[0])


def sectors(model: Model) -> list[BoxElement]:
    """All sectors in canonical order: the untwisted sector (identity over
    the whole polytope) first, then every interior box element of every
    proper face."""
    out = []
    for face in faces(model):
        out.extend(box_interior(face, model))
    return out
