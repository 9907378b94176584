from fractions import Fraction

import pytest

from qtorb import (
    BlowupError,
    NonIntegralAgeError,
    blow_up,
    check_triangulation_identity,
    cr_report,
    crepant_candidates,
    face_by_indices,
    induced_triangulation,
    is_crepant,
    is_quasi_sl,
    make_blowup_spec,
    make_model,
    mckay_check,
    model_to_json,
    parse_model,
    star_subdivide,
    trivial_subdivision,
    vertex_matrix,
)
from qtorb.exact import Poly
from qtorb.intlat import det, frac_det


def test_make_spec_validations(wp112):
    with pytest.raises(BlowupError, match="not integral"):
        make_blowup_spec(wp112, (0, 1), [Fraction(1, 3), Fraction(1, 3)])
    with pytest.raises(BlowupError, match="codimension"):
        make_blowup_spec(wp112, (0,), [1])
    with pytest.raises(BlowupError, match="not a face"):
        make_blowup_spec(wp112, (0, 1, 2), [1, 1, 1])
    with pytest.raises(BlowupError, match="positive"):
        make_blowup_spec(wp112, (0, 2), [Fraction(1, 2), Fraction(-1, 2)])
    with pytest.raises(BlowupError, match="not primitive"):
        make_blowup_spec(wp112, (0, 1), [2, 2])
    with pytest.raises(BlowupError, match="weights"):
        make_blowup_spec(wp112, (0, 2), [1])


def test_is_crepant(wp112):
    assert is_crepant(make_blowup_spec(wp112, (0, 2), ["1/2", "1/2"]))
    assert not is_crepant(make_blowup_spec(wp112, (0, 1), [1, 1]))
    z3_spec_weights = ["1/3", "1/3", "1/3"]
    z3 = make_model(
        3,
        4,
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)],
        [(1, 0, 0), (0, 1, 0), (-1, -1, 3), (0, 0, -1)],
    )
    assert is_crepant(make_blowup_spec(z3, (0, 1, 2), z3_spec_weights))


def test_blow_up_wp112_gives_square(wp112):
    spec = make_blowup_spec(wp112, (0, 2), ["1/2", "1/2"])
    assert spec.lambda0 == (0, -1)
    blown = blow_up(wp112, spec)
    assert blown.m == 4
    assert blown.vertices == ((0, 1), (0, 3), (1, 2), (2, 3))
    assert blown.char_vectors == ((1, 0), (0, 1), (-1, -2), (0, -1))
    # Round-trips through serialization and full validation.
    assert parse_model(model_to_json(blown)) == blown


def test_blow_up_z3_resolves(z3):
    spec = make_blowup_spec(z3, (0, 1, 2), ["1/3", "1/3", "1/3"])
    assert spec.lambda0 == (0, 0, 1)
    blown = blow_up(z3, spec)
    assert blown.m == 5
    assert len(blown.vertices) == 6
    assert all(abs(det(vertex_matrix(blown, v))) == 1 for v in blown.vertices)
    assert is_quasi_sl(blown)


def test_blow_up_vertex_count_formula(corpus):
    for model in corpus:
        for spec in crepant_candidates(model):
            touched = sum(
                1 for v in model.vertices if set(spec.face) <= set(v)
            )
            blown = blow_up(model, spec)
            assert blown.m == model.m + 1
            assert len(blown.vertices) == len(model.vertices) + touched * (
                len(spec.face) - 1
            )
            assert parse_model(model_to_json(blown)) == blown


def test_star_subdivide_segment(wp112):
    vertex = face_by_indices(wp112, (0, 2))
    tau = star_subdivide(vertex, (0, -1), wp112)
    assert len(tau.simplices) == 5
    assert len(tau.interior) == 3
    interior_verts = {sx.verts for sx in tau.interior}
    assert ((0, -1),) in interior_verts
    assert all((0, -1) in sx.verts for sx in tau.interior)


def test_star_subdivide_triangle(z3):
    vertex = face_by_indices(z3, (0, 1, 2))
    tau = star_subdivide(vertex, (0, 0, 1), z3)
    maximal = [sx for sx in tau.simplices if sx.dim == 2]
    assert len(maximal) == 3
    assert len(tau.interior) == 7
    # volumes of the maximal pieces add up to the whole simplex
    total = sum(
        (abs(frac_det([list(c) for c in sx.coords])) for sx in maximal),
        Fraction(0),
    )
    assert total == 1


def test_star_subdivide_rejects_boundary_point(z3):
    vertex = face_by_indices(z3, (0, 1, 2))
    with pytest.raises(ValueError, match="interior"):
        star_subdivide(vertex, (1, 0, 0), z3)
    with pytest.raises(ValueError, match="simplex"):
        star_subdivide(vertex, (0, 0, 2), z3)


def test_trivial_subdivision_identity(wp112):
    vertex = face_by_indices(wp112, (0, 2))
    tau = trivial_subdivision(vertex, wp112)
    assert len(tau.interior) == 1
    check = check_triangulation_identity(vertex, tau, wp112)
    assert check.passed
    assert check.lhs == check.rhs == Poly([1, 1])


def test_induced_triangulation_identity_case(z3):
    vertex = face_by_indices(z3, (0, 1, 2))
    tau = star_subdivide(vertex, (0, 0, 1), z3)
    assert induced_triangulation(vertex, tau, z3) is tau


def test_induced_triangulation_on_prism_vertices(prism):
    edge = face_by_indices(prism, (0, 1))
    tau = star_subdivide(edge, (1, 1, 0), prism)
    assert len(tau.interior) == 3
    for vertex_key in ((0, 1, 3), (0, 1, 4)):
        vertex = face_by_indices(prism, vertex_key)
        induced = induced_triangulation(vertex, tau, prism)
        assert len(induced.interior) == len(tau.interior)
        # Oracle: a simplex meets the interior iff its barycenter has
        # strictly positive coordinates over the vertex's vectors.
        for sx in induced.simplices:
            k = len(sx.coords[0])
            bary = [
                sum((c[i] for c in sx.coords), Fraction(0)) / len(sx.coords)
                for i in range(k)
            ]
            assert (all(b > 0 for b in bary)) == (sx in induced.interior)


def test_induced_triangulation_rejects_non_subface(prism):
    edge = face_by_indices(prism, (0, 1))
    tau = star_subdivide(edge, (1, 1, 0), prism)
    other = face_by_indices(prism, (2, 3))
    with pytest.raises(ValueError, match="subface"):
        induced_triangulation(other, tau, prism)


def test_triangulation_identity_wp112(wp112):
    vertex = face_by_indices(wp112, (0, 2))
    tau = star_subdivide(vertex, (0, -1), wp112)
    check = check_triangulation_identity(vertex, tau, wp112)
    assert check.passed
    assert check.lhs == Poly([1, 1])
    assert check.rhs == Poly([1, 1])


def test_triangulation_identity_z3(z3):
    vertex = face_by_indices(z3, (0, 1, 2))
    tau = star_subdivide(vertex, (0, 0, 1), z3)
    check = check_triangulation_identity(vertex, tau, z3)
    assert check.passed
    assert check.lhs == Poly([1, 1, 1])


def test_mckay_wp112(wp112):
    spec = make_blowup_spec(wp112, (0, 2), ["1/2", "1/2"])
    report = mckay_check(wp112, spec)
    assert report.verdict
    assert report.quasi_sl_after
    assert report.before.pp_cr == Poly([1, 2, 1])
    assert report.after.pp_cr == Poly([1, 2, 1])
    assert len(report.triangulation_checks) == 1


def test_mckay_z3(z3):
    spec = make_blowup_spec(z3, (0, 1, 2), ["1/3", "1/3", "1/3"])
    report = mckay_check(z3, spec)
    assert report.verdict
    assert report.before.pp_cr == Poly([1, 2, 2, 1])
    assert report.after.pp_cr == Poly([1, 2, 2, 1])
    # the blown-up model is smooth, so its polynomial is purely ordinary
    assert report.after.pp == report.after.pp_cr


def test_mckay_prism_edge(prism):
    spec = make_blowup_spec(prism, (0, 1), ["1/2", "1/2"])
    report = mckay_check(prism, spec)
    assert report.verdict
    assert report.before.pp_cr == Poly([1, 3, 3, 1])
    # the edge and the two vertices on it each get a triangulation check
    assert sorted(c.face.facet_set for c in report.triangulation_checks) == [
        (0, 1),
        (0, 1, 3),
        (0, 1, 4),
    ]


def test_mckay_rejects_bad_inputs(wp112):
    with pytest.raises(BlowupError, match="crepant"):
        mckay_check(wp112, make_blowup_spec(wp112, (0, 1), [1, 1]))
    bad = make_model(2, 3, [(0, 1), (1, 2), (0, 2)], [(1, 0), (0, 1), (-1, -3)])
    with pytest.raises(NonIntegralAgeError):
        mckay_check(bad, make_blowup_spec(bad, (0, 1), [1, 1]))


def test_smooth_model_crepant_blowup(cp2):
    # A smooth corner: the only crepant centers have unit-sum integer
    # coordinates; (1,1) weights are not crepant, so build one by hand on
    # a model with an A_1 vertex whose blowup is again handled generically.
    candidates = crepant_candidates(cp2)
    assert candidates == []


def test_lemma_quasi_sl_preserved_on_corpus(corpus):
    for model in corpus:
        for spec in crepant_candidates(model):
            assert is_quasi_sl(blow_up(model, spec))


def test_mckay_on_corpus(corpus):
    checked = 0
    for model in corpus:
        for spec in crepant_candidates(model):
            report = mckay_check(model, spec)
            assert report.verdict, (model.name, spec)
            checked += 1
    assert checked > 0


def test_iterated_blowups(z3):
    model = z3
    for _ in range(3):
        candidates = crepant_candidates(model)
        if not candidates:
            break
        before = cr_report(model).pp_cr
        model = blow_up(model, candidates[0])
        assert is_quasi_sl(model)
        assert cr_report(model).pp_cr == before
