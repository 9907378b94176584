"""Acceptance suite.

One test per criterion; each prints a PASS line when its assertions go
through (run with -s to see them).  Expected polynomial values were
frozen from the brute-force box and dilate-count oracles exercised in
the unit tests.
"""

import contextlib
import io
import json
import pathlib
import time

from qtorb import (
    age_polynomial,
    blow_up,
    box_by_exhaustion,
    box_of_columns,
    check_age_partition,
    check_torus_stratification,
    check_triangulation_identity,
    cr_report,
    crepant_candidates,
    box_interior,
    dilate_count,
    ehrhart_numerator,
    enumerate_box,
    face_by_indices,
    face_simplex,
    faces,
    is_quasi_sl,
    local_group_order,
    make_blowup_spec,
    mckay_check,
    pp_cr_direct,
    pp_cr_via_closures,
    pp_cr_via_strata,
    relabel_facets,
    star_subdivide,
    vertex_matrix,
)
from qtorb.cli import main
from qtorb.exact import Poly
from qtorb.intlat import det
from qtorb.model import apply_unimodular, random_unimodular


def report(criterion: str, started: float, limit: float | None = None) -> None:
    elapsed = time.perf_counter() - started
    if limit is not None:
        assert elapsed < limit, f"{criterion} took {elapsed:.2f}s, limit {limit}s"
    print(f"ACCEPTANCE {criterion}: PASS ({elapsed:.2f}s)")


def test_criterion_1_wp112_mckay(wp112):
    started = time.perf_counter()
    expected = Poly([1, 2, 1])
    assert pp_cr_direct(wp112) == expected
    assert pp_cr_via_closures(wp112) == expected
    assert pp_cr_via_strata(wp112) == expected
    spec = make_blowup_spec(wp112, (0, 2), ["1/2", "1/2"])
    result = mckay_check(wp112, spec)
    assert result.verdict
    assert result.after.pp_cr == expected
    golden = pathlib.Path(__file__).parent.parent / "models" / "wp112.json"
    captured = io.StringIO()
    with contextlib.redirect_stdout(captured):
        rc = main(["mckay", str(golden), "--face", "0,2", "--weights", "1/2,1/2"])
    assert rc == 0
    cli_report = json.loads(captured.getvalue())
    assert cli_report["pp_cr"] == {"before": [1, 2, 1], "after": [1, 2, 1]}
    report("1 (weighted-triangle blowup)", started, limit=1.0)


def test_criterion_2_z3_resolution(z3):
    started = time.perf_counter()
    expected = Poly([1, 2, 2, 1])
    assert pp_cr_direct(z3) == expected
    spec = make_blowup_spec(z3, (0, 1, 2), ["1/3", "1/3", "1/3"])
    result = mckay_check(z3, spec)
    assert result.verdict
    blown = result.blown
    assert all(abs(det(vertex_matrix(blown, v))) == 1 for v in blown.vertices)
    assert result.after.pp_cr == expected
    vertex = face_by_indices(z3, (0, 1, 2))
    tau = star_subdivide(vertex, spec.lambda0, z3)
    assert check_triangulation_identity(vertex, tau, z3).passed
    report("2 (order-3 corner resolution)", started, limit=1.0)


def test_criterion_3_oracle_equivalence(corpus):
    started = time.perf_counter()
    boxes = numerators = 0
    for model in corpus:
        for face in faces(model):
            if face.codim == 0 or local_group_order(face, model) > 200:
                continue
            cols = [model.char_vectors[i] for i in face.facet_set]
            assert box_of_columns(cols, model.n) == box_by_exhaustion(cols, model.n)
            boxes += 1
            sx = face_simplex(face, model)
            psi = ehrhart_numerator(sx, counter=dilate_count)
            ages = age_polynomial(face, model).coeffs
            assert psi[: len(ages)] == ages
            assert all(p == 0 for p in psi[len(ages) :])
            numerators += 1
    assert boxes > 100 and numerators > 100
    report(f"3 (oracle equivalence on {boxes} faces)", started, limit=60.0)


def test_criterion_4_identity_suite(corpus):
    started = time.perf_counter()
    for model in corpus:
        assert all(ok for _, ok in check_age_partition(model))
        assert check_torus_stratification(model)[0]
        rep = cr_report(model)
        assert rep.routes_agree and rep.all_pass
        interior = {f.facet_set: box_interior(f, model) for f in faces(model)}
        for face in faces(model):
            if face.codim != model.n:
                continue
            whole = sorted(e.point for e in enumerate_box(face, model))
            pieces = sorted(
                e.point
                for fs, elements in interior.items()
                if set(fs) <= set(face.facet_set)
                for e in elements
            )
            assert whole == pieces
    report("4 (identity suite)", started)


def test_criterion_5_blowup_lemmas(corpus):
    started = time.perf_counter()
    blowups = 0
    for model in corpus:
        expected = pp_cr_direct(model)
        for spec in crepant_candidates(model):
            blown = blow_up(model, spec)
            assert is_quasi_sl(blown)
            assert pp_cr_direct(blown) == expected
            assert mckay_check(model, spec).verdict
            blowups += 1
    assert blowups > 0
    report(f"5 (quasi-SL and Betti invariance over {blowups} blowups)", started)


def test_criterion_6_metamorphic_invariance(corpus, rng):
    started = time.perf_counter()
    for model in corpus:
        expected = pp_cr_direct(model)
        moved = apply_unimodular(model, random_unimodular(rng, model.n))
        assert pp_cr_direct(moved) == expected
        perm = list(range(model.m))
        rng.shuffle(perm)
        assert pp_cr_direct(relabel_facets(model, perm)) == expected
    report("6 (metamorphic invariance)", started)
