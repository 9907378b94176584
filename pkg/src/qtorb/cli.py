"""Command line interface.

Every command reads a model JSON file (schema in qtorb.model), writes a
canonical JSON report to stdout (sorted keys, fixed face order) and
signals through the exit code: 0 for success or a passing verdict, 1 for
a failing verdict or identity violation, 2 for usage or validation
errors.  Identical invocations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import kernels
from .blowup import (
    BlowupError,
    blow_up,
    crepant_candidates,
    is_crepant,
    make_blowup_spec,
    mckay_check,
)
from .cohomology import cr_report
from .ehrhart import dilate_count, dilate_count_fast, ehrhart_numerator, face_simplex
from .exact import rat_to_str
from .model import (
    Model,
    ModelValidationError,
    faces,
    generate_test_models,
    load_model,
    model_to_dict,
    positively_omnioriented,
    vertex_sign,
)
from .sectors import (
    NonIntegralAgeError,
    age_polynomial,
    box_by_exhaustion,
    box_interior,
    box_of_columns,
    ensure_quasi_sl,
    enumerate_box,
    is_quasi_sl,
    local_group_order,
    sectors,
)


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _age_json(age: Fraction):
    return age.numerator if age.denominator == 1 else rat_to_str(age)


def _sector_json(element) -> dict:
    return {
        "face": list(element.face.facet_set) if element.face else [],
        "coeffs": [rat_to_str(c) for c in element.coeffs],
        "point": list(element.point),
        "age": _age_json(element.age),
        "height": element.height,
    }


def _cmd_validate(args) -> int:
    try:
        model = load_model(args.model)
    except ModelValidationError as exc:
        _emit({"valid": False, "violations": exc.violations})
        return 2
    report = {
        "valid": True,
        "name": model.name,
        "n": model.n,
        "m": model.m,
        "num_vertices": len(model.vertices),
        "num_faces": len(faces(model)),
        "quasi_sl": is_quasi_sl(model),
        "vertex_signs": [vertex_sign(model, v) for v in model.vertices],
        # Sign data depends on the fixed increasing-index column order.
        "positively_omnioriented": positively_omnioriented(model),
    }
    _emit(report)
    return 0


def _cmd_faces(args) -> int:
    model = load_model(args.model)
    report = {
        "faces": [
            {
                "facet_set": list(f.facet_set),
                "dim": f.dim,
                "codim": f.codim,
                "vertices": list(f.vertex_ids),
            }
            for f in faces(model)
        ]
    }
    _emit(report)
    return 0


def _cmd_sectors(args) -> int:
    model = load_model(args.model)
    _emit([_sector_json(e) for e in sectors(model)])
    return 0


def _cmd_betti(args) -> int:
    model = load_model(args.model)
    report = cr_report(model)
    _emit(
        {
            "pp": {
                "s_coeffs": list(report.pp.coeffs),
                "by_degree": report.pp.even_expansion(),
            },
            "pp_cr": {
                "s_coeffs": list(report.pp_cr.coeffs),
                "by_degree": report.pp_cr.even_expansion(),
            },
        }
    )
    return 0


def _cmd_cr(args) -> int:
    model = load_model(args.model)
    report = cr_report(model)
    payload = {
        "pp": list(report.pp.coeffs),
        "pp_cr": list(report.pp_cr.coeffs),
        "routes_agree": report.routes_agree,
        "sectors": [_sector_json(e) for e in sectors(model)],
        "identities": {
            "morestrat": all(ok for _, ok in report.morestrat),
            "h_identity": report.identities[0].passed,
            "newpon": report.identities[1].passed,
        },
    }
    _emit(payload)
    return 0 if report.all_pass else 1


def _cmd_ehrhart(args) -> int:
    model = load_model(args.model)
    ensure_quasi_sl(model)
    counter = dilate_count if args.oracle else dilate_count_fast
    entries = []
    for face in faces(model):
        if face.codim == 0:
            continue
        sx = face_simplex(face, model)
        psi = ehrhart_numerator(sx, counter=counter)
        entries.append(
            {
                "face": list(face.facet_set),
                "psi": list(psi),
                "order": local_group_order(face, model),
                "dilates": [counter(sx, k) for k in range(face.codim)],
            }
        )
    _emit(entries)
    return 0


def _parse_spec(args, model: Model):
    face = [int(tok) for tok in args.face.split(",") if tok]
    weights = [Fraction(tok) for tok in args.weights.split(",") if tok]
    return make_blowup_spec(model, face, weights)


def _cmd_blowup(args) -> int:
    model = load_model(args.model)
    spec = _parse_spec(args, model)
    blown = blow_up(model, spec)
    payload = {
        "crepant": is_crepant(spec),
        "lambda0": list(spec.lambda0),
        "model": model_to_dict(blown),
    }
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(json.dumps(model_to_dict(blown), sort_keys=True, indent=2) + "\n")
    _emit(payload)
    return 0


def _cmd_mckay(args) -> int:
    model = load_model(args.model)
    spec = _parse_spec(args, model)
    report = mckay_check(model, spec)
    payload = {
        "verdict": report.verdict,
        "lambda0": list(spec.lambda0),
        "quasi_sl_after_blowup": report.quasi_sl_after,
        "pp_cr": {
            "before": list(report.before.pp_cr.coeffs),
            "after": list(report.after.pp_cr.coeffs) if report.after else None,
        },
        "routes_agree": {
            "before": report.before.routes_agree,
            "after": report.after.routes_agree if report.after else None,
        },
        "triangulation_checks": [
            {"face": list(c.face.facet_set), "pass": c.passed}
            for c in report.triangulation_checks
        ],
        # Convention-dependent report; never part of the verdict.
        "positively_omnioriented": {
            "before": positively_omnioriented(model),
            "after": positively_omnioriented(report.blown),
        },
    }
    _emit(payload)
    return 0 if report.verdict else 1


def identity_failures(model: Model, include_oracle: bool = False) -> list[str]:
    """Run the full identity suite on one model; returns failure messages.

    Covers the box partition over vertices, the per-face age partition,
    the torus stratification, three-route agreement, and the crepant
    blowup invariance for every candidate.  With `include_oracle`, the
    Smith-form box enumeration and the dilate-series numerators are also
    cross-checked against the exhaustive search paths.
    """
    failures: list[str] = []
    label = model.name or "<model>"
    report = cr_report(model)
    if not report.routes_agree:
        failures.append(f"{label}: the three Chen-Ruan routes disagree")
    for check in report.identities:
        if not check.passed:
            failures.append(f"{label}: identity {check.name} fails ({check.lhs} != {check.rhs})")
    for face, ok in report.morestrat:
        if not ok:
            failures.append(f"{label}: age partition fails at face {list(face.facet_set)}")

    interior_by_face = {
        f.facet_set: box_interior(f, model) for f in faces(model)
    }
    for face in faces(model):
        if face.codim != model.n:
            continue
        whole = sorted(e.point for e in enumerate_box(face, model))
        pieces = sorted(
            e.point
            for other, elements in interior_by_face.items()
            if set(other) <= set(face.facet_set)
            for e in elements
        )
        if whole != pieces:
            failures.append(
                f"{label}: box partition fails at vertex {list(face.facet_set)}"
            )

    if include_oracle:
        for face in faces(model):
            if face.codim == 0:
                continue
            order = local_group_order(face, model)
            if order > 200:
                continue
            cols = [model.char_vectors[i] for i in face.facet_set]
            if box_of_columns(cols, model.n) != box_by_exhaustion(cols, model.n):
                failures.append(
                    f"{label}: box enumeration disagrees with exhaustion at {list(face.facet_set)}"
                )
            sx = face_simplex(face, model)
            psi = ehrhart_numerator(sx, counter=dilate_count)
            w_coeffs = age_polynomial(face, model).coeffs
            if tuple(psi[: len(w_coeffs)]) != w_coeffs or any(p for p in psi[len(w_coeffs):]):
                failures.append(
                    f"{label}: dilate-series numerator {list(psi)} does not match ages at {list(face.facet_set)}"
                )

    for spec in crepant_candidates(model):
        report = mckay_check(model, spec)
        if not report.quasi_sl_after:
            failures.append(
                f"{label}: crepant blowup at {list(spec.face)} loses integral ages"
            )
        if not report.verdict:
            failures.append(
                f"{label}: crepant blowup at {list(spec.face)} changes the Betti numbers"
            )
    return failures


def _cmd_fuzz(args) -> int:
    models = generate_test_models(args.seed, args.count, n=args.n, budget=args.budget)
    failures: list[str] = []
    for model in models:
        failures.extend(identity_failures(model, include_oracle=args.oracle))
    payload = {
        "backend": kernels.backend_name(),
        "models_requested": args.count,
        "models_generated": len(models),
        "failures": failures,
        "all_pass": not failures,
    }
    _emit(payload)
    return 0 if not failures else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtorb",
        description=(
            "Chen-Ruan Betti numbers of quasitoric orbifolds from combinatorial "
            "models, with exact verification of crepant blowup invariance."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_model(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("model", help="path to a model JSON file")
        return p

    with_model("validate", "validate a model file").set_defaults(func=_cmd_validate)
    with_model("faces", "list the face lattice").set_defaults(func=_cmd_faces)
    with_model("sectors", "list all sectors with ages and heights").set_defaults(
        func=_cmd_sectors
    )
    with_model("betti", "ordinary and Chen-Ruan Betti numbers").set_defaults(
        func=_cmd_betti
    )
    with_model(
        "cr", "Chen-Ruan report: three routes plus identity checks"
    ).set_defaults(func=_cmd_cr)

    p = with_model("ehrhart", "dilate-series numerators per face")
    p.add_argument(
        "--oracle",
        action="store_true",
        help="count dilate points by brute force instead of the box formula",
    )
    p.set_defaults(func=_cmd_ehrhart)

    for name, help_text, func in (
        ("blowup", "truncate a face and emit the blown-up model", _cmd_blowup),
        ("mckay", "verify Betti invariance under a crepant blowup", _cmd_mckay),
    ):
        p = with_model(name, help_text)
        p.add_argument("--face", required=True, help="facet indices, e.g. 0,2")
        p.add_argument("--weights", required=True, help="weights, e.g. 1/2,1/2")
        if name == "blowup":
            p.add_argument("-o", "--output", help="write the blown-up model here")
        p.set_defaults(func=func)

    p = sub.add_parser("fuzz", help="generate models and run the identity suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--n", type=int, default=2, choices=(2, 3, 4))
    p.add_argument("--budget", type=int, default=400)
    p.add_argument("--oracle", action="store_true", help="include the exhaustive cross-checks")
    p.set_defaults(func=_cmd_fuzz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ModelValidationError,) as exc:
        _emit({"error": "invalid model", "violations": exc.violations})
        return 2
    except (BlowupError, NonIntegralAgeError, ValueError) as exc:
        _emit({"error": str(exc)})
        return 2
    except OSError as exc:
        _emit({"error": str(exc)})
        return 2


def entry() -> None:  # console-script hook
    raise SystemExit(main())
