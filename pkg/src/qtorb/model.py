"""Combinatorial models of quasitoric orbifolds.

A model is a simple n-polytope given purely by vertex-facet incidence,
together with one primitive integer vector per facet whose restrictions
to every face are linearly independent.  Faces are identified with the
facet subsets realized at vertices; no convex realization is ever built
or checked.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .exact import Poly
from .intlat import IntMat, IntVec, as_vec, det, is_primitive, mat_from_cols, mat_vec

JSON_INT_LIMIT = 2**53


class ModelValidationError(ValueError):
    """Carries the full list of violated model constraints."""

    def __init__(self, violations: Iterable[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid model")


@dataclass(frozen=True)
class Face:
    """A face of the polytope, named by the facets meeting along it.

    The whole polytope is the empty facet set; vertices carry n facets.
    ``vertex_ids`` indexes into the model's vertex list.
    """

    facet_set: tuple[int, ...]
    dim: int
    vertex_ids: tuple[int, ...]

    @property
    def codim(self) -> int:
        return len(self.facet_set)


@dataclass(frozen=True)
class Model:
    """Simple polytope plus characteristic vectors, one per facet."""

    n: int
    m: int
    vertices: tuple[tuple[int, ...], ...]
    char_vectors: tuple[IntVec, ...]
    name: str | None = None


def _coerce_int(value, what: str, violations: list[str]) -> int | None:
    # JSON numbers above 2**53 may arrive as strings; accept both.
    if isinstance(value, bool):
        violations.append(f"{what}: expected an integer, got a boolean")
        return None
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            violations.append(f"{what}: cannot parse integer from {value!r}")
            return None
    violations.append(f"{what}: expected an integer, got {type(value).__name__}")
    return None


def _int_to_json(value: int):
    return value if abs(value) < JSON_INT_LIMIT else str(value)


def validate_model(
    n: int,
    m: int,
    vertices: Sequence[Sequence[int]],
    char_vectors: Sequence[Sequence[int]],
) -> list[str]:
    """All violated constraints, in a fixed order; empty means valid."""
    violations: list[str] = []
    if n < 1:
        violations.append(f"dimension n must be at least 1, got {n}")
    if m < 1:
        violations.append(f"facet count m must be at least 1, got {m}")
    if violations:
        return violations

    structural = True
    for vid, vert in enumerate(vertices):
        idx = list(vert)
        if len(idx) != n or len(set(idx)) != n:
            violations.append(
                f"vertex {vid}: needs exactly {n} distinct facet indices, got {list(vert)}"
            )
            structural = False
            continue
        bad = [i for i in idx if not (0 <= i < m)]
        if bad:
            violations.append(f"vertex {vid}: facet indices {bad} out of range [0, {m})")
            structural = False
    if not vertices:
        violations.append("model has no vertices")
        structural = False

    if len(char_vectors) != m:
        violations.append(f"expected {m} characteristic vectors, got {len(char_vectors)}")
        structural = False
    for i, vec in enumerate(char_vectors):
        if len(vec) != n:
            violations.append(
                f"characteristic vector {i}: length {len(vec)} does not match n={n}"
            )
            structural = False
    if not structural:
        return violations

    normalized = [tuple(sorted(v)) for v in vertices]
    seen: dict[tuple[int, ...], int] = {}
    for vid, vert in enumerate(normalized):
        if vert in seen:
            violations.append(f"vertices {seen[vert]} and {vid} coincide: {list(vert)}")
        else:
            seen[vert] = vid

    used = set(itertools.chain.from_iterable(normalized))
    missing = sorted(set(range(m)) - used)
    if missing:
        violations.append(f"facets {missing} appear in no vertex")

    for i, vec in enumerate(char_vectors):
        if all(e == 0 for e in vec):
            violations.append(f"characteristic vector {i} is zero")
        elif not is_primitive(vec):
            violations.append(f"characteristic vector {i} = {list(vec)} is not primitive")

    # Independence at every face follows from independence at the vertices,
    # since every face's facet set sits inside some vertex's.
    if not any("is zero" in v or "not primitive" in v for v in violations):
        for vid, vert in enumerate(normalized):
            cols = mat_from_cols([char_vectors[i] for i in vert])
            if det(cols) == 0:
                violations.append(
                    f"characteristic vectors are dependent at vertex {vid} = {list(vert)}"
                )
    return violations


def make_model(
    n: int,
    m: int,
    vertices: Sequence[Sequence[int]],
    char_vectors: Sequence[Sequence[int]],
    name: str | None = None,
) -> Model:
    """Validated model; raises ModelValidationError listing every defect."""
    verts = tuple(tuple(int(i) for i in v) for v in vertices)
    lams = tuple(as_vec(v) for v in char_vectors)
    violations = validate_model(n, m, verts, lams)
    if violations:
        raise ModelValidationError(violations)
    return Model(
        n=n,
        m=m,
        vertices=tuple(sorted(tuple(sorted(v)) for v in verts)),
        char_vectors=lams,
        name=name,
    )


def parse_model(text: str | bytes) -> Model:
    """Parse and validate the JSON model format.

    Schema: {"name": str?, "n": int, "m": int, "vertices": [[int, ...], ...],
    "lambda": [[int, ...], ...]}.  Integers of magnitude >= 2**53 may be
    given as decimal strings.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelValidationError([f"malformed JSON: {exc}"]) from exc
    if not isinstance(data, dict):
        raise ModelValidationError(["top-level JSON value must be an object"])

    violations: list[str] = []
    for key in ("n", "m", "vertices", "lambda"):
        if key not in data:
            violations.append(f"missing required field {key!r}")
    if violations:
        raise ModelValidationError(violations)

    n = _coerce_int(data["n"], "n", violations)
    m = _coerce_int(data["m"], "m", violations)
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        violations.append("name must be a string")

    def parse_rows(key: str) -> list[tuple[int, ...]]:
        rows = data[key]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            violations.append(f"{key} must be a list of lists")
            return []
        out = []
        for ri, row in enumerate(rows):
            entries = []
            for value in row:
                entry = _coerce_int(value, f"{key}[{ri}]", violations)
                entries.append(0 if entry is None else entry)
            out.append(tuple(entries))
        return out

    vertices = parse_rows("vertices")
    lams = parse_rows("lambda")
    if violations or n is None or m is None:
        raise ModelValidationError(violations)
    return make_model(n, m, vertices, lams, name=name)


def load_model(path) -> Model:
    with open(path, "rb") as handle:
        return parse_model(handle.read())


def model_to_dict(model: Model) -> dict:
    out: dict = {
        "n": model.n,
        "m": model.m,
        "vertices": [list(v) for v in model.vertices],
        "lambda": [[_int_to_json(e) for e in vec] for vec in model.char_vectors],
    }
    if model.name is not None:
        out["name"] = model.name
    return out


def model_to_json(model: Model) -> str:
    return json.dumps(model_to_dict(model), sort_keys=True, indent=2) + "\n"


@lru_cache(maxsize=256)
def faces(model: Model) -> tuple[Face, ...]:
    """Every face, ordered by (codimension, facet set).

    In a simple polytope the faces through a vertex are exactly the
    subsets of its facet set, so the face list is the union of those
    subsets over all vertices, each reported once.
    """
    vertex_sets = [frozenset(v) for v in model.vertices]
    found: set[tuple[int, ...]] = set()
    for vert in model.vertices:
        for r in range(model.n + 1):
            found.update(itertools.combinations(vert, r))
    ordered = sorted(found, key=lambda s: (len(s), s))
    out = []
    for facet_set in ordered:
        fs = frozenset(facet_set)
        vertex_ids = tuple(i for i, vs in enumerate(vertex_sets) if fs <= vs)
        out.append(Face(facet_set=facet_set, dim=model.n - len(facet_set), vertex_ids=vertex_ids))
    return tuple(out)


def face_by_indices(model: Model, facet_set: Sequence[int]) -> Face:
    key = tuple(sorted(facet_set))
    for face in faces(model):
        if face.facet_set == key:
            return face
    raise ValueError(f"{list(key)} is not a face of the model")


def subfaces(face: Face, model: Model) -> list[Face]:
    """Faces of the sub-polytope: faces whose facet set contains this one's."""
    fs = set(face.facet_set)
    return [h for h in faces(model) if fs <= set(h.facet_set)]


def f_vector(face: Face, model: Model) -> tuple[int, ...]:
    """(f_0, ..., f_d): counts of i-dimensional faces of the sub-polytope."""
    counts = [0] * (face.dim + 1)
    for h in subfaces(face, model):
        counts[h.dim] += 1
    return tuple(counts)


def h_vector(face: Face, model: Model) -> tuple[int, ...]:
    """h-vector of the (simple) face: h_i is the coefficient of t^(d-i)
    in sum_j f_j (t-1)^j.  These are the even Betti numbers of the
    orbifold piece living over the face."""
    fv = f_vector(face, model)
    t_minus_1 = Poly((-1, 1))
    acc = Poly.zero()
    for j, count in enumerate(fv):
        acc = acc + count * t_minus_1**j
    coeffs = list(acc.coeffs) + [0] * (face.dim + 1 - len(acc.coeffs))
    return tuple(reversed(coeffs[: face.dim + 1]))


def vertex_matrix(model: Model, vertex: Sequence[int]) -> IntMat:
    """Characteristic vectors at a vertex as columns, in increasing facet order."""
    idx = tuple(sorted(vertex))
    if idx not in model.vertices:
        raise ValueError(f"{list(idx)} is not a vertex of the model")
    return mat_from_cols([model.char_vectors[i] for i in idx])


def vertex_sign(model: Model, vertex: Sequence[int]) -> int:
    """Sign of the vertex determinant under the fixed column ordering.

    The increasing-facet-index convention is a choice; only |det| is
    convention-free, so signs are reported but never asserted against.
    """
    d = det(vertex_matrix(model, vertex))
    return 1 if d > 0 else -1


def positively_omnioriented(model: Model) -> bool:
    """True when every vertex sign is +1 under the fixed convention."""
    return all(vertex_sign(model, v) == 1 for v in model.vertices)


def apply_unimodular(model: Model, u: IntMat) -> Model:
    """Change basis of the ambient lattice: every vector becomes u @ vector."""
    if abs(det(u)) != 1:
        raise ValueError("basis change must be unimodular")
    return make_model(
        model.n,
        model.m,
        model.vertices,
        [mat_vec(u, vec) for vec in model.char_vectors],
        name=model.name,
    )


def relabel_facets(model: Model, perm: Sequence[int]) -> Model:
    """Apply a facet permutation consistently: perm[old] = new."""
    if sorted(perm) != list(range(model.m)):
        raise ValueError("perm must be a permutation of the facet indices")
    new_lams = [None] * model.m
    for old, vec in enumerate(model.char_vectors):
        new_lams[perm[old]] = vec
    new_vertices = [tuple(sorted(perm[i] for i in v)) for v in model.vertices]
    return make_model(model.n, model.m, new_vertices, new_lams, name=model.name)


def random_unimodular(rng: random.Random, n: int, ops: int = 3) -> IntMat:
    """Product of a few elementary matrices; always determinant +-1."""
    mat = [list(row) for row in
           [[1 if i == j else 0 for j in range(n)] for i in range(n)]]
    for _ in range(ops):
        kind = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if kind == 0 and i != j:
            c = rng.choice((-1, 1))
            mat[i] = [a + c * b for a, b in zip(mat[i], mat[j])]
        elif kind == 1 and i != j:
            mat[i], mat[j] = mat[j], mat[i]
        elif kind == 2:
            mat[i] = [-a for a in mat[i]]
    return tuple(tuple(row) for row in mat)


def _random_simplex_model(rng: random.Random, n: int, index: int) -> Model | None:
    """Simplex over n+1 facets: unit vectors plus one random last vector,
    kept only when the result validates and every age is integral."""
    from .sectors import is_quasi_sl

    vertices = list(itertools.combinations(range(n + 1), n))
    lams = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roll = rng.random()
    if roll < 0.25:
        last = tuple([-1] * n)
    elif roll < 0.55:
        # Cyclic-quotient pattern: integral ages for every k.
        k = rng.randrange(2, 8)
        last = (1,) + (k,) * (n - 1)
    else:
        last = tuple(rng.choice((-3, -2, -1, 1, 2, 3)) for _ in range(n))
    try:
        if not is_primitive(last):
            return None
        model = make_model(n, n + 1, vertices, lams + [last], name=f"fuzz-n{n}-{index}")
    except (ValueError, ModelValidationError):
        return None
    if not is_quasi_sl(model):
        return None
    return model


def generate_test_models(
    seed: int, count: int, n: int = 2, budget: int = 400
) -> list[Model]:
    """Deterministic pseudo-random family of valid quasi-SL models.

    Starts from simplex models with a random compatible last vector and
    mutates with valid blowups and unimodular basis changes.  Stops
    quietly when `budget` construction attempts are spent, so the result
    can be shorter than `count`.
    """
    if n not in (2, 3, 4):
        raise ValueError(f"generator supports n in {{2, 3, 4}}, got {n}")
    from . import blowup as blowup_mod
    from .sectors import is_quasi_sl

    rng = random.Random(seed)
    out: list[Model] = []
    attempts = 0
    while len(out) < count and attempts < budget:
        attempts += 1
        model = _random_simplex_model(rng, n, len(out))
        if model is None:
            continue
        for _ in range(rng.randrange(3)):
            roll = rng.random()
            if roll < 0.45 and model.m < n + 4:
                candidates = blowup_mod.crepant_candidates(model)
                if candidates:
                    spec = rng.choice(candidates)
                    try:
                        blown = blowup_mod.blow_up(model, spec)
                    except (ValueError, ModelValidationError):
                        continue
                    if is_quasi_sl(blown):
                        model = blown
            elif roll < 0.85:
                try:
                    model = apply_unimodular(model, random_unimodular(rng, n))
                except ModelValidationError:
                    pass
            else:
                # Non-crepant truncation: unit weights on a random face.
                chosen = [f for f in faces(model) if f.codim >= 2]
                if not chosen:
                    continue
                face = rng.choice(chosen)
                try:
                    spec = blowup_mod.make_blowup_spec(
                        model, face.facet_set, [1] * face.codim
                    )
                    blown = blowup_mod.blow_up(model, spec)
                except (ValueError, ModelValidationError):
                    continue
                if is_quasi_sl(blown):
                    model = blown
        out.append(
            Model(
                n=model.n,
                m=model.m,
                vertices=model.vertices,
                char_vectors=model.char_vectors,
                name=f"fuzz-n{n}-{len(out)}",
            )
        )
    return out
