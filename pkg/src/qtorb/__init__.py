"""Chen-Ruan Betti numbers of quasitoric orbifolds from combinatorial
models, combinatorial crepant blowups, and exact verification that the
Betti numbers survive them."""

from .blowup import (
    BlowupError,
    BlowupSpec,
    McKayReport,
    Subdivision,
    TriangulationCheck,
    blow_up,
    check_triangulation_identity,
    crepant_candidates,
    induced_triangulation,
    is_crepant,
    make_blowup_spec,
    mckay_check,
    star_subdivide,
    trivial_subdivision,
)
from .cohomology import (
    CrReport,
    IdentityCheck,
    check_age_partition,
    check_torus_stratification,
    cr_report,
    e_torus,
    pp_cr_direct,
    pp_cr_via_closures,
    pp_cr_via_strata,
    pp_ordinary,
)
from .ehrhart import (
    LatticeSimplex,
    dilate_count,
    dilate_count_fast,
    ehrhart_numerator,
    face_simplex,
    simplex_in_face,
)
from .exact import Poly, Rat, binom, rat_from_str, rat_to_str
from .intlat import (
    IntMat,
    IntVec,
    OutsideSpanError,
    RankDeficientError,
    coords_in_basis,
    det,
    invariant_factors,
    is_primitive,
    lattice_index,
    saturation,
    smith_normal_form,
)
from .model import (
    Face,
    Model,
    ModelValidationError,
    apply_unimodular,
    f_vector,
    face_by_indices,
    faces,
    generate_test_models,
    h_vector,
    load_model,
    make_model,
    model_to_dict,
    model_to_json,
    parse_model,
    positively_omnioriented,
    random_unimodular,
    relabel_facets,
    subfaces,
    vertex_matrix,
    vertex_sign,
)
from .sectors import (
    BoxElement,
    NonIntegralAgeError,
    age_polynomial,
    age_polynomial_of_columns,
    box_by_exhaustion,
    box_interior,
    box_of_columns,
    ensure_quasi_sl,
    enumerate_box,
    interior_age_polynomial,
    is_quasi_sl,
    local_group_order,
    quasi_sl_violations,
    sectors,
)

__version__ = "0.1.0"
