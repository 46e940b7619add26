"""vclab: exact VC-dimension laboratory for axis-aligned concept classes.

Everything is computed over exact rationals: carve-out decisions (does some
concept of a class intersect a finite point set in exactly a chosen
subset?), shattering certificates, shattering coefficients, witness
constructions, and exhaustive symmetry-reduced VC searches for the
order-driven classes.
"""

from .carve import (
    AxisCut,
    CarveWitness,
    ClassDescriptor,
    ClassKind,
    anchored,
    boxes,
    carve,
    carve_axis_cut,
    carve_box,
    carve_cube,
    carve_degenerate,
    carve_feasible,
    cubes,
    degenerate_balls,
    origin_anchored,
)
from .constructions import (
    DownwardProjection,
    ExtremalCertificate,
    collapse_anchor,
    collapse_anchor_box,
    collapse_anchor_points,
    cube_downward_projection,
    cube_witness,
    expand_anchor_box,
    extremal_certificate,
    origin_ball_witness,
    perturb_to_injective,
)
from .errors import (
    BudgetExceededError,
    CapExceededError,
    DomainError,
    ParseError,
    VclabError,
)
from .geometry import Box, Cube, Interval, Point, PointSet, project, rect_hull
from .scalars import NEG_INF, POS_INF, Scalar, as_scalar, parse_scalar, scalar_str
from .serialize import (
    SCHEMA_VERSION,
    canonical_dumps,
    digest,
    format_mask,
    load_point_set,
    loads_exact,
    make_report,
    parse_mask,
    point_set_from_json,
    point_set_to_json,
    save_point_set,
)
from .verify import (
    FAST_ITEMS,
    ItemResult,
    VerificationReport,
    class_paper_vc,
    run_verification,
)
from .search import (
    CubeSearchReport,
    OrderConfig,
    ResolveReport,
    SymmetryGroup,
    VcSearchReport,
    enumerate_order_types,
    exact_vc_ordinal,
    max_shattering_coefficient,
    random_cube_search,
    rank_realization,
    resolve_even_degenerate,
    symmetries_for,
)
from .shatter import (
    CoefficientReport,
    ShatteringCertificate,
    ShatterVerdict,
    VcLowerBound,
    canonical_mask_order,
    is_shattered,
    sauer_shelah_bound,
    shattering_count,
    vc_lower_bound_on,
)

__version__ = "0.1.0"

__all__ = [
    "AxisCut",
    "Box",
    "BudgetExceededError",
    "CapExceededError",
    "CarveWitness",
    "ClassDescriptor",
    "ClassKind",
    "CoefficientReport",
    "Cube",
    "CubeSearchReport",
    "DomainError",
    "DownwardProjection",
    "ExtremalCertificate",
    "Interval",
    "NEG_INF",
    "OrderConfig",
    "POS_INF",
    "ParseError",
    "Point",
    "PointSet",
    "ResolveReport",
    "Scalar",
    "ShatterVerdict",
    "ShatteringCertificate",
    "SymmetryGroup",
    "VcLowerBound",
    "VcSearchReport",
    "VclabError",
    "anchored",
    "as_scalar",
    "boxes",
    "canonical_mask_order",
    "carve",
    "carve_axis_cut",
    "carve_box",
    "carve_cube",
    "carve_degenerate",
    "carve_feasible",
    "collapse_anchor",
    "collapse_anchor_box",
    "collapse_anchor_points",
    "cube_downward_projection",
    "cube_witness",
    "cubes",
    "degenerate_balls",
    "enumerate_order_types",
    "exact_vc_ordinal",
    "expand_anchor_box",
    "extremal_certificate",
    "is_shattered",
    "max_shattering_coefficient",
    "origin_anchored",
    "origin_ball_witness",
    "parse_scalar",
    "perturb_to_injective",
    "project",
    "random_cube_search",
    "rank_realization",
    "rect_hull",
    "resolve_even_degenerate",
    "sauer_shelah_bound",
    "scalar_str",
    "shattering_count",
    "symmetries_for",
    "vc_lower_bound_on",
    "SCHEMA_VERSION",
    "canonical_dumps",
    "digest",
    "format_mask",
    "load_point_set",
    "loads_exact",
    "make_report",
    "parse_mask",
    "point_set_from_json",
    "point_set_to_json",
    "save_point_set",
    "FAST_ITEMS",
    "ItemResult",
    "VerificationReport",
    "class_paper_vc",
    "run_verification",
]
