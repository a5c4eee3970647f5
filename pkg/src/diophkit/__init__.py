"""Exact tools for polarized subschemes of projective space.

Everything is computed over the rationals with exact arithmetic: truncated
expansion coefficients of an ample class along a subscheme, weighted ideal
filtrations with their jump profiles and adapted bases, intersection theory
on blow-ups of the plane in up to three points, Weil and height functions
place by place, and exhaustive scans of the resulting height inequality.
"""

from .beta import (
    BetaReport,
    ConvergenceRow,
    CrosscheckReport,
    beta_blowup_crosscheck,
    beta_convergence,
    beta_truncated,
    convergence_csv,
    ideal_power_terms,
)
from .experiments import (
    ConfigError,
    FourLinesRow,
    InequalityConfig,
    ScanReport,
    ScanRow,
    four_lines,
    four_lines_config,
    four_lines_exclusions,
    four_lines_table,
    four_lines_table_csv,
    sample_points,
    scan_inequality,
    sigma_select,
)
from .filtration import (
    AdaptedBasis,
    BoundReport,
    FiltrationProfile,
    InconsistentProfilesError,
    ProfileError,
    F_value,
    adapted_basis,
    build_profile,
    common_adapted_basis,
    concavity_bound,
    is_adapted,
    mu_value,
    scale_check,
)
from .graded import (
    CatalogError,
    PositionReport,
    Subscheme,
    check_general_position,
    common_support_dim,
    graded_dim_filtration_ideal,
    graded_dim_ideal_power,
)
from .heights import (
    PLACE_INF,
    Place,
    PlaceError,
    PlaceSet,
    ProjectivePoint,
    SupportError,
    global_weil_norm,
    height,
    height_norm,
    parse_place,
    product_formula_holds,
    proximity,
    weil,
    weil_floor_norm,
    weil_norm,
)
from .polynomials import FormError, HomogeneousForm, ParseError, parse_form
from .surface import (
    ClosedFormReport,
    ComparisonReport,
    NotNefError,
    PicardClass,
    SeshadriReport,
    SurfaceError,
    SurfaceModel,
    UnsupportedClassError,
    beta_closed_form,
    beta_surface_truncated,
    compare_beta_seshadri,
    format_class,
    parse_class,
    three_point_blowup,
    weighted_lines_class,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
