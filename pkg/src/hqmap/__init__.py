"""Numerical toolkit for harmonic quasiconformal mappings of the unit disk.

Covers the pointwise derivative calculus of maps f = h + conj(g), their
radial image lengths and growth gauge, hyperbolic geometry of the disk,
margin-reporting inequality checks, radial John-disk criteria, and the
Poisson-kernel boundary functional.
"""

from .maps import (
    AnalyticPart,
    CatalogPart,
    ComboPart,
    Config,
    DegenerateMapError,
    DiskDomainError,
    HarmonicMap,
    HqmapError,
    MobiusPart,
    ParameterError,
    SafeRadiusWarning,
    SenseReversalError,
    SeriesPart,
    WirtingerPair,
    alpha_for,
    normalize,
    qc_constant,
)
from .corpus import default_corpus, load_corpus, map_from_json, map_to_json, save_corpus
from .geometry import (
    RegionSample,
    boundary_arc,
    boundary_box,
    boundary_distance,
    box_contains,
    disk_grid,
    hyp_dist,
    stolz_angle_check,
    stolz_contains,
    stolz_sample,
)
from .radial import (
    ClassicalBoundCheck,
    GrowthResult,
    RadialProfile,
    classical_bounds,
    growth_gauge,
    growth_ratio,
    radial_length,
    radial_profile,
    ray_max,
)
from .transforms import (
    TransformRecord,
    affine,
    koebe_transform,
    preschwarzian_margin,
    preschwarzian_sup,
    rotate,
    shear_qc,
    small_preschwarzian,
)
from .bounds import (
    CheckReport,
    check_arc_image_diameter,
    check_boundary_dist_lower,
    check_derivative_value_bound,
    check_displacement,
    check_distortion,
    check_harnack,
    check_ray_quotient,
    check_two_point_growth,
    check_weighted_deriv_growth,
    derivative_bound_constant,
    harnack_constant,
)
from .johndisk import (
    DecayFit,
    JohnEstimate,
    criterion_ii,
    criterion_iii,
    decay_fit,
    diam_ratio_check,
    holder_check,
    john_estimate,
)
from .poisson import (
    BoundaryProfile,
    boundary_profile,
    hardy_mean,
    poisson_csv,
    poisson_functional,
    poisson_scan,
    poisson_sup,
    pommerenke_bracket,
)

__version__ = "0.1.0"
