"""Geometry of the space of oriented geodesics of hyperbolic 3-space.

Core objects: the hyperboloid model (``lorentz``), oriented geodesics with
Jacobi-field calculus and the two neutral metrics (``geodesics``),
classifiers for candidate geodesic foliations (``foliation``), and the
closed-form study families (``families``).  A reporting CLI lives in
``cli``.
"""

__version__ = "0.1.0"

from .errors import (
    BaseMismatchError,
    ConfigError,
    GeodesicMismatchError,
    GeometryError,
    NonOrthogonalJacobiError,
    NumericalError,
)
from .lorentz import (
    MODEL_TOL,
    ORIGIN,
    BoundaryPoint,
    HPoint,
    HTangent,
    boundary_from_sphere,
    convert_model,
    cross,
    dist,
    exp_map,
    from_ball,
    from_half_space,
    log_map,
    mink_inner,
    mink_vec,
    project_to_hyperboloid,
    project_to_tangent,
    same_point,
    same_ray,
    sphere_coords,
    to_ball,
    to_half_space,
    transport_along,
    transport_to,
)
from .geodesics import (
    ChartPoint,
    JacobiData,
    OrientedGeodesic,
    asymptote_vector,
    canonicalize,
    chart_of_geodesic,
    cross_metric,
    dist_to_geodesic,
    endpoint_velocity_rank,
    gauss_map,
    gauss_map_jacobian,
    geodesic_dist_sq,
    geodesic_from_chart,
    jacobi_eval,
    killing_metric,
    make_geodesic,
    parallel_transport,
    same_geodesic,
    stability_classify,
    svd_rank,
)
from .foliation import (
    FD_STEP,
    VERDICT_TOL,
    VERDICTS,
    ClassificationReport,
    CriticalPoint,
    EigenCheck,
    FoliationChart,
    IntersectionResult,
    SampleRecord,
    UnitField,
    ball_samples,
    chart_tangent,
    chart_variation_raw,
    check_geodesic_field,
    classify_chart,
    classify_point,
    covariant_differential,
    critical_point_scan,
    geodesics_intersect,
    grid_params,
    initial_value_rank,
    jacobi_variation_chart,
    nondegeneracy_eigencheck,
    operator_eigencheck,
    ring_growth_evidence,
)
from .families import (
    LambdaScan,
    PolarFrame,
    SpiralParams,
    VERTICAL_END,
    cross_form_matrix,
    definiteness_margin,
    plane_normal_family,
    polar_frame,
    scan_lambda_max,
    spiral_chart,
    spiral_direction,
    vertical_family,
)
