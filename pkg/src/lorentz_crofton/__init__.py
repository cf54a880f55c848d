"""Numerical geometry of closed spacelike curves in the 3D Lorentz space.

Curves live in R^3_1 with the inner product x1 y1 + x2 y2 - x3 y3; their
unit tangents trace spacelike curves on the de Sitter sphere, whose length
(the total curvature) is tied to intersection counts with closed geodesics
by Crofton-type identities over the hyperbolic plane of poles. The package
verifies those identities and the resulting total-curvature inequalities
at desk scale.
"""

__version__ = "0.1.0"

from .lorentz import (
    CausalClass,
    apply_transform,
    boost,
    causal_type,
    is_orthochronous_lorentz,
    lorentz_cross,
    minkowski_inner,
    orthochronous_transform,
    plane_causal_type,
    random_orthochronous_transform,
    rotation,
)
from .curves import (
    ArcLengthCurve,
    ClosedCurve,
    FrenetData,
    StrongSpacelikeReport,
    certify_strong_spacelike,
    frenet_apparatus,
    reparametrize_arclength,
    total_curvature,
    winding_index,
)
from .desitter import (
    AdaptedFrame,
    IntersectionResult,
    PolarGeodesic,
    SphericalCurve,
    adapted_frame,
    geodesic_from_pole,
    intersection_count,
    intersection_counts_batch,
    lemma_threshold,
    tangent_indicatrix,
    to_latlong,
)
from .hyperbolic import (
    DiskRegion,
    choose_radius,
    from_polar,
    h2_area,
    pole_patch_area_element,
    sample_disk,
)
from .crofton import (
    VerificationReport,
    global_residual,
    lemma_2i_report,
    localized_lhs_mc,
    localized_lhs_quadrature,
    localized_report,
    localized_rhs,
    verify_fary_milnor,
    verify_fenchel,
)
from . import gallery
from .specfile import load_curve
