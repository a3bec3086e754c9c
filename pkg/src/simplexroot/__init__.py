"""simplexroot: the root transformation of a simplex, iterated and verified.

The root of a nondegenerate simplex is the image of its contact simplex
under an inversion about the incenter composed with a point reflection; it
contains the circumscribed ball of the source, and iterating the map makes
the even- and odd-index circumcenters converge separately.  This package
computes the construction, checks every identity numerically, and measures
the convergence.
"""

from .geometry import (
    DEGENERACY_THRESHOLD,
    OVERFLOW_RADIUS,
    REL_TOL,
    DegenerateSimplexError,
    GeometryError,
    Hyperplane,
    OverflowGuardError,
    Simplex,
    Sphere,
    barycentric,
    circumsphere,
    contact_points,
    facet_hyperplane,
    facet_hyperplanes,
    from_barycentric,
    insphere,
    is_degenerate,
    regular_simplex,
    signed_volume,
)
from .iteration import (
    ConvergenceReport,
    IterationConfig,
    TrajectoryRecord,
    estimate_rho,
    iterate,
    subsequence_limits,
    triangle_angle_deviations,
    triangle_angles,
)
from .oracles import (
    SampleConfig,
    gram_matrix,
    mc_ball_in_simplex,
    random_simplex,
    sphere_fit_residual,
)
from .roots import (
    RootResult,
    check_containment,
    check_gram_identity,
    check_incenter_interior,
    check_root_circumsphere,
    radius_chain,
    root,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
