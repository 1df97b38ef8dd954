"""Distance spectral radius, fractional matchings and graph factors.

Exact combinatorics (deficiency, fractional matching number, factor
predicates), distance spectra by power iteration, the closed-form cubics of
the extremal families, and a verification harness over all of them.
"""

from .errors import (
    BracketingError,
    CapabilityError,
    ConvergenceError,
    DisconnectedGraphError,
    GraphParseError,
    InvalidParameterError,
)
from .graph import (
    ExtremalParams,
    Graph,
    all_pairs_distances,
    complete_graph,
    cycle_graph,
    disjoint_union,
    extremal_graph,
    from_graph6,
    is_connected,
    join,
    min_degree,
    path_graph,
    random_min_degree_graph,
    standard_graph,
    star_graph,
    to_graph6,
)
from .matching import (
    DeficiencyResult,
    FractionalMatchingNumber,
    fractional_matching_number,
    half_integral_oracle,
    has_fractional_perfect_matching,
    has_k2_ck_factor,
    has_star_factor,
    isolated_count,
    max_deficiency,
)
from .report import VerificationReport
from .spectral import (
    CubicPoly,
    QuotientMatrix,
    SpectralResult,
    char_poly_family,
    distance_spectral_radius,
    extremal_quotient,
    largest_real_root,
    quotient_matrix,
)

__version__ = "0.1.0"
