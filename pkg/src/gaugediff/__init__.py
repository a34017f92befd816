"""Diffusions with piecewise-linear gauge drifts and their exact invariant laws."""

__version__ = "0.1.0"

from .errors import EnumerationLimitError, GaugeDiffError, NotRecurrentError, StabilizerError
from .gauge import (
    CoxeterGauge,
    GraphGauge,
    MassGauge,
    RankGauge,
    SplitGauge,
    argmax_element,
    drift,
    evaluate_k,
    rank_alphas,
    recurrence_constant,
)
from .groups import GroupElement, GroupFamily, enumerate_group, orbit
from .cones import build_decomposition, build_graph_decomposition, cone_basis, extreme_rays
from .exact import closed_form_rates, exact_sample, exponential_coordinates, hmap_D
from .permlaw import beta_limit_distance, mode_check, perm_pmf, rank_pmf, urn_pmf
from .sim import FunctionalSpec, SimConfig, run
from .streams import make_rng
