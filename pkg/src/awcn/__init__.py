"""Information rates of the additive white Cauchy noise (AWCN) channel.

Library layout:

* cauchy: distribution primitives, seeded random streams, stability law
* bounds: closed-form capacity bounds and the antipodal rate (all in nats)
* blahut_arimoto: power-constrained capacity approximation on grids
* gmi: achievable rate of the Cauchy-metric decoder over AWGN
* decoding: bent vs nearest-neighbor metrics, two-codeword error analysis
* vector: multi-branch reception, combining bounds, per-unit-cost slope
* cli: `awcn` command emitting plot-ready CSV/JSON tables
"""

from .blahut_arimoto import (
    BaConvergenceError,
    BaSolution,
    DiscretizedChannel,
    ba_capacity_at_power,
    ba_fixed_multiplier,
    discretize_awcn,
    discretize_inputs,
    mutual_information,
)
from .bounds import (
    EPI_HIGH_POWER_CONST,
    GENIE_HIGH_POWER_CONST,
    BoundsReport,
    ChannelParams,
    QuadratureError,
    bounds_sweep,
    lb_epi,
    mi_antipodal,
    ub_cpuc,
    ub_genie,
)
from .cauchy import (
    CauchyParam,
    RandomStream,
    cauchy_cdf,
    cauchy_entropy,
    cauchy_pdf,
    cauchy_sample,
    combine_scales,
    sample_cauchy,
)
from .decoding import (
    CodewordPair,
    EnsembleSpec,
    McEstimate,
    awcn_ml_metric,
    ml_two_codeword_mc,
    nn_error_limit,
    nn_error_mc,
    nn_error_mc_fixed_pair,
    nn_metric,
    nn_two_codeword_error,
)
from .gmi import GmiEstimate, GmiProblem, gmi_maximize, gmi_objective, gmi_sweep
from .vector import (
    Combiner,
    VectorChannel,
    best_combiner,
    combine,
    vector_cpuc,
    vector_genie_ub,
    vector_power_gain_bracket,
)

__version__ = "0.1.0"
