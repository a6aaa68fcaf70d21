"""Cross-validation error and voting stability for boolean k-NN models.

The library decomposes expected cross-validation error into training error
(accuracy) and sensitivity to label noise (instability), computes exact
vote-flip probabilities for threshold voting over noisy neighborhoods, and
selects the neighborhood size k and vote threshold t that minimize the
estimated error.
"""

from .bits import BitMatrix, BitVector, hamming_distance, hamming_length, negate, xor
from .blackbox import (
    Experiment,
    NoiseSpec,
    TargetFunction,
    draw_experiment,
    evaluate,
    repeat_input_bound,
)
from .decomposition import (
    ErrorDecomposition,
    ExpectedErrors,
    bound_theorem2,
    check_theorem6,
    combine_theorem3,
    expected_rates_malpha,
    expected_rates_mbeta,
    observed_errors,
)
from .estimators import (
    EstimateSet,
    estimate_p_prime,
    estimate_rho_i,
    estimate_set,
    estimate_tau_i,
    estimate_training_error,
)
from .exceptions import (
    ConfigError,
    DimensionError,
    DomainError,
    SingularityError,
    VotestabError,
)
from .knn import (
    Neighborhood,
    VotingConfig,
    nearest,
    predict_malpha,
    predict_mbeta,
    predict_mk,
    similarity,
)
from .selection import SelectionResult, estimate_expected_instability, select
from .stability import (
    NeighborhoodProfile,
    StabilityReport,
    best_case_Pk,
    enumerate_vote_prob,
    flip_rate,
    instability_from_profiles,
    limit_stability_theorem10,
    limit_tau,
    limit_tau_i,
    vote_one_prob,
    worst_case_Pk,
)

__version__ = "0.1.0"
