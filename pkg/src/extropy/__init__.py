"""Extropy, extropy rate, and rate-based feature selection for discrete data."""

from .distributions import (
    JointPmf,
    LogBase,
    NumericalDomainError,
    Pmf,
    ValidationError,
)
from .measures import (
    conditional_extropy,
    duality_gap,
    extropy,
    generalized_conditional_identity_gap,
    generalized_extropy,
    joint_extropy,
    joint_extropy_bounds,
    marginal,
    rescaled_entropy_identity_gap,
    shannon_entropy,
    simpson_diversity,
)
from .rates import (
    RateEstimate,
    empirical_joint,
    finite_entropy_rate,
    finite_extropy_rate,
    iid_rate_limit_check,
    naive_rate_sequence,
    prefix_rate_profile,
    sequence_extropy_rate,
)
from .complexity import (
    ComplexityReport,
    SeriesSample,
    approximate_entropy,
    complexity_report,
    generate_series,
    permutation_entropy,
)
from .dynamics import MapConfig, ScanResult, bifurcation_scan, henon_orbit, logistic_orbit
from .selection import (
    ExtropyRateSelector,
    FeatureMatrix,
    FilterScoreSelector,
    SelectionResult,
    anova_f_score,
    chi_square_score,
    mutual_information_score,
    rank_features,
    select_features_extropy,
)
from .forest import (
    ForestClassifier,
    Metrics,
    classification_metrics,
    make_classification_data,
    stratified_split,
)
from .dataio import (
    ColumnDiscretizer,
    Dataset,
    DiscretizeSpec,
    dataset_to_feature_matrix,
    discretize,
    read_csv,
    read_pmf_file,
    write_csv,
    write_pmf_file,
)

__version__ = "0.1.0"
