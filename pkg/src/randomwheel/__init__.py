"""Random wheel classifier for mixed categorical/numeric tabular data.

Trains an instance-based ensemble of randomized trials over attribute
combinations (factors), recommends a class with a single confidence score,
and explains each recommendation with per-attribute percentage
contributions.
"""

from .dataset import (
    AttributeSchema,
    Dataset,
    Record,
    attribute_stddev,
    class_prior,
    count_bins,
    parse_dataset,
    parse_schema,
    serialize_dataset,
    stratified_folds,
)
from .errors import (
    DomainError,
    FactorUnusableError,
    ModelFormatError,
    NoInformativeFactorsError,
    ParseError,
    RandomWheelError,
    UnclassifiableError,
)
from .evaluate import (
    ConfidenceSplit,
    ConfusionMatrix,
    CrossValidationResult,
    MetricsReport,
    compute_metrics,
    confidence_split,
    cross_validate,
    export_confidence_csv,
)
from .explain import AttributionReport, aggregate_explanation, trial_contribution
from .factors import (
    Factor,
    FactorScore,
    FactorTable,
    build_factor_table,
    default_bin_ratio,
    enumerate_factors,
    factor_bin_ratio,
    score_factor,
)
from .wheel import (
    FactorForces,
    Neighborhood,
    RandomWheelModel,
    Recommendation,
    TrialResult,
    WheelConfig,
    elementary_force,
    extract_neighborhood,
    load_model,
    recommend,
    resultant_force,
    run_trial,
    save_model,
    train,
    trial_rng,
    weightage,
)

__version__ = "0.1.0"

__all__ = [
    "AttributeSchema",
    "AttributionReport",
    "ConfidenceSplit",
    "ConfusionMatrix",
    "CrossValidationResult",
    "Dataset",
    "DomainError",
    "Factor",
    "FactorForces",
    "FactorScore",
    "FactorTable",
    "FactorUnusableError",
    "MetricsReport",
    "ModelFormatError",
    "Neighborhood",
    "NoInformativeFactorsError",
    "ParseError",
    "RandomWheelError",
    "RandomWheelModel",
    "Recommendation",
    "Record",
    "TrialResult",
    "UnclassifiableError",
    "WheelConfig",
    "aggregate_explanation",
    "attribute_stddev",
    "build_factor_table",
    "class_prior",
    "compute_metrics",
    "confidence_split",
    "count_bins",
    "cross_validate",
    "default_bin_ratio",
    "elementary_force",
    "enumerate_factors",
    "export_confidence_csv",
    "extract_neighborhood",
    "factor_bin_ratio",
    "load_model",
    "parse_dataset",
    "parse_schema",
    "recommend",
    "resultant_force",
    "run_trial",
    "save_model",
    "score_factor",
    "serialize_dataset",
    "stratified_folds",
    "train",
    "trial_contribution",
    "trial_rng",
    "weightage",
]
