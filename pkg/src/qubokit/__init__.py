"""QUBO modelling toolkit: canonical forms, classical solvers, and
correlation-driven feature selection with an evaluation pipeline."""

from .classify import (
    EvalReport,
    FeatureSetComparison,
    LogisticClassifier,
    Split,
    compare_feature_sets,
    confusion_metrics,
    evaluate,
    nll_gradient,
    nll_loss,
    sigmoid,
    train_logistic,
    train_test_split,
)
from .constraints import at_most_one_pair, cardinality_equals, suggest_penalty
from .correlation import (
    CorrelationProfile,
    average_ranks,
    correlation_profile,
    profile_from_arrays,
    spearman,
)
from .dataset import Dataset, IngestionReport, ingest_csv, ingest_csv_with_report
from .errors import DataError, QubokitError, SolverGuardError
from .model import (
    ENERGY_ATOL,
    IsingModel,
    QuboModel,
    absorb_linear,
    binary_to_spin,
    energy,
    ising_energy,
    ising_to_qubo,
    qubo_to_ising,
    spin_to_binary,
    to_symmetric,
    to_upper_triangular,
)
from .preprocess import (
    CategoryEncoder,
    Standardizer,
    encode_categorical,
    encode_categorical_with_maps,
    normalize,
)
from .selection import DEFAULT_ALPHA, QuboFeatureSelector, build_qubo
from .solvers import (
    EXHAUSTIVE_MAX_VARIABLES,
    SOLVERS,
    ComparisonReport,
    ComparisonRow,
    SolveParams,
    SolveResult,
    assignment_value,
    compare_solvers,
    flip_delta,
    register_solver,
    render_comparison_table,
    solve,
    solve_exhaustive,
    solve_random,
    solve_simulated_annealing,
)

__version__ = "0.1.0"

__all__ = [
    "ENERGY_ATOL",
    "EXHAUSTIVE_MAX_VARIABLES",
    "SOLVERS",
    "DEFAULT_ALPHA",
    "ComparisonReport",
    "ComparisonRow",
    "CorrelationProfile",
    "CategoryEncoder",
    "Dataset",
    "DataError",
    "EvalReport",
    "FeatureSetComparison",
    "IngestionReport",
    "IsingModel",
    "LogisticClassifier",
    "QuboFeatureSelector",
    "QuboModel",
    "QubokitError",
    "SolveParams",
    "SolveResult",
    "SolverGuardError",
    "Split",
    "Standardizer",
    "absorb_linear",
    "assignment_value",
    "at_most_one_pair",
    "average_ranks",
    "binary_to_spin",
    "build_qubo",
    "cardinality_equals",
    "compare_feature_sets",
    "compare_solvers",
    "confusion_metrics",
    "correlation_profile",
    "encode_categorical",
    "encode_categorical_with_maps",
    "energy",
    "evaluate",
    "flip_delta",
    "ingest_csv",
    "ingest_csv_with_report",
    "ising_energy",
    "ising_to_qubo",
    "nll_gradient",
    "nll_loss",
    "normalize",
    "profile_from_arrays",
    "qubo_to_ising",
    "register_solver",
    "render_comparison_table",
    "sigmoid",
    "solve",
    "solve_exhaustive",
    "solve_random",
    "solve_simulated_annealing",
    "spearman",
    "spin_to_binary",
    "suggest_penalty",
    "to_symmetric",
    "to_upper_triangular",
    "train_logistic",
    "train_test_split",
]
