"""Quantitative meaningfulness scoring for binary attribute sets."""

from .calibrate import (
    DEFAULT_GRID,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    CalibrationResult,
    EvalConfig,
    InterpolationCurve,
    MeaningfulnessReport,
    combined_score,
    evaluate_meaningfulness,
    fit_invert,
    gamma_score,
    gen_noise,
    interpolation_curve,
    pipeline_split,
)
from .core import (
    AttributeMatrix,
    MeaningfulSplit,
    ScoreMatrix,
    binarize_scores,
    concat_columns,
    split_meaningful,
    validate_attribute_matrix,
)
from .errors import AttrMetricError
from .matio import (
    RunManifest,
    load_manifest,
    read_matrix,
    read_report,
    write_matrix,
    write_report,
)
from .solver import (
    DistanceValue,
    PairSet,
    SimplexSolution,
    correlation,
    dist_cvx,
    dist_jp,
    dist_lsq,
    distance,
    greedy_pair,
    simplex_lsq,
)
from .synth import (
    MixtureSpec,
    structured_meaningful_set,
    hull_combination_set,
    mixture_set,
    planted_flip_set,
)

__version__ = "0.1.0"
