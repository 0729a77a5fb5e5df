"""Signature and logsignature feature extraction for multivariate time series.

The core transform maps a series to the iterated integrals of its
piecewise-linear interpolation, truncated at a chosen depth.  Around it sit
composable augmentations, window families, and rescalings, plus dataset
parsing and a CLI for reproducible feature-extraction runs.
"""

from .augment import (
    AffineProjection,
    AugmentationSpec,
    Basepoint,
    CoordinateProjection,
    InvisibilityReset,
    LeadLag,
    Time,
    apply_augmentation,
    augment_affine_projection,
    augment_basepoint,
    augment_coordinate_projection,
    augment_invisibility_reset,
    augment_lead_lag,
    augment_time,
)
from .dataset import (
    LabeledDataset,
    NormalizationStats,
    apply_normalizer,
    fit_normalizer,
    parse_csv_long,
    parse_ts_file,
    toy_dataset_path,
    write_csv_long,
    write_features,
)
from .errors import (
    ConfigError,
    DimensionMismatchError,
    EmptyWindowError,
    FeatureBudgetError,
    FitError,
    InvalidInputError,
    InvalidProjectionError,
    NotGroupLikeError,
    ParseError,
    SigmethodError,
    TooShortError,
)
from .pipeline import (
    FeatureSet,
    PipelineConfig,
    canonical_config,
    predict_feature_count,
    run_canonical,
    run_many,
    run_pipeline,
)
from .rescale import RescaleSpec, rescale_post, rescale_pre
from .series import TimeSeries
from .signature import (
    LogSignatureFeatures,
    SignatureFeatures,
    feature_names,
    logsignature,
    signature,
    signature_oracle,
    signature_tensor,
)
from .tensor import (
    LyndonBasis,
    TruncatedTensor,
    identity_tensor,
    logsignature_width,
    lyndon_basis,
    project_to_lyndon,
    signature_width,
    tensor_exp,
    tensor_log,
    tensor_mul,
    witt_number,
)
from .windows import (
    Dyadic,
    Expanding,
    ExpandingCount,
    Global,
    Sliding,
    SlidingCount,
    apply_window,
    parse_window,
    window_count,
)

__version__ = "0.1.0"
