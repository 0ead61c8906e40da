"""nextviz: next-step visualization recommendations for tabular data.

Given a dataset and the visualization a user is currently looking at, the
library enumerates the charts reachable by one analytical move (adding,
removing, or swapping an attribute or filter), groups them into action
categories, and ranks each category by an interestingness objective chosen
for the chart type.
"""
from .actions import (
    CATEGORY_PRECEDENCE,
    CORRELATION,
    DISTRIBUTION,
    ENHANCE,
    FILTER,
    GENERALIZE,
    PIVOT,
    SIMILARITY,
    ActionCategory,
    correlation_candidates,
    distribution_candidates,
    enhance,
    filter_add,
    filter_swap,
    generalize,
    pivot,
    similarity_candidates,
)
from .dataset import (
    AggregatedData,
    ColumnMeta,
    Dataset,
    DatasetError,
    LoadOptions,
    aggregate,
    column_stats,
    from_columns,
    infer_schema,
    load_csv,
    load_schema_overrides,
)
from .objectives import (
    InterestingnessScore,
    deviation,
    euclidean_similarity,
    mutual_information,
    non_uniformity,
    separability,
    skewness,
    spearman,
)
from .recommend import (
    RecommendationCategory,
    RecommendationItem,
    RecommendationSet,
    RecommenderConfig,
    applicable_categories,
    flatten_baseline,
    generate_category,
    recommend,
    recset_from_json,
)
from .scoring import ScoringConfig, score_viz
from .specs import (
    EncodingError,
    FilterPredicate,
    SpecDiff,
    SpecError,
    VizSpec,
    auto_encode,
    canonicalize,
    encodable,
    spec_diff,
    spec_from_json,
    validate_spec,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
