"""Domain services."""

from domain.services.encoding import (
    aggregate_mean,
    aggregate_sum,
    aggregate_units,
    build_vocab,
    compute_padded_length,
    index_and_pad,
)
from domain.services.evaluation import (
    confusion,
    mcc,
    precision_recall_f1,
    score,
    stratified_kfold,
)
from domain.services.java_lexer import tokenize_java
from domain.services.labeling import build_corpus, majority_vote, split_train_test
from domain.services.metric_preprocessing import (
    KNNImputer,
    MetricPipeline,
    MetricPipelineState,
    ScalerState,
    apply_standardizer,
    drop_constant_columns,
    drop_sparse_columns,
    encode_categoricals,
    fit_standardizer,
    impute_knn,
)

__all__ = [
    "majority_vote",
    "build_corpus",
    "split_train_test",
    "MetricPipeline",
    "MetricPipelineState",
    "encode_categoricals",
    "drop_constant_columns",
    "drop_sparse_columns",
    "impute_knn",
    "KNNImputer",
    "fit_standardizer",
    "apply_standardizer",
    "ScalerState",
    "tokenize_java",
    "build_vocab",
    "compute_padded_length",
    "index_and_pad",
    "aggregate_sum",
    "aggregate_mean",
    "aggregate_units",
    "confusion",
    "precision_recall_f1",
    "mcc",
    "score",
    "stratified_kfold",
]
