"""Cross-collection topic modeling with entropy-based vocabulary partitioning.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from cctopics._core import (
    ConfigError,
    Corpus,
    DataError,
    Model,
    VocabularyPartition,
    coherence_cv,
    corpus_from_documents,
    entropy_rank,
    evaluate,
    hapax_threshold,
    load_corpus,
    load_model,
    normalized_entropy,
    partition_vocabulary,
    split_folds,
    train,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "Corpus",
    "DataError",
    "Model",
    "VocabularyPartition",
    "coherence_cv",
    "corpus_from_documents",
    "entropy_rank",
    "evaluate",
    "hapax_threshold",
    "load_corpus",
    "load_model",
    "normalized_entropy",
    "partition_vocabulary",
    "split_folds",
    "train",
]
