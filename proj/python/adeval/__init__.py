"""Evaluation toolkit for adverse drug event extraction.

Spans are ``(start, end)`` tuples of code-point offsets into the document text.
"""

from adeval._core import (
    FEATURE_NAMES,
    ContractError,
    ParseError,
    RangeError,
    align,
    analyze,
    bio_to_spans,
    classify,
    dedupe_spans,
    derive_seed,
    disambiguate,
    encode_features,
    import_standoff,
    iso_f1_precision,
    mean_std,
    merge_spans,
    permutation_check,
    registry_models,
    relaxed_scores,
    report_json,
    run,
    spans_to_bio,
    strict_scores,
    text_stats,
    tokenize,
)

__all__ = [
    "FEATURE_NAMES",
    "ContractError",
    "ParseError",
    "RangeError",
    "align",
    "analyze",
    "bio_to_spans",
    "classify",
    "dedupe_spans",
    "derive_seed",
    "disambiguate",
    "encode_features",
    "import_standoff",
    "iso_f1_precision",
    "mean_std",
    "merge_spans",
    "permutation_check",
    "registry_models",
    "relaxed_scores",
    "report_json",
    "run",
    "score",
    "spans_to_bio",
    "strict_scores",
    "text_stats",
    "tokenize",
]


def score(gold, pred):
    """Counts plus relaxed and strict scores for one document."""
    counts = classify(gold, pred)
    return {
        "counts": counts,
        "relaxed": relaxed_scores(counts),
        "strict": strict_scores(counts),
    }
