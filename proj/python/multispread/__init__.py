"""Multispreads over finite fields: feasibility, constructions, codes and search."""

from ._core import (
    Multispread,
    MultispreadError,
    Partition,
    bi_decomposition,
    catalog_entry,
    catalog_names,
    check_one_weight,
    code_params,
    desarguesian_46,
    dualize,
    dualize_partition,
    exact_cover_search,
    fold_spread,
    generator_matrix,
    lambda_min_congruence,
    min_lambda_existence,
    multispread,
    oracle,
    parse_multispread,
    parse_partition,
    partition,
    recipe,
)

__all__ = [
    "Multispread",
    "MultispreadError",
    "Partition",
    "bi_decomposition",
    "catalog_entry",
    "catalog_names",
    "check_one_weight",
    "code_params",
    "desarguesian_46",
    "dualize",
    "dualize_partition",
    "exact_cover_search",
    "fold_spread",
    "generator_matrix",
    "lambda_min_congruence",
    "min_lambda_existence",
    "multispread",
    "oracle",
    "parse_multispread",
    "parse_partition",
    "partition",
    "recipe",
]
