from .cover import (
    CoverResult,
    TheoremCheck,
    cover_to_naf,
    matching_cover_number,
    min_naf_load,
    minimum_matching_cover,
    minimum_naf,
    naf_to_matching_cover,
    reduce_leaves,
    verify_naf_mc_theorem,
)
from .greedy import greedy_matching
from .matching import maximum_matching_size
from .pair_probability import (
    ExactProbability,
    lemma_bound,
    pair_probability_exact,
    relevant_nodes,
    residual_max_degree,
)

__all__ = [
    "CoverResult",
    "ExactProbability",
    "TheoremCheck",
    "cover_to_naf",
    "greedy_matching",
    "lemma_bound",
    "matching_cover_number",
    "maximum_matching_size",
    "min_naf_load",
    "minimum_matching_cover",
    "minimum_naf",
    "naf_to_matching_cover",
    "pair_probability_exact",
    "reduce_leaves",
    "relevant_nodes",
    "residual_max_degree",
    "verify_naf_mc_theorem",
]
