"""Z-number FMEA toolkit: Z-SWARA weighting, Z-WASPAS ranking, RPN baseline,
weight sensitivity and questionnaire statistics."""

__version__ = "0.1.0"

from .exceptions import (  # noqa: E402
    DegenerateInputError,
    DomainError,
    ScaleLookupError,
    SingularDesignError,
    ValidationError,
    ZRiskError,
)
from .fuzzy import TFN, ZNumber, centroid, z_to_tfn  # noqa: E402
from .scales import RATING, RELIABILITY, WEIGHTING, rating_term_to_tfn, weighting_term_to_tfn  # noqa: E402
from .swara import CriterionWeights, ZSwara  # noqa: E402
from .waspas import DecisionMatrix, RankingResult, ZWaspas  # noqa: E402
from .fmea import RPNRanker, compare_methods  # noqa: E402
from .sensitivity import WeightCase, paper_sodct_cases, spearman_rank_correlation, stability_sweep  # noqa: E402
from .stats import ModeratedRegression, cronbach_alpha, kruskal_wallis, mean_ranks  # noqa: E402

__all__ = [
    "TFN", "ZNumber", "centroid", "z_to_tfn",
    "RATING", "RELIABILITY", "WEIGHTING", "rating_term_to_tfn", "weighting_term_to_tfn",
    "CriterionWeights", "ZSwara",
    "DecisionMatrix", "RankingResult", "ZWaspas",
    "RPNRanker", "compare_methods",
    "WeightCase", "paper_sodct_cases", "spearman_rank_correlation", "stability_sweep",
    "ModeratedRegression", "cronbach_alpha", "kruskal_wallis", "mean_ranks",
    "ZRiskError", "ValidationError", "ScaleLookupError", "DomainError", "DegenerateInputError",
    "SingularDesignError",
]
