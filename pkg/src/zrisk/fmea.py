"""Conventional RPN scoring over SODCT factors and three-way method comparison."""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .exceptions import ValidationError
from .sensitivity import spearman_rank_correlation
from .validation import SODCT_FACTORS, SodctRating, check_sodct_ratings
from .waspas import rank_scores


def rpn_score(ratings: Sequence[SodctRating], factors: Sequence[str] = SODCT_FACTORS) -> float:
    """Product over factors of the mean expert rating for one failure mode."""
    by_factor = defaultdict(list)
    for r in ratings:
        by_factor[r.factor].append(r.value)
    missing = [f for f in factors if not by_factor.get(f)]
    if missing:
        raise ValidationError(f"RPN needs every factor rated; missing {missing}", code="fmea.missing-factor")
    return math.prod(sum(by_factor[f]) / len(by_factor[f]) for f in factors)


@dataclass
class RPNRanking:
    failure_modes: tuple[str, ...]
    scores: np.ndarray
    rank: np.ndarray
    ties: list[list[str]] = field(default_factory=list)

    @property
    def n_tied(self) -> int:
        """Failure modes sharing their score with at least one other."""
        return sum(len(t) for t in self.ties)

    def to_dict(self) -> dict:
        return {
            "failure_modes": [
                {"id": f, "RPN": float(s), "RPN_2dp": round(float(s), 2), "RPN_int": int(round(float(s))),
                 "rank": int(r)}
                for f, s, r in zip(self.failure_modes, self.scores, self.rank)
            ],
            "ties": [list(t) for t in self.ties],
            "n_tied": self.n_tied,
        }

    def rank_of(self) -> dict[str, int]:
        return {a: int(r) for a, r in zip(self.failure_modes, self.rank)}


def rank_by_rpn(scores: Sequence[float], failure_modes: Sequence[str] | None = None) -> RPNRanking:
    """Descending RPN ranking; exactly equal scores are reported as ties."""
    if len(scores) == 0:
        raise ValidationError("rank_by_rpn needs at least one score")
    if failure_modes is None:
        failure_modes = [f"F{i + 1}" for i in range(len(scores))]
    ranks, ties = rank_scores(scores, failure_modes, tol=0.0)
    return RPNRanking(tuple(failure_modes), np.asarray(scores, dtype=float), ranks, ties)


class RPNRanker(BaseEstimator):
    """Conventional FMEA ranking by risk priority number.

    Parameters
    ----------
    failure_modes : sequence of str, optional
        Row order; defaults to first appearance in the ratings.
    factors : sequence of str, default=("S", "O", "D", "C", "T")
    """

    def __init__(self, failure_modes=None, factors=SODCT_FACTORS):
        self.failure_modes = failure_modes
        self.factors = factors

    def fit(self, X, y=None):
        ratings = check_sodct_ratings(X, self.failure_modes, tuple(self.factors))
        modes = list(self.failure_modes) if self.failure_modes is not None else list(
            dict.fromkeys(r.failure_mode_id for r in ratings))
        per_mode = defaultdict(list)
        for r in ratings:
            per_mode[r.failure_mode_id].append(r)
        scores = [rpn_score(per_mode[m], self.factors) for m in modes]
        self.result_ = rank_by_rpn(scores, modes)
        return self

    def predict(self, X=None):
        if not hasattr(self, "result_"):
            raise NotFittedError("RPNRanker is not fitted yet; call fit first")
        return self.result_.rank.copy()

    def fit_predict(self, X, y=None):
        return self.fit(X).predict()


@dataclass
class MethodComparison:
    failure_modes: tuple[str, ...]
    methods: tuple[str, ...]
    scores: dict[str, list[float]]
    ranks: dict[str, list[int]]
    spearman: dict[tuple[str, str], float]

    def to_dict(self) -> dict:
        return {
            "methods": list(self.methods),
            "rows": [
                {"id": f, **{m: {"score": float(self.scores[m][i]), "rank": int(self.ranks[m][i])}
                             for m in self.methods}}
                for i, f in enumerate(self.failure_modes)
            ],
            "spearman": [
                {"method_a": a, "method_b": b, "rho": (None if math.isnan(v) else float(v))}
                for (a, b), v in self.spearman.items()
            ],
        }


def compare_methods(results: Mapping[str, object]) -> MethodComparison:
    """Merge per-method rankings into one table with pairwise Spearman's rho.

    ``results`` maps a method name to any object exposing ``rank_of()``
    plus ``scores`` or ``K``, or to a plain ``{failure_mode: rank}`` dict.
    Method order follows the mapping's order.
    """
    if not results:
        raise ValidationError("compare_methods needs at least one method")
    methods = tuple(results)
    rank_maps, score_maps = {}, {}
    for m, r in results.items():
        if isinstance(r, Mapping):
            rank_maps[m] = {k: int(v) for k, v in r.items()}
            score_maps[m] = {k: float("nan") for k in r}
        else:
            rank_maps[m] = r.rank_of()
            vals = r.scores if hasattr(r, "scores") else r.K
            score_maps[m] = dict(zip(rank_maps[m], (float(v) for v in vals)))
    base_method = methods[0]
    order = tuple(rank_maps[base_method])
    for m in methods[1:]:
        if set(rank_maps[m]) != set(order):
            raise ValidationError(
                f"method {m!r} ranks a different failure-mode set than {base_method!r}",
                code="fmea.mismatch",
            )
    ranks = {m: [rank_maps[m][f] for f in order] for m in methods}
    scores = {m: [score_maps[m][f] for f in order] for m in methods}
    spearman = {}
    if len(order) >= 2:
        for a, b in itertools.combinations(methods, 2):
            spearman[(a, b)] = spearman_rank_correlation(ranks[a], ranks[b])
    return MethodComparison(order, methods, scores, ranks, spearman)
