"""Z-SWARA criterion weighting."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from sklearn.base import BaseEstimator

from .exceptions import DegenerateInputError, ValidationError
from .fuzzy import ONE, TFN, centroid, tfn_add, tfn_div, tfn_mean, tfn_sum
from .scales import EI_MODES, weighting_term_to_tfn
from .validation import CriterionJudgment, check_weighting_judgments

RECURRENCES = ("standard", "literal")


@dataclass(frozen=True)
class CriterionWeights:
    criteria: tuple[str, ...]
    fuzzy_q: tuple[TFN, ...]
    fuzzy_w: tuple[TFN, ...]
    crisp_w: tuple[float, ...]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.criteria, self.crisp_w))

    def to_dict(self) -> dict:
        return {
            "criteria": list(self.criteria),
            "fuzzy_q": [list(q.as_tuple()) for q in self.fuzzy_q],
            "fuzzy_w": [list(w.as_tuple()) for w in self.fuzzy_w],
            "crisp_w": list(self.crisp_w),
        }


def aggregate_rankings(judgments: Sequence[CriterionJudgment]) -> list[str]:
    """Order criteria by mean rank position across experts.

    Ties on the mean are broken by criterion id so the order is
    deterministic.
    """
    judgments = check_weighting_judgments(judgments)
    positions = defaultdict(list)
    for j in judgments:
        positions[j.criterion_id].append(j.rank_position)
    means = {c: sum(p) / len(p) for c, p in positions.items()}
    return sorted(means, key=lambda c: (means[c], c))


def comparative_importance(
    judgments: Sequence[CriterionJudgment],
    order: Sequence[str],
    ei_mode: str = "table",
) -> list[TFN]:
    """Expert-averaged comparative-importance TFN for each criterion below the top.

    ``order`` is the aggregated ranking; position 0 gets no entry.
    """
    per_criterion = defaultdict(list)
    for j in judgments:
        per_criterion[j.criterion_id].append(j)
    out = []
    for c in order[1:]:
        js = [j for j in per_criterion.get(c, ()) if j.importance_term is not None]
        if not js:
            raise ValidationError(
                f"no comparative-importance judgment for criterion {c!r}; every expert "
                "ranked it first but the aggregated order places it lower",
                code="swara.missing-judgment",
            )
        out.append(tfn_mean(
            weighting_term_to_tfn(j.importance_term, j.reliability_term, ei_mode) for j in js
        ))
    return out


def swara_coefficients(z_terms: Sequence[TFN], recurrence: str = "standard") -> list[TFN]:
    """Fuzzy weight coefficients, starting from ``(1, 1, 1)``.

    ``standard`` divides by ``z + 1`` at each step; ``literal`` divides by
    ``z`` alone.
    """
    if recurrence not in RECURRENCES:
        raise ValidationError(f"recurrence must be one of {RECURRENCES}, got {recurrence!r}")
    q = [ONE]
    for z in z_terms:
        k = tfn_add(z, ONE) if recurrence == "standard" else z
        q.append(tfn_div(q[-1], k))
    return q


def normalize_weights(q: Sequence[TFN], criteria: Sequence[str] | None = None) -> CriterionWeights:
    if not q:
        raise DegenerateInputError("cannot normalise an empty coefficient list")
    total = tfn_sum(q)
    if total.a <= 0:
        raise DegenerateInputError(
            f"coefficient sum {total.as_tuple()} has a nonpositive lower bound",
            code="swara.degenerate",
        )
    fuzzy_w = [tfn_div(x, total) for x in q]
    crisp = [centroid(w) for w in fuzzy_w]
    s = sum(crisp)
    crisp_w = [x / s for x in crisp]
    if criteria is None:
        criteria = [f"C{i + 1}" for i in range(len(q))]
    return CriterionWeights(tuple(criteria), tuple(q), tuple(fuzzy_w), tuple(crisp_w))


class ZSwara(BaseEstimator):
    """Derive criterion weights from ranked expert judgments.

    Parameters
    ----------
    recurrence : {"standard", "literal"}, default="standard"
        ``standard`` uses ``q_j = q_{j-1} / (z_j + 1)`` which keeps weights
        non-increasing along the ranking; ``literal`` uses ``q_{j-1} / z_j``.
    ei_mode : {"table", "computed"}, default="table"
        How "equally important" judgments are converted.

    Attributes
    ----------
    criteria_ : list of str
        Criteria in aggregated rank order.
    weights_ : CriterionWeights
        Fuzzy coefficients, fuzzy weights and crisp weights in that order.
    """

    def __init__(self, recurrence="standard", ei_mode="table"):
        self.recurrence = recurrence
        self.ei_mode = ei_mode

    def fit(self, X, y=None):
        if self.recurrence not in RECURRENCES:
            raise ValidationError(f"recurrence must be one of {RECURRENCES}, got {self.recurrence!r}")
        if self.ei_mode not in EI_MODES:
            raise ValidationError(f"ei_mode must be one of {EI_MODES}, got {self.ei_mode!r}")
        judgments = check_weighting_judgments(X)
        self.criteria_ = aggregate_rankings(judgments)
        self.comparative_importance_ = comparative_importance(judgments, self.criteria_, self.ei_mode)
        q = swara_coefficients(self.comparative_importance_, self.recurrence)
        self.weights_ = normalize_weights(q, self.criteria_)
        return self

    def transform(self, X=None):
        """Crisp weights as a ``{criterion_id: weight}`` mapping."""
        if not hasattr(self, "weights_"):
            from sklearn.exceptions import NotFittedError
            raise NotFittedError("ZSwara is not fitted yet; call fit first")
        return self.weights_.as_dict()

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()
