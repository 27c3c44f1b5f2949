"""Z-WASPAS and fuzzy-WASPAS alternative ranking.

Decision matrices are held as ``(m, n, 3)`` float arrays: one TFN
``(a, b, c)`` per alternative/criterion cell.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .exceptions import DegenerateInputError, DomainError, ValidationError
from .fuzzy import TFN
from .scales import RATING, rating_term_to_tfn
from .validation import DIRECTIONS, check_rating_judgments, check_weight_vector

MODES = ("z", "fuzzy")
DEFAULT_TIE_TOLERANCE = 1e-9


@dataclass
class DecisionMatrix:
    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    cells: np.ndarray
    directions: tuple[str, ...]

    def __post_init__(self):
        self.alternatives = tuple(self.alternatives)
        self.criteria = tuple(self.criteria)
        self.cells = np.asarray(self.cells, dtype=float)
        m, n = len(self.alternatives), len(self.criteria)
        if self.cells.shape != (m, n, 3):
            raise ValidationError(
                f"decision matrix cells have shape {self.cells.shape}, expected {(m, n, 3)}",
                code="waspas.dimension",
            )
        if not np.all(np.isfinite(self.cells)):
            raise ValidationError("decision matrix contains non-finite cells")
        if np.any(self.cells[..., 0] > self.cells[..., 1]) or np.any(self.cells[..., 1] > self.cells[..., 2]):
            raise DomainError("decision matrix cell violates a <= b <= c", code="waspas.ordering")
        self.directions = tuple(self.directions)
        if len(self.directions) != n or any(d not in DIRECTIONS for d in self.directions):
            raise ValidationError(f"directions must be {n} values from {DIRECTIONS}")

    @classmethod
    def from_tfns(cls, grid, alternatives=None, criteria=None, directions=None):
        cells = np.array([[t.as_tuple() if isinstance(t, TFN) else tuple(t) for t in row] for row in grid],
                         dtype=float)
        m, n = cells.shape[:2]
        return cls(
            alternatives if alternatives is not None else [f"A{i + 1}" for i in range(m)],
            criteria if criteria is not None else [f"C{j + 1}" for j in range(n)],
            cells,
            directions if directions is not None else ["beneficial"] * n,
        )

    def cell(self, i: int, j: int) -> TFN:
        return TFN(*self.cells[i, j])


@dataclass
class RankingResult:
    alternatives: tuple[str, ...]
    Q_bar: np.ndarray
    P_bar: np.ndarray
    K: np.ndarray
    rank: np.ndarray
    lam: float
    ties: list[list[str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "lambda": float(self.lam),
            "alternatives": [
                {"id": a, "Q_bar": float(q), "P_bar": float(p), "K": float(k), "rank": int(r)}
                for a, q, p, k, r in zip(self.alternatives, self.Q_bar, self.P_bar, self.K, self.rank)
            ],
            "ties": [list(t) for t in self.ties],
        }

    def rank_of(self) -> dict[str, int]:
        return {a: int(r) for a, r in zip(self.alternatives, self.rank)}


def build_decision_matrix(
    judgments,
    mode: str = "z",
    alternatives: Sequence[str] | None = None,
    criteria: Sequence[str] | None = None,
    directions: Sequence[str] | None = None,
) -> DecisionMatrix:
    """Average each expert's converted rating into one TFN per cell.

    ``z`` mode weights each rating by its reliability term; ``fuzzy`` mode
    uses the raw rating TFN and ignores reliability.
    """
    if mode not in MODES:
        raise ValidationError(f"mode must be one of {MODES}, got {mode!r}")
    judgments = check_rating_judgments(judgments, alternatives, criteria, require_reliability=(mode == "z"))
    if alternatives is None:
        alternatives = list(dict.fromkeys(j.failure_mode_id for j in judgments))
    if criteria is None:
        criteria = list(dict.fromkeys(j.criterion_id for j in judgments))
    a_idx = {a: i for i, a in enumerate(alternatives)}
    c_idx = {c: j for j, c in enumerate(criteria)}
    sums = np.zeros((len(alternatives), len(criteria), 3))
    for j in judgments:
        if mode == "z":
            t = rating_term_to_tfn(j.rating_term, j.reliability_term)
        else:
            t = RATING[j.rating_term]
        key = (a_idx[j.failure_mode_id], c_idx[j.criterion_id])
        sums[key] += t.as_tuple()
    n_experts = len({j.expert_id for j in judgments})
    cells = sums / n_experts
    return DecisionMatrix(alternatives, criteria, cells,
                          directions if directions is not None else ["beneficial"] * len(criteria))


def normalize_matrix(H: DecisionMatrix) -> DecisionMatrix:
    """Scale every column into ``[0, 1]``.

    Beneficial columns divide by the column's largest upper bound;
    non-beneficial columns divide the smallest lower bound by each cell
    with components reversed.
    """
    cells = H.cells
    if np.any(cells < 0):
        raise DomainError("normalisation requires nonnegative cells", code="waspas.negative")
    out = np.empty_like(cells)
    for j, direction in enumerate(H.directions):
        col = cells[:, j, :]
        if direction == "beneficial":
            top = col[:, 2].max()
            if top <= 0:
                raise DegenerateInputError(
                    f"criterion {H.criteria[j]!r}: all upper bounds are zero", code="waspas.degenerate-column"
                )
            out[:, j, :] = col / top
        else:
            if np.any(col[:, 0] <= 0):
                raise DegenerateInputError(
                    f"non-beneficial criterion {H.criteria[j]!r} has a cell with zero lower bound",
                    code="waspas.degenerate-column",
                )
            low = col[:, 0].min()
            out[:, j, :] = low / col[:, ::-1]
    return DecisionMatrix(H.alternatives, H.criteria, out, H.directions)


def _crisp(weights, n: int) -> np.ndarray:
    w = getattr(weights, "crisp_w", weights)
    return np.asarray(check_weight_vector(w, n), dtype=float)


def wsm_scores(Hn: DecisionMatrix, weights) -> list[TFN]:
    """Weighted sum of normalised cells with crisp weights."""
    w = _crisp(weights, len(Hn.criteria))
    Q = (Hn.cells * w[None, :, None]).sum(axis=1)
    return [TFN(*row) for row in Q]


def wpm_scores(Hn: DecisionMatrix, weights) -> list[TFN]:
    """Weighted product of normalised cells with crisp exponents."""
    w = _crisp(weights, len(Hn.criteria))
    if np.any(w > 1):
        raise DomainError("WPM exponents must lie in [0, 1]; normalise weights first")
    if np.any(Hn.cells < 0):
        raise DomainError("WPM requires nonnegative cells")
    P = np.prod(Hn.cells ** w[None, :, None], axis=1)
    return [TFN(*row) for row in P]


def rank_scores(scores: Sequence[float], alternatives: Sequence[str], tol: float = DEFAULT_TIE_TOLERANCE):
    """Descending competition ranks with tie groups.

    Scores within ``tol`` of the first member of a run share that run's
    (smallest) rank.  Returns ``(ranks, tie_groups)``.
    """
    scores = np.asarray(scores, dtype=float)
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    ranks = np.zeros(len(scores), dtype=int)
    ties = []
    pos = 0
    while pos < len(order):
        lead = order[pos]
        group = [lead]
        nxt = pos + 1
        while nxt < len(order) and abs(scores[lead] - scores[order[nxt]]) <= tol:
            group.append(order[nxt])
            nxt += 1
        for i in group:
            ranks[i] = pos + 1
        if len(group) > 1:
            ties.append([alternatives[i] for i in group])
        pos = nxt
    return ranks, ties


def utility_ranking(
    Q: Sequence[TFN],
    P: Sequence[TFN],
    alternatives: Sequence[str] | None = None,
    tie_tolerance: float = DEFAULT_TIE_TOLERANCE,
) -> RankingResult:
    if len(Q) != len(P) or not Q:
        raise ValidationError("Q and P must be nonempty and of equal length", code="waspas.dimension")
    if alternatives is None:
        alternatives = [f"A{i + 1}" for i in range(len(Q))]
    q = np.array([t.as_tuple() for t in Q])
    p = np.array([t.as_tuple() for t in P])
    q_bar = np.clip(q.sum(axis=1) / 3.0, q[:, 0], q[:, 2])
    p_bar = np.clip(p.sum(axis=1) / 3.0, p[:, 0], p[:, 2])
    denom = q_bar.sum() + p_bar.sum()
    if denom == 0:
        raise DegenerateInputError("all WSM and WPM scores are zero", code="waspas.degenerate-scores")
    lam = float(p_bar.sum() / denom)
    K = lam * q_bar + (1.0 - lam) * p_bar
    # K is a convex combination; clip away last-ulp overshoot
    K = np.clip(K, np.minimum(q_bar, p_bar), np.maximum(q_bar, p_bar))
    ranks, ties = rank_scores(K, alternatives, tie_tolerance)
    return RankingResult(tuple(alternatives), q_bar, p_bar, K, ranks, lam, ties)


def waspas_rank(H: DecisionMatrix, weights, tie_tolerance: float = DEFAULT_TIE_TOLERANCE) -> RankingResult:
    Hn = normalize_matrix(H)
    return utility_ranking(wsm_scores(Hn, weights), wpm_scores(Hn, weights), H.alternatives, tie_tolerance)


def _weights_for(weights, criteria):
    if hasattr(weights, "as_dict"):
        weights = weights.as_dict()
    if isinstance(weights, dict):
        missing = [c for c in criteria if c not in weights]
        extra = [c for c in weights if c not in criteria]
        if missing or extra:
            raise ValidationError(
                f"weights do not match criteria (missing {missing}, extra {extra})",
                code="waspas.dimension",
            )
        return [weights[c] for c in criteria]
    return list(weights)


def run_zwaspas(judgments, weights, **kw) -> RankingResult:
    return ZWaspas(weights=weights, mode="z", **kw).fit(judgments).result_


def run_fuzzy_waspas(judgments, weights, **kw) -> RankingResult:
    return ZWaspas(weights=weights, mode="fuzzy", **kw).fit(judgments).result_


class ZWaspas(BaseEstimator):
    """Rank alternatives from a linguistic rating panel.

    Parameters
    ----------
    weights : CriterionWeights, mapping or sequence of float
        Crisp criterion weights; renormalised to sum to 1.
    mode : {"z", "fuzzy"}, default="z"
        ``fuzzy`` ignores reliability terms (the fuzzy-WASPAS baseline).
    directions : mapping or sequence, optional
        Per-criterion ``"beneficial"`` / ``"non-beneficial"``; default all
        beneficial.
    alternatives, criteria : sequence of str, optional
        Fix row / column order; defaults to first-appearance order.
    tie_tolerance : float, default=1e-9

    Attributes
    ----------
    matrix_ : DecisionMatrix
    normalized_ : DecisionMatrix
    result_ : RankingResult
    """

    def __init__(self, weights=None, mode="z", directions=None, alternatives=None, criteria=None,
                 tie_tolerance=DEFAULT_TIE_TOLERANCE):
        self.weights = weights
        self.mode = mode
        self.directions = directions
        self.alternatives = alternatives
        self.criteria = criteria
        self.tie_tolerance = tie_tolerance

    def fit(self, X, y=None):
        if self.weights is None:
            raise ValidationError("ZWaspas needs criterion weights")
        if not self.tie_tolerance > 0:
            raise ValidationError("tie_tolerance must be positive")
        if isinstance(X, DecisionMatrix):
            H = X
        else:
            criteria = self.criteria
            if criteria is None and isinstance(self.weights, dict):
                criteria = list(self.weights)
            directions = self.directions
            if isinstance(directions, dict):
                if criteria is None:
                    criteria = list(directions)
                directions = [directions.get(c, "beneficial") for c in criteria]
            H = build_decision_matrix(X, self.mode, self.alternatives, criteria, directions)
        w = check_weight_vector(_weights_for(self.weights, H.criteria), len(H.criteria))
        total = sum(w)
        if total <= 0:
            raise DegenerateInputError("weights sum to zero", code="waspas.degenerate-weights")
        self.weights_ = np.array(w) / total
        self.matrix_ = H
        self.normalized_ = normalize_matrix(H)
        self.wsm_ = wsm_scores(self.normalized_, self.weights_)
        self.wpm_ = wpm_scores(self.normalized_, self.weights_)
        self.result_ = utility_ranking(self.wsm_, self.wpm_, H.alternatives, self.tie_tolerance)
        return self

    def _check_fitted(self):
        if not hasattr(self, "result_"):
            raise NotFittedError("ZWaspas is not fitted yet; call fit first")

    def transform(self, X=None):
        """``(m, 3)`` array of ``[Q_bar, P_bar, K]`` per alternative."""
        self._check_fitted()
        r = self.result_
        return np.column_stack([r.Q_bar, r.P_bar, r.K])

    def predict(self, X=None):
        """Rank of each alternative (1 = highest priority)."""
        self._check_fitted()
        return self.result_.rank.copy()

    def fit_predict(self, X, y=None):
        return self.fit(X).predict()

    def score_samples(self, X=None):
        self._check_fitted()
        return self.result_.K.copy()
