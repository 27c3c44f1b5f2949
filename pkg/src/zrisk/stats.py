"""Questionnaire statistics: item reliability, Kruskal-Wallis, mean ranks
and moderated regression."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import stats as _st
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.exceptions import NotFittedError

from .exceptions import DegenerateInputError, SingularDesignError, ValidationError


def _item_matrix(items, min_items=1, min_rows=1) -> tuple[np.ndarray, list[str]]:
    if isinstance(items, pd.DataFrame):
        names = [str(c) for c in items.columns]
        X = items.to_numpy(dtype=float)
    else:
        X = np.asarray(items, dtype=float)
        if X.ndim != 2:
            raise ValidationError(f"item matrix must be 2-D, got shape {X.shape}")
        names = [f"item{j + 1}" for j in range(X.shape[1])]
    if np.isnan(X).any():
        raise ValidationError("item matrix has missing cells", code="stats.missing")
    if X.shape[1] < min_items or X.shape[0] < min_rows:
        raise ValidationError(
            f"item matrix needs at least {min_rows} respondents and {min_items} items, got {X.shape}"
        )
    return X, names


def _alpha(X: np.ndarray) -> float:
    k = X.shape[1]
    total_var = X.sum(axis=1).var(ddof=1)
    if total_var == 0:
        raise DegenerateInputError("total score has zero variance; alpha is undefined", code="stats.undefined-alpha")
    return k / (k - 1) * (1.0 - X.var(axis=0, ddof=1).sum() / total_var)


def cronbach_alpha(items) -> dict:
    """Cronbach's alpha with per-item deletion diagnostics.

    ``item_total_correlation`` is the corrected correlation between an
    item and the sum of the remaining items.  ``alpha_if_deleted`` is NaN
    when fewer than two items would remain or the remainder is constant.
    """
    X, names = _item_matrix(items, min_items=2, min_rows=2)
    alpha = _alpha(X)
    per_item = {}
    for j, name in enumerate(names):
        rest = np.delete(X, j, axis=1)
        if rest.shape[1] >= 2:
            try:
                aid = _alpha(rest)
            except DegenerateInputError:
                aid = float("nan")
        else:
            aid = float("nan")
        other = rest.sum(axis=1)
        if X[:, j].std() == 0 or other.std() == 0:
            r = float("nan")
        else:
            r = float(np.corrcoef(X[:, j], other)[0, 1])
        per_item[name] = {"alpha_if_deleted": float(aid), "item_total_correlation": r}
    return {"alpha": float(alpha), "n_items": X.shape[1], "n_respondents": X.shape[0], "items": per_item}


@dataclass(frozen=True)
class KruskalResult:
    H: float
    df: int
    p: float

    def to_dict(self):
        return {"H": self.H, "df": self.df, "p": self.p}


def kruskal_wallis(groups) -> KruskalResult:
    """Kruskal-Wallis H with tie correction and chi-square p-value."""
    groups = [np.asarray(g, dtype=float).ravel() for g in groups]
    if len(groups) < 2:
        raise ValidationError("Kruskal-Wallis needs at least two groups", code="stats.groups")
    if any(len(g) == 0 for g in groups):
        raise ValidationError("every Kruskal-Wallis group must be nonempty", code="stats.groups")
    pooled = np.concatenate(groups)
    n = len(pooled)
    ranks = _st.rankdata(pooled)
    H = 0.0
    start = 0
    for g in groups:
        r = ranks[start:start + len(g)]
        H += r.sum() ** 2 / len(g)
        start += len(g)
    H = 12.0 / (n * (n + 1)) * H - 3.0 * (n + 1)
    _, counts = np.unique(pooled, return_counts=True)
    correction = 1.0 - np.sum(counts ** 3 - counts) / (n ** 3 - n)
    if correction == 0:
        H = 0.0  # every observation equal
    else:
        H = max(H / correction, 0.0)
    df = len(groups) - 1
    return KruskalResult(float(H), df, float(_st.chi2.sf(H, df)))


def mean_ranks(items) -> dict[str, float]:
    """Rank items within each respondent (mid-ranks), then average per item."""
    X, names = _item_matrix(items)
    R = _st.rankdata(X, axis=1)
    return dict(zip(names, (float(v) for v in R.mean(axis=0))))


def split_by_strategy(values, threshold: float = 3.0) -> np.ndarray:
    """Label respondents ``cost_leadership`` below the threshold, else ``differentiation``."""
    v = np.asarray(values, dtype=float)
    return np.where(v < threshold, "cost_leadership", "differentiation")


def correlation_matrix(data: pd.DataFrame) -> pd.DataFrame:
    """Pearson correlations annotated with ``*`` (p < .05) / ``**`` (p < .01)."""
    cols = list(data.columns)
    out = pd.DataFrame("", index=cols, columns=cols, dtype=object)
    for i, a in enumerate(cols):
        for j, b in enumerate(cols[: i + 1]):
            if i == j:
                out.loc[a, b] = "1"
                continue
            r, p = _st.pearsonr(data[a], data[b])
            stars = "**" if p < 0.01 else "*" if p < 0.05 else ""
            out.loc[a, b] = f"{r:.3f}{stars}"
    return out


@dataclass(frozen=True)
class RegressionSpec:
    dependent: str
    predictor: str
    moderator: str
    # defaults to (predictor, moderator); presets may override
    interaction: tuple[str, str] | None = None

    @property
    def interaction_pair(self) -> tuple[str, str]:
        return self.interaction or (self.predictor, self.moderator)

    @property
    def columns(self) -> list[str]:
        a, b = self.interaction_pair
        return ["const", self.predictor, self.moderator, f"{a}*{b}"]


# Named by predictor and moderator. ``-printed`` variants keep an interaction
# term that differs from their main effects; the plain names use the product.
REGRESSION_PRESETS = {
    "cls-fmcs": RegressionSpec("P", "CLS", "FMCS"),
    "ds-nfmcs-printed": RegressionSpec("P", "DS", "NFMCS", ("CLS", "NFMCS")),
    "cls-nfmcs-printed": RegressionSpec("P", "CLS", "NFMCS", ("CLS", "FMCS")),
    "ds-fmcs": RegressionSpec("P", "DS", "FMCS"),
    "ds-nfmcs": RegressionSpec("P", "DS", "NFMCS"),
    "cls-nfmcs": RegressionSpec("P", "CLS", "NFMCS"),
}


def _design(spec: RegressionSpec, data) -> tuple[np.ndarray, np.ndarray]:
    df = pd.DataFrame(data)
    a, b = spec.interaction_pair
    need = [spec.dependent, spec.predictor, spec.moderator, a, b]
    missing = [c for c in dict.fromkeys(need) if c not in df.columns]
    if missing:
        raise ValidationError(f"regression data lacks column(s) {missing}", code="stats.missing-column")
    x = df[spec.predictor].to_numpy(float)
    m = df[spec.moderator].to_numpy(float)
    inter = df[a].to_numpy(float) * df[b].to_numpy(float)
    X = np.column_stack([np.ones(len(df)), x, m, inter])
    return X, df[spec.dependent].to_numpy(float)


def _ols(X: np.ndarray, y: np.ndarray, names: list[str]):
    if X.shape[0] < 5:
        raise ValidationError(f"moderated regression needs at least 5 observations, got {X.shape[0]}")
    if not (np.isfinite(X).all() and np.isfinite(y).all()):
        raise ValidationError("regression data contains missing or non-finite values")
    # a column is collinear if it adds no rank to the columns before it
    kept = []
    for j in range(X.shape[1]):
        if np.linalg.matrix_rank(X[:, kept + [j]]) == len(kept) + 1:
            kept.append(j)
        else:
            raise SingularDesignError(
                f"design matrix is rank deficient: column {names[j]!r} is a linear combination of "
                f"{[names[k] for k in kept]}"
            )
    beta, *_ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ beta
    sse = float(resid @ resid)
    sst = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 if sst == 0 else min(max(1.0 - sse / sst, 0.0), 1.0)
    return beta, r2


def moderated_regression(spec: RegressionSpec, data) -> dict:
    """OLS of ``dependent`` on ``[1, predictor, moderator, interaction]``."""
    X, y = _design(spec, data)
    beta, r2 = _ols(X, y, spec.columns)
    return {"beta": [float(b) for b in beta], "columns": spec.columns, "r_squared": r2, "n": len(y)}


class ModeratedRegression(RegressorMixin, BaseEstimator):
    """Moderated OLS regression on a two-column ``X = [predictor, moderator]``.

    The interaction ``predictor * moderator`` is added internally.

    Attributes
    ----------
    intercept_ : float
    coef_ : ndarray of shape (3,)
        Predictor, moderator and interaction coefficients.
    r_squared_ : float
    """

    def _expand(self, X):
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != 2:
            raise ValidationError(f"X must have exactly two columns [predictor, moderator], got shape {X.shape}")
        return np.column_stack([np.ones(len(X)), X[:, 0], X[:, 1], X[:, 0] * X[:, 1]])

    def fit(self, X, y):
        D = self._expand(X)
        beta, r2 = _ols(D, np.asarray(y, dtype=float).ravel(), ["const", "predictor", "moderator", "interaction"])
        self.intercept_ = float(beta[0])
        self.coef_ = beta[1:]
        self.r_squared_ = r2
        return self

    def predict(self, X):
        if not hasattr(self, "coef_"):
            raise NotFittedError("ModeratedRegression is not fitted yet; call fit first")
        return self._expand(X)[:, 1:] @ self.coef_ + self.intercept_
