import numpy as np
import pandas as pd
import pytest
from scipy.stats import kruskal
from sklearn.base import clone

from zrisk.exceptions import DegenerateInputError, SingularDesignError, ValidationError
from zrisk.stats import (
    REGRESSION_PRESETS,
    ModeratedRegression,
    RegressionSpec,
    correlation_matrix,
    cronbach_alpha,
    kruskal_wallis,
    mean_ranks,
    moderated_regression,
    split_by_strategy,
)


def kw_loop_oracle(groups):
    """H by explicit pairwise rank counting, with tie correction."""
    pooled = [v for g in groups for v in g]
    n = len(pooled)

    def rank(v):
        return sum(1 for u in pooled if u < v) + (sum(1 for u in pooled if u == v) + 1) / 2

    H = 12 / (n * (n + 1)) * sum(sum(rank(v) for v in g) ** 2 / len(g) for g in groups) - 3 * (n + 1)
    ties = sum(t ** 3 - t for t in (pooled.count(v) for v in set(pooled)))
    return H / (1 - ties / (n ** 3 - n))


def alpha_by_definition(X):
    X = np.asarray(X, float)
    k = X.shape[1]
    item_vars = sum(np.var(X[:, j], ddof=1) for j in range(k))
    return k / (k - 1) * (1 - item_vars / np.var(X.sum(axis=1), ddof=1))


class TestCronbach:
    def test_duplicated_items(self, rng):
        x = rng.normal(size=30)
        assert cronbach_alpha(np.column_stack([x, x, x]))["alpha"] == pytest.approx(1.0, abs=1e-12)

    def test_anti_correlated_by_hand(self):
        # item variances 1 and 4, total variance 1: 2 * (1 - 5) = -8
        assert cronbach_alpha([[1, 6], [2, 4], [3, 2]])["alpha"] == pytest.approx(-8.0, abs=1e-12)

    def test_matches_definition(self, rng):
        for _ in range(100):
            X = rng.integers(1, 6, size=(int(rng.integers(5, 40)), int(rng.integers(2, 8))))
            if X.sum(axis=1).var() == 0:
                continue
            assert cronbach_alpha(X)["alpha"] == pytest.approx(alpha_by_definition(X), abs=1e-12)

    def test_invariant_to_column_order_and_affine_shift(self, rng):
        X = rng.normal(size=(40, 5)) + rng.normal(size=(40, 1))
        a = cronbach_alpha(X)["alpha"]
        assert cronbach_alpha(X[:, ::-1])["alpha"] == pytest.approx(a, abs=1e-12)
        assert cronbach_alpha(3 * X + 7)["alpha"] == pytest.approx(a, abs=1e-12)

    def test_item_diagnostics(self, rng):
        base = rng.normal(size=50)
        df = pd.DataFrame({"q1": base + 0.1 * rng.normal(size=50), "q2": base + 0.1 * rng.normal(size=50),
                           "q3": base + 0.1 * rng.normal(size=50), "noise": rng.normal(size=50)})
        out = cronbach_alpha(df)
        assert (out["n_items"], out["n_respondents"]) == (4, 50)
        assert out["items"]["noise"]["alpha_if_deleted"] > out["alpha"]
        rest = df[["q2", "q3", "noise"]].sum(axis=1)
        assert out["items"]["q1"]["item_total_correlation"] == pytest.approx(df.q1.corr(rest), abs=1e-12)
        assert out["items"]["noise"]["item_total_correlation"] < out["items"]["q1"]["item_total_correlation"]
        assert out["items"]["q1"]["alpha_if_deleted"] == pytest.approx(
            alpha_by_definition(df[["q2", "q3", "noise"]]), abs=1e-12)

    def test_two_items_no_alpha_if_deleted(self):
        out = cronbach_alpha([[1, 2], [2, 3], [3, 5]])
        assert np.isnan(out["items"]["item1"]["alpha_if_deleted"])

    def test_mirror_items_have_undefined_alpha(self):
        # totals are constant (3, 3): the formula divides by zero
        with pytest.raises(DegenerateInputError):
            cronbach_alpha([[1, 2], [2, 1]])

    def test_nine_item_diagnostics_table(self):
        rng = np.random.default_rng(930)
        trait = rng.normal(size=(120, 1))
        X = trait + 0.82 * rng.normal(size=(120, 9))
        out = cronbach_alpha(pd.DataFrame(X, columns=[f"Q{i}" for i in range(1, 10)]))
        assert round(out["alpha"], 2) == 0.93
        assert list(out["items"]) == [f"Q{i}" for i in range(1, 10)]
        assert all(set(v) == {"alpha_if_deleted", "item_total_correlation"} for v in out["items"].values())

    def test_constant_total(self):
        with pytest.raises(DegenerateInputError):
            cronbach_alpha([[1, 1], [1, 1]])

    def test_needs_two_items(self):
        with pytest.raises(ValidationError):
            cronbach_alpha([[1], [2]])

    def test_missing_cells(self):
        with pytest.raises(ValidationError):
            cronbach_alpha([[1, np.nan], [2, 3]])


class TestKruskal:
    def test_separated_groups(self):
        r = kruskal_wallis([[1, 2, 3], [4, 5, 6]])
        assert r.H == pytest.approx(27 / 7, abs=1e-12)
        assert round(r.H, 3) == 3.857
        assert r.df == 1

    def test_identical_groups(self):
        assert kruskal_wallis([[1, 2, 3], [1, 2, 3]]).H == pytest.approx(0.0, abs=1e-12)

    def test_all_equal(self):
        r = kruskal_wallis([[2, 2], [2, 2, 2]])
        assert (r.H, r.p) == (0.0, 1.0)

    def test_matches_oracles(self, rng):
        for _ in range(200):
            groups = [rng.integers(1, 6, int(rng.integers(2, 12))).tolist() for _ in range(int(rng.integers(2, 5)))]
            if len({v for g in groups for v in g}) == 1:
                continue
            r = kruskal_wallis(groups)
            ref = kruskal(*groups)
            assert r.H == pytest.approx(kw_loop_oracle(groups), abs=1e-9)
            assert r.H == pytest.approx(ref.statistic, abs=1e-9)
            assert r.p == pytest.approx(ref.pvalue, abs=1e-12)

    def test_group_order_invariant(self, rng):
        groups = [rng.normal(size=8) for _ in range(4)]
        assert kruskal_wallis(groups).H == pytest.approx(kruskal_wallis(groups[::-1]).H, abs=1e-12)

    def test_needs_two_groups(self):
        with pytest.raises(ValidationError):
            kruskal_wallis([[1, 2]])

    def test_empty_group(self):
        with pytest.raises(ValidationError):
            kruskal_wallis([[1, 2], []])


class TestMeanRanks:
    def test_within_respondent_ranks(self):
        df = pd.DataFrame({"a": [1, 1], "b": [2, 3], "c": [3, 2]})
        assert mean_ranks(df) == {"a": 1.0, "b": 2.5, "c": 2.5}

    def test_ties_get_midranks(self):
        assert mean_ranks([[5, 5, 1]]) == {"item1": 2.5, "item2": 2.5, "item3": 1.0}

    def test_common_ranking(self):
        X = [[10, 30, 20]] * 5
        assert mean_ranks(X) == {"item1": 1.0, "item2": 3.0, "item3": 2.0}

    def test_always_tied_pair(self):
        assert mean_ranks([[4, 4], [1, 1], [7, 7]]) == {"item1": 1.5, "item2": 1.5}

    def test_matches_per_respondent_oracle(self, rng):
        X = rng.integers(1, 6, size=(30, 5))
        expected = np.zeros(5)
        for row in X:
            for j, v in enumerate(row):
                expected[j] += sum(1 for u in row if u < v) + (sum(1 for u in row if u == v) + 1) / 2
        got = mean_ranks(X)
        assert list(got.values()) == pytest.approx((expected / len(X)).tolist(), abs=1e-12)

    def test_sum_is_constant(self, rng):
        X = rng.integers(1, 6, size=(20, 6))
        assert sum(mean_ranks(X).values()) == pytest.approx(21.0, abs=1e-12)


class TestHelpers:
    def test_split_by_strategy(self):
        assert split_by_strategy([1, 2.99, 3, 5]).tolist() == [
            "cost_leadership", "cost_leadership", "differentiation", "differentiation"]

    def test_correlation_matrix_stars(self, rng):
        x = rng.normal(size=100)
        df = pd.DataFrame({"x": x, "y": x + 0.01 * rng.normal(size=100), "z": rng.normal(size=100)})
        out = correlation_matrix(df)
        assert out.loc["x", "x"] == "1"
        assert out.loc["y", "x"].endswith("**")
        assert out.loc["x", "y"] == ""


class TestRegression:
    def _planted(self, rng, n=60, noise=0.0):
        x, m = rng.normal(size=n), rng.normal(size=n)
        y = 2 + 3 * x + noise * rng.normal(size=n)
        return pd.DataFrame({"P": y, "CLS": x, "FMCS": m})

    def test_recovers_planted_coefficients(self, rng):
        out = moderated_regression(REGRESSION_PRESETS["cls-fmcs"], self._planted(rng))
        assert out["beta"] == pytest.approx([2, 3, 0, 0], abs=1e-9)
        assert out["r_squared"] == pytest.approx(1.0, abs=1e-12)
        assert out["columns"] == ["const", "CLS", "FMCS", "CLS*FMCS"]

    def test_perfect_fit_on_predictor(self, rng):
        x = rng.normal(size=50)
        df = pd.DataFrame({"P": x, "CLS": x, "FMCS": rng.normal(size=50)})
        out = moderated_regression(REGRESSION_PRESETS["cls-fmcs"], df)
        assert out["beta"][1] == pytest.approx(1.0, abs=1e-9)
        assert out["r_squared"] == pytest.approx(1.0, abs=1e-9)

    def test_pure_noise_low_r_squared(self, rng):
        df = pd.DataFrame(rng.normal(size=(200, 3)), columns=["P", "CLS", "FMCS"])
        assert moderated_regression(REGRESSION_PRESETS["cls-fmcs"], df)["r_squared"] < 0.2

    def test_interaction_never_lowers_r_squared(self, rng):
        for _ in range(50):
            df = self._planted(rng, noise=1.0)
            full = moderated_regression(REGRESSION_PRESETS["cls-fmcs"], df)["r_squared"]
            X = np.column_stack([np.ones(len(df)), df.CLS, df.FMCS])
            beta, *_ = np.linalg.lstsq(X, df.P, rcond=None)
            resid = df.P - X @ beta
            reduced = 1 - (resid @ resid) / ((df.P - df.P.mean()) ** 2).sum()
            assert full >= reduced - 1e-12

    def test_literal_preset_interaction(self, rng):
        df = pd.DataFrame(rng.normal(size=(30, 5)), columns=["P", "CLS", "DS", "FMCS", "NFMCS"])
        assert moderated_regression(REGRESSION_PRESETS["ds-nfmcs-printed"], df)["columns"][-1] == "CLS*NFMCS"
        assert moderated_regression(REGRESSION_PRESETS["ds-nfmcs"], df)["columns"][-1] == "DS*NFMCS"

    def test_singular_names_column(self, rng):
        df = self._planted(rng)
        df["FMCS"] = 2 * df["CLS"]
        with pytest.raises(SingularDesignError, match="FMCS"):
            moderated_regression(REGRESSION_PRESETS["cls-fmcs"], df)

    def test_constant_moderator_is_singular(self, rng):
        df = self._planted(rng)
        df["FMCS"] = 1.0
        with pytest.raises(SingularDesignError):
            moderated_regression(REGRESSION_PRESETS["cls-fmcs"], df)

    def test_too_few_rows(self, rng):
        with pytest.raises(ValidationError, match="5"):
            moderated_regression(REGRESSION_PRESETS["cls-fmcs"], self._planted(rng, n=4))

    def test_missing_column(self, rng):
        with pytest.raises(ValidationError, match="DS"):
            moderated_regression(RegressionSpec("P", "DS", "FMCS"), self._planted(rng))

    def test_estimator(self, rng):
        x, m = rng.normal(size=50), rng.normal(size=50)
        y = 1 + 2 * x - m + 0.5 * x * m
        X = np.column_stack([x, m])
        est = ModeratedRegression().fit(X, y)
        assert est.intercept_ == pytest.approx(1, abs=1e-9)
        assert est.coef_.tolist() == pytest.approx([2, -1, 0.5], abs=1e-9)
        assert est.score(X, y) == pytest.approx(1.0, abs=1e-12)
        assert clone(est).get_params() == {}

    def test_estimator_shape_check(self):
        with pytest.raises(ValidationError):
            ModeratedRegression().fit(np.zeros((6, 3)), np.zeros(6))
