import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from zrisk.exceptions import ValidationError
from zrisk.fmea import RPNRanker, compare_methods, rank_by_rpn, rpn_score
from zrisk.validation import SODCT_FACTORS
from zrisk.validation import SodctRating as S

from tables_fixture import FUZZY_WASPAS_RANKS, RPN_RANKS, Z_WASPAS_RANKS


def mode_ratings(fm, values, expert="E1"):
    return [S(expert, fm, f, v) for f, v in zip(SODCT_FACTORS, values)]


def panel(rng, m, experts=1):
    out = []
    for e in range(experts):
        for i in range(m):
            out += mode_ratings(f"F{i + 1}", rng.integers(1, 11, 5).tolist(), f"E{e + 1}")
    return out


class TestRPN:
    @pytest.mark.parametrize("values,expected", [
        ([10] * 5, 100000),
        ([9, 8, 7, 5, 3], 7560),
        ([7, 6, 5, 4, 9], 7560),
        ([1] * 5, 1),
    ])
    def test_single_expert(self, values, expected):
        assert rpn_score(mode_ratings("F1", values)) == expected

    def test_expert_means(self):
        rs = mode_ratings("F1", [2, 2, 2, 2, 2], "E1") + mode_ratings("F1", [4, 4, 4, 4, 4], "E2")
        assert rpn_score(rs) == 3 ** 5

    def test_missing_factor(self):
        with pytest.raises(ValidationError, match="T"):
            rpn_score(mode_ratings("F1", [1, 2, 3, 4]))

    def test_monotone_in_every_factor(self, rng):
        for _ in range(500):
            v = rng.integers(1, 10, 5)
            k = int(rng.integers(5))
            up = v.copy()
            up[k] += 1
            assert rpn_score(mode_ratings("F1", up.tolist())) > rpn_score(mode_ratings("F1", v.tolist()))


class TestRankByRPN:
    def test_descending(self):
        assert rank_by_rpn([8752, 8694, 7903]).rank.tolist() == [1, 2, 3]

    def test_exact_tie(self):
        r = rank_by_rpn([100, 100])
        assert r.rank.tolist() == [1, 1]
        assert r.ties == [["F1", "F2"]] and r.n_tied == 2

    def test_near_tie_is_not_tie(self):
        assert rank_by_rpn([100.0, 100.0 + 1e-12]).rank.tolist() == [2, 1]

    def test_competition_rank_after_tie(self):
        assert rank_by_rpn([5, 9, 9, 1]).rank.tolist() == [3, 1, 1, 4]

    def test_to_dict_rounding(self):
        d = rank_by_rpn([1234.567], ["X"]).to_dict()
        row = d["failure_modes"][0]
        assert (row["RPN_2dp"], row["RPN_int"], row["rank"]) == (1234.57, 1235, 1)

    def test_empty(self):
        with pytest.raises(ValidationError):
            rank_by_rpn([])


class TestRanker:
    def test_fit_predict(self):
        rs = mode_ratings("F1", [1] * 5) + mode_ratings("F2", [2] * 5)
        est = RPNRanker()
        assert est.fit_predict(rs).tolist() == [2, 1]
        assert est.result_.scores.tolist() == [1, 32]

    def test_out_of_range_rating(self):
        with pytest.raises(ValidationError):
            RPNRanker().fit(mode_ratings("F1", [0, 1, 1, 1, 1]))

    def test_unfitted(self):
        with pytest.raises(NotFittedError):
            RPNRanker().predict()

    def test_clone(self):
        est = RPNRanker(failure_modes=["F1"])
        assert clone(est).get_params() == est.get_params()

    def test_integer_panels_tie_often(self, rng):
        # integer products collide; a 9-mode single-expert panel ties regularly
        tied = sum(RPNRanker().fit(panel(rng, 9)).result_.n_tied > 0 for _ in range(300))
        assert tied > 0


class TestCompare:
    def test_published_rank_columns(self):
        ids = [f"F{i}" for i in range(1, 10)]
        cmp = compare_methods({
            "rpn": dict(zip(ids, RPN_RANKS)),
            "fuzzy-waspas": dict(zip(ids, FUZZY_WASPAS_RANKS)),
            "z-waspas": dict(zip(ids, Z_WASPAS_RANKS)),
        })
        # sum of squared rank differences 10, 20 and 32 over n = 9
        assert cmp.spearman[("rpn", "z-waspas")] == pytest.approx(1 - 60 / 720, abs=1e-12)
        assert cmp.spearman[("rpn", "fuzzy-waspas")] == pytest.approx(1 - 120 / 720, abs=1e-12)
        assert cmp.spearman[("fuzzy-waspas", "z-waspas")] == pytest.approx(1 - 192 / 720, abs=1e-12)

    def test_identical_rankings(self):
        ranks = {"x": 1, "y": 2, "z": 3}
        cmp = compare_methods({"rpn": ranks, "fuzzy-waspas": ranks, "z-waspas": ranks})
        assert set(cmp.spearman.values()) == {1.0}

    def test_reversal(self):
        cmp = compare_methods({"a": {"x": 1, "y": 2, "z": 3}, "b": {"x": 3, "y": 2, "z": 1}})
        assert cmp.spearman[("a", "b")] == -1.0

    def test_result_objects(self):
        rs = mode_ratings("F1", [1] * 5) + mode_ratings("F2", [2] * 5)
        r = RPNRanker().fit(rs).result_
        cmp = compare_methods({"rpn": r, "copy": r})
        assert cmp.spearman[("rpn", "copy")] == 1.0
        d = cmp.to_dict()
        assert d["rows"][1] == {"id": "F2", "rpn": {"score": 32.0, "rank": 1}, "copy": {"score": 32.0, "rank": 1}}

    def test_mismatched_sets(self):
        with pytest.raises(ValidationError):
            compare_methods({"a": {"x": 1, "y": 2}, "b": {"x": 1, "z": 2}})

    def test_constant_ranking_gives_null_rho(self):
        d = compare_methods({"a": {"x": 1, "y": 1}, "b": {"x": 1, "y": 2}}).to_dict()
        assert d["spearman"][0]["rho"] is None

    def test_single_mode_has_no_rho(self):
        assert compare_methods({"a": {"x": 1}, "b": {"x": 1}}).spearman == {}

    def test_scores_nan_for_plain_dicts(self):
        cmp = compare_methods({"a": {"x": 1, "y": 2}})
        assert all(math.isnan(v) for v in cmp.scores["a"])
        assert np.isnan(cmp.scores["a"]).all()
