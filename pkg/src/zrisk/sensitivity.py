"""Weight-case sensitivity sweeps and rank-agreement metrics."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np
from scipy.stats import rankdata

from .exceptions import DegenerateInputError, ValidationError
from .waspas import MODES, RankingResult, ZWaspas


@dataclass(frozen=True)
class WeightCase:
    case_id: str
    weights: Mapping[str, float]
    # fuzzy weights as printed, kept for display only (not required to be valid TFNs)
    fuzzy_annotation: Mapping[str, tuple] = field(default_factory=dict)

    def normalized(self, criteria: Sequence[str]) -> dict[str, float]:
        missing = [c for c in criteria if c not in self.weights]
        extra = [c for c in self.weights if c not in criteria]
        if missing or extra:
            raise ValidationError(
                f"case {self.case_id!r} does not match criteria (missing {missing}, extra {extra})",
                code="sensitivity.case-mismatch",
            )
        w = {c: float(self.weights[c]) for c in criteria}
        if any(not (v >= 0) for v in w.values()):
            raise ValidationError(f"case {self.case_id!r} has negative or NaN weights")
        total = sum(w.values())
        if total <= 0:
            raise DegenerateInputError(f"case {self.case_id!r}: all weights are zero", code="sensitivity.zero-weights")
        return {c: v / total for c, v in w.items()}

    def to_dict(self) -> dict:
        d = {"case_id": self.case_id, "weights": dict(self.weights)}
        if self.fuzzy_annotation:
            d["fuzzy_annotation"] = {k: list(v) for k, v in self.fuzzy_annotation.items()}
        return d


# Crisp SODCT weights of the five published cases; the printed fuzzy
# triples ride along as annotation (several are not ordered a <= b <= c).
_PAPER_SODCT = {
    "Case 0": ({"S": 0.234, "O": 0.363, "D": 0.115, "C": 0.185, "T": 0.103},
               {"S": (0.26, 0.30, 0.35), "O": (0.36, 0.32, 0.38), "D": (0.25, 0.12, 0.29),
                "C": (0.25, 0.32, 0.36), "T": (0.09, 0.15, 0.22)}),
    "Case 1": ({"S": 0.5, "O": 0.2, "D": 0.2, "C": 0.05, "T": 0.05},
               {"S": (0.38, 0.32, 0.48), "O": (0.22, 0.29, 0.32), "D": (0.26, 0.15, 0.31),
                "C": (0.02, 0.01, 0.13), "T": (0.09, 0.03, 0.19)}),
    "Case 2": ({"S": 0.28, "O": 0.05, "D": 0.28, "C": 0.11, "T": 0.28},
               {"S": (0.22, 0.23, 0.39), "O": (0.16, 0.10, 0.19), "D": (0.29, 0.23, 0.32),
                "C": (0.09, 0.06, 0.16), "T": (0.28, 0.33, 0.39)}),
    "Case 3": ({"S": 0.46, "O": 0.02, "D": 0.11, "C": 0.29, "T": 0.12},
               {"S": (0.46, 0.28, 0.38), "O": (0.15, 0.01, 0.17), "D": (0.12, 0.08, 0.14),
                "C": (0.39, 0.20, 0.29), "T": (0.10, 0.09, 0.28)}),
    "Case 4": ({"S": 0.08, "O": 0.19, "D": 0.29, "C": 0.29, "T": 0.15},
               {"S": (0.02, 0.01, 0.09), "O": (0.20, 0.12, 0.36), "D": (0.20, 0.19, 0.34),
                "C": (0.35, 0.25, 0.38), "T": (0.19, 0.20, 0.29)}),
}

PRESETS = {"paper-sodct"}


def paper_sodct_cases() -> list[WeightCase]:
    return [WeightCase(cid, w, a) for cid, (w, a) in _PAPER_SODCT.items()]


def load_cases(source) -> list[WeightCase]:
    """Cases from a preset name, a path to ``cases.json`` or parsed JSON."""
    if isinstance(source, str) and source in PRESETS:
        return paper_sodct_cases()
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        try:
            with open(source, encoding="utf-8") as fh:
                source = json.load(fh)
        except OSError as exc:
            raise ValidationError(f"cannot read cases file {source!s}: {exc}", code="io.unreadable") from None
        except json.JSONDecodeError as exc:
            raise ValidationError(
                f"cases file: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
                code="io.parse",
            ) from None
    if isinstance(source, dict):
        source = source.get("cases", source)
    if not isinstance(source, list) or not source:
        raise ValidationError("cases: expected a nonempty list of {case_id, weights}")
    out = []
    for i, item in enumerate(source, start=1):
        if isinstance(item, WeightCase):
            out.append(item)
            continue
        if not isinstance(item, dict) or "case_id" not in item or not isinstance(item.get("weights"), dict):
            raise ValidationError(f"cases entry {i}: expected {{case_id, weights: {{criterion: weight}}}}")
        out.append(WeightCase(str(item["case_id"]), {str(k): float(v) for k, v in item["weights"].items()},
                              {k: tuple(v) for k, v in item.get("fuzzy_annotation", {}).items()}))
    ids = [c.case_id for c in out]
    if len(set(ids)) != len(ids):
        raise ValidationError(f"cases: duplicate case ids in {ids}")
    return out


def spearman_rank_correlation(r1: Sequence[float], r2: Sequence[float]) -> float:
    """Spearman's rho between two rankings.

    Tied positions are converted to mid-ranks.  Without ties this is the
    closed form ``1 - 6 Σd² / (n (n² - 1))``; with ties it is Pearson's r
    on the mid-ranks.  Returns NaN when either ranking is constant.
    """
    if len(r1) != len(r2):
        raise ValidationError(f"rankings differ in length ({len(r1)} vs {len(r2)})", code="sensitivity.dimension")
    n = len(r1)
    if n < 2:
        raise ValidationError("need at least two ranked items")
    x = rankdata(r1)
    y = rankdata(r2)
    if len(set(x)) == n and len(set(y)) == n:
        d2 = float(np.sum((x - y) ** 2))
        return 1.0 - 6.0 * d2 / (n * (n * n - 1))
    xc, yc = x - x.mean(), y - y.mean()
    den = np.sqrt(np.sum(xc ** 2) * np.sum(yc ** 2))
    if den == 0:
        return float("nan")
    return float(np.clip(np.sum(xc * yc) / den, -1.0, 1.0))


def apply_weight_case(judgments, case: WeightCase, method: str = "z", criteria: Optional[Sequence[str]] = None,
                      **kw) -> RankingResult:
    """Rerun WASPAS with the case's renormalised crisp weights."""
    if method not in MODES:
        raise ValidationError(f"method must be one of {MODES}, got {method!r}")
    if criteria is None:
        criteria = list(case.weights)
    w = case.normalized(criteria)
    return ZWaspas(weights=w, mode=method, criteria=list(criteria), **kw).fit(judgments).result_


@dataclass
class StabilityReport:
    case_ids: list[str]
    alternatives: list[str]
    rank_matrix: np.ndarray  # alternatives x cases
    rank_range: dict[str, tuple[int, int]]
    spearman: dict[tuple[str, str], float]
    always_first: list[str]
    results: list[RankingResult] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "cases": list(self.case_ids),
            "rank_matrix": [
                {"id": a, "ranks": {c: int(r) for c, r in zip(self.case_ids, row)}}
                for a, row in zip(self.alternatives, self.rank_matrix)
            ],
            "rank_range": {a: list(v) for a, v in self.rank_range.items()},
            "spearman": [
                {"case_a": a, "case_b": b, "rho": (None if np.isnan(v) else float(v))}
                for (a, b), v in self.spearman.items()
            ],
            "always_rank_1": list(self.always_first),
        }


def stability_sweep(judgments, cases: Sequence[WeightCase], method: str = "z",
                    criteria: Optional[Sequence[str]] = None, **kw) -> StabilityReport:
    if not cases:
        raise ValidationError("stability sweep needs at least one case")
    results = [apply_weight_case(judgments, c, method, criteria, **kw) for c in cases]
    alternatives = list(results[0].alternatives)
    case_ids = [c.case_id for c in cases]
    ranks = np.column_stack([r.rank for r in results]).astype(int)
    rank_range = {a: (int(row.min()), int(row.max())) for a, row in zip(alternatives, ranks)}
    spearman = {}
    if len(alternatives) >= 2:
        for (i, a), (j, b) in itertools.combinations(enumerate(case_ids), 2):
            spearman[(a, b)] = spearman_rank_correlation(ranks[:, i], ranks[:, j])
    always = [a for a, row in zip(alternatives, ranks) if np.all(row == 1)]
    return StabilityReport(case_ids, alternatives, ranks, rank_range, spearman, always, results)
