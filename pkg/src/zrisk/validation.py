"""Judgment records and input validation helpers.

Estimators accept judgments as a pandas DataFrame, a list of dicts or a
list of the record dataclasses below; the ``check_*`` helpers normalise
any of those to a tuple of records and reject malformed input before any
computation runs.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import MISSING, dataclass, fields
from typing import Iterable, Optional, Sequence

from .exceptions import ValidationError
from .scales import RATING, RELIABILITY, WEIGHTING

DIRECTIONS = ("beneficial", "non-beneficial")
SODCT_FACTORS = ("S", "O", "D", "C", "T")


@dataclass(frozen=True)
class Criterion:
    id: str
    name: str = ""
    direction: str = "beneficial"


@dataclass(frozen=True)
class FailureMode:
    id: str
    label: str = ""


@dataclass(frozen=True)
class CriterionJudgment:
    expert_id: str
    criterion_id: str
    rank_position: int
    importance_term: Optional[str] = None
    reliability_term: Optional[str] = None


@dataclass(frozen=True)
class RatingJudgment:
    expert_id: str
    failure_mode_id: str
    criterion_id: str
    rating_term: str
    reliability_term: Optional[str] = None

    @property
    def alternative_id(self) -> str:
        return self.failure_mode_id


@dataclass(frozen=True)
class SodctRating:
    expert_id: str
    failure_mode_id: str
    factor: str
    value: int


def _blank(v) -> bool:
    if v is None:
        return True
    if isinstance(v, float) and v != v:  # NaN from pandas
        return True
    return isinstance(v, str) and v.strip() == ""


def _clean(v):
    if _blank(v):
        return None
    return v.strip() if isinstance(v, str) else v


def _as_records(data, cls, where: str) -> list:
    """Coerce a DataFrame / mappings / records into ``cls`` instances.

    Row numbers in error messages are 1-based data rows (header excluded).
    """
    if data is None:
        raise ValidationError(f"{where}: no data supplied")
    if hasattr(data, "to_dict") and hasattr(data, "columns"):
        data = data.to_dict(orient="records")
    names = [f.name for f in fields(cls)]
    out = []
    for i, item in enumerate(data, start=1):
        if isinstance(item, cls):
            out.append(item)
            continue
        if not isinstance(item, dict):
            raise ValidationError(f"{where} row {i}: expected a mapping, got {type(item).__name__}")
        missing = [n for n in names if n not in item and _required(cls, n)]
        if missing:
            raise ValidationError(f"{where} row {i}: missing field(s) {missing}")
        kwargs = {n: _clean(item.get(n)) for n in names}
        out.append(cls(**kwargs))
    return out


def _required(cls, name) -> bool:
    for f in fields(cls):
        if f.name == name:
            return f.default is MISSING and f.default_factory is MISSING
    return False


def _to_int(v, where: str) -> int:
    try:
        f = float(v)
    except (TypeError, ValueError):
        raise ValidationError(f"{where}: expected an integer, got {v!r}") from None
    if f != int(f):
        raise ValidationError(f"{where}: expected an integer, got {v!r}")
    return int(f)


def check_criteria(criteria) -> tuple[Criterion, ...]:
    recs = _as_records(criteria, Criterion, "criteria")
    if not recs:
        raise ValidationError("criteria: at least one criterion is required")
    seen = set()
    out = []
    for i, c in enumerate(recs, start=1):
        if not c.id:
            raise ValidationError(f"criteria row {i}: empty id")
        if c.id in seen:
            raise ValidationError(f"criteria row {i}: duplicate id {c.id!r}", code="validation.duplicate")
        seen.add(c.id)
        direction = c.direction or "beneficial"
        if direction not in DIRECTIONS:
            raise ValidationError(
                f"criteria row {i}: direction {direction!r} not in {DIRECTIONS}"
            )
        out.append(Criterion(str(c.id), c.name or "", direction))
    return tuple(out)


def check_failure_modes(modes) -> tuple[FailureMode, ...]:
    recs = _as_records(modes, FailureMode, "failure_modes")
    if not recs:
        raise ValidationError("failure_modes: at least one failure mode is required")
    seen = set()
    for i, f in enumerate(recs, start=1):
        if not f.id:
            raise ValidationError(f"failure_modes row {i}: empty id")
        if f.id in seen:
            raise ValidationError(
                f"failure_modes row {i}: duplicate id {f.id!r}", code="validation.duplicate"
            )
        seen.add(f.id)
    return tuple(FailureMode(str(f.id), f.label or "") for f in recs)


def _check_term(scale, term, where):
    if term not in scale:
        raise ValidationError(
            f"{where}: unknown {scale.name} term {term!r}; valid codes: {', '.join(scale.codes)}",
            code="validation.unknown-term",
        )


def check_weighting_judgments(
    judgments, criteria: Optional[Sequence[str]] = None
) -> tuple[CriterionJudgment, ...]:
    """Validate per-expert criterion rankings.

    Each expert must rank every criterion exactly once with positions
    ``1..n``; the rank-1 criterion carries no terms, all others carry both.
    """
    recs = _as_records(judgments, CriterionJudgment, "weighting_judgments")
    if not recs:
        raise ValidationError("weighting_judgments: no judgments supplied")
    by_expert = defaultdict(list)
    out = []
    for i, j in enumerate(recs, start=1):
        where = f"weighting_judgments row {i}"
        pos = _to_int(j.rank_position, f"{where} rank_position")
        if pos < 1:
            raise ValidationError(f"{where}: rank_position must be positive, got {pos}")
        j = CriterionJudgment(str(j.expert_id), str(j.criterion_id), pos,
                              j.importance_term, j.reliability_term)
        if pos == 1:
            if j.importance_term is not None or j.reliability_term is not None:
                raise ValidationError(f"{where}: the rank-1 criterion must not carry terms")
        else:
            if j.importance_term is None or j.reliability_term is None:
                raise ValidationError(
                    f"{where}: criterion {j.criterion_id!r} at rank {pos} needs both "
                    "importance_term and reliability_term",
                    code="validation.missing-judgment",
                )
            _check_term(WEIGHTING, j.importance_term, where)
            _check_term(RELIABILITY, j.reliability_term, where)
        by_expert[j.expert_id].append(j)
        out.append(j)

    reference = None
    for expert, js in by_expert.items():
        ids = [j.criterion_id for j in js]
        if len(set(ids)) != len(ids):
            dup = sorted({c for c in ids if ids.count(c) > 1})
            raise ValidationError(
                f"weighting_judgments: expert {expert!r} judges {dup} more than once",
                code="validation.duplicate",
            )
        positions = sorted(j.rank_position for j in js)
        if positions != list(range(1, len(js) + 1)):
            raise ValidationError(
                f"weighting_judgments: expert {expert!r} rank positions {positions} "
                f"are not a permutation of 1..{len(js)}"
            )
        if reference is None:
            reference = (expert, set(ids))
        elif set(ids) != reference[1]:
            only_ref = sorted(reference[1] - set(ids))
            only_this = sorted(set(ids) - reference[1])
            raise ValidationError(
                f"weighting_judgments: expert {expert!r} ranks a different criterion set "
                f"than expert {reference[0]!r} (missing {only_ref}, extra {only_this})"
            )
    if criteria is not None and reference[1] != set(criteria):
        raise ValidationError(
            "weighting_judgments: ranked criteria "
            f"{sorted(reference[1])} differ from declared criteria {sorted(criteria)}"
        )
    return tuple(out)


def check_rating_judgments(
    judgments,
    alternatives: Optional[Sequence[str]] = None,
    criteria: Optional[Sequence[str]] = None,
    require_reliability: bool = True,
) -> tuple[RatingJudgment, ...]:
    """Validate a rating panel and check that every expert covers the full grid."""
    recs = _as_records(judgments, RatingJudgment, "rating_judgments")
    if not recs:
        raise ValidationError("rating_judgments: no judgments supplied")
    out = []
    seen = set()
    for i, r in enumerate(recs, start=1):
        where = f"rating_judgments row {i}"
        r = RatingJudgment(str(r.expert_id), str(r.failure_mode_id), str(r.criterion_id),
                           r.rating_term, r.reliability_term)
        if r.rating_term is None:
            raise ValidationError(f"{where}: missing rating_term")
        _check_term(RATING, r.rating_term, where)
        if r.reliability_term is None:
            if require_reliability:
                raise ValidationError(f"{where}: missing reliability_term")
        else:
            _check_term(RELIABILITY, r.reliability_term, where)
        key = (r.expert_id, r.failure_mode_id, r.criterion_id)
        if key in seen:
            raise ValidationError(f"{where}: duplicate judgment for {key}", code="validation.duplicate")
        seen.add(key)
        out.append(r)

    experts = _ordered_unique(r.expert_id for r in out)
    alts = list(alternatives) if alternatives is not None else _ordered_unique(r.failure_mode_id for r in out)
    crits = list(criteria) if criteria is not None else _ordered_unique(r.criterion_id for r in out)
    unknown = sorted({r.failure_mode_id for r in out} - set(alts))
    if unknown:
        raise ValidationError(f"rating_judgments: unknown failure mode id(s) {unknown}")
    unknown = sorted({r.criterion_id for r in out} - set(crits))
    if unknown:
        raise ValidationError(f"rating_judgments: unknown criterion id(s) {unknown}")
    missing = [(e, a, c) for e in experts for a in alts for c in crits if (e, a, c) not in seen]
    if missing:
        shown = ", ".join(f"({e}, {a}, {c})" for e, a, c in missing[:20])
        more = f" and {len(missing) - 20} more" if len(missing) > 20 else ""
        raise ValidationError(
            f"rating_judgments: incomplete grid, missing (expert, failure mode, criterion) "
            f"triple(s): {shown}{more}",
            code="validation.incomplete-grid",
        )
    return tuple(out)


def check_sodct_ratings(
    ratings, failure_modes: Optional[Sequence[str]] = None,
    factors: Sequence[str] = SODCT_FACTORS,
) -> tuple[SodctRating, ...]:
    recs = _as_records(ratings, SodctRating, "sodct_ratings")
    if not recs:
        raise ValidationError("sodct_ratings: no ratings supplied")
    out = []
    seen = set()
    for i, r in enumerate(recs, start=1):
        where = f"sodct_ratings row {i}"
        value = _to_int(r.value, f"{where} value")
        if not 1 <= value <= 10:
            raise ValidationError(f"{where}: value must be an integer in [1, 10], got {value}")
        if r.factor not in factors:
            raise ValidationError(f"{where}: unknown factor {r.factor!r}; valid: {', '.join(factors)}")
        r = SodctRating(str(r.expert_id), str(r.failure_mode_id), r.factor, value)
        key = (r.expert_id, r.failure_mode_id, r.factor)
        if key in seen:
            raise ValidationError(f"{where}: duplicate rating for {key}", code="validation.duplicate")
        seen.add(key)
        out.append(r)
    modes = list(failure_modes) if failure_modes is not None else _ordered_unique(r.failure_mode_id for r in out)
    unknown = sorted({r.failure_mode_id for r in out} - set(modes))
    if unknown:
        raise ValidationError(f"sodct_ratings: unknown failure mode id(s) {unknown}")
    rated = {(r.failure_mode_id, r.factor) for r in out}
    missing = [(m, f) for m in modes for f in factors if (m, f) not in rated]
    if missing:
        shown = ", ".join(f"({m}, {f})" for m, f in missing[:20])
        raise ValidationError(
            f"sodct_ratings: no rating for (failure mode, factor) {shown}",
            code="validation.missing-factor",
        )
    return tuple(out)


def check_weight_vector(weights: Iterable[float], n: int, where: str = "weights") -> list[float]:
    w = [float(x) for x in weights]
    if len(w) != n:
        raise ValidationError(f"{where}: expected {n} weights, got {len(w)}", code="validation.dimension")
    if any(not (x >= 0) or x == float("inf") for x in w):
        raise ValidationError(f"{where}: weights must be finite and nonnegative, got {w}")
    return w


def _ordered_unique(items: Iterable[str]) -> list[str]:
    seen = {}
    for x in items:
        seen.setdefault(x, None)
    return list(seen)
