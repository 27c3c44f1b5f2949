"""CSV ingestion with strict headers and cross-reference validation."""
from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from .exceptions import ValidationError
from .validation import (
    Criterion,
    CriterionJudgment,
    FailureMode,
    RatingJudgment,
    SodctRating,
    check_criteria,
    check_failure_modes,
    check_rating_judgments,
    check_sodct_ratings,
    check_weighting_judgments,
)

SCHEMAS = {
    "criteria": ("id", "name", "direction"),
    "failure_modes": ("id", "label"),
    "weighting_judgments": ("expert_id", "criterion_id", "rank_position", "importance_term", "reliability_term"),
    "rating_judgments": ("expert_id", "failure_mode_id", "criterion_id", "rating_term", "reliability_term"),
    "sodct_ratings": ("expert_id", "failure_mode_id", "factor", "value"),
}


@dataclass(frozen=True)
class Inputs:
    criteria: tuple[Criterion, ...]
    failure_modes: tuple[FailureMode, ...]
    weighting: tuple[CriterionJudgment, ...]
    ratings: tuple[RatingJudgment, ...]
    sodct: Optional[tuple[SodctRating, ...]] = None
    digests: dict = field(default_factory=dict)

    @property
    def criterion_ids(self) -> list[str]:
        return [c.id for c in self.criteria]

    @property
    def failure_mode_ids(self) -> list[str]:
        return [f.id for f in self.failure_modes]

    @property
    def directions(self) -> list[str]:
        return [c.direction for c in self.criteria]


def read_table(source, kind: str) -> tuple[list[dict], str]:
    """Parse one CSV file of the given schema.

    ``source`` is a path or raw text.  Returns the rows and the SHA-256 of
    the raw bytes.
    """
    header = SCHEMAS[kind]
    if isinstance(source, (str, Path)) and not (isinstance(source, str) and "\n" in source):
        try:
            raw = Path(source).read_bytes()
        except OSError as exc:
            raise ValidationError(f"{kind}: cannot read {source}: {exc.strerror}", code="io.unreadable") from None
        name = str(source)
    else:
        raw = source.encode("utf-8") if isinstance(source, str) else bytes(source)
        name = f"<{kind}>"
    digest = hashlib.sha256(raw).hexdigest()
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise ValidationError(f"{name}: not valid UTF-8 ({exc.reason})", code="io.parse") from None
    reader = csv.reader(io.StringIO(text, newline=""), strict=True)
    rows = []
    try:
        got = next(reader, None)
        if got is None:
            raise ValidationError(f"{name}: empty file, expected header {','.join(header)}", code="io.parse")
        got = tuple(h.strip() for h in got)
        if got != header:
            raise ValidationError(
                f"{name} line 1: header {','.join(got)!r} does not match required {','.join(header)!r}",
                code="io.header",
            )
        for rec in reader:
            if not rec or all(not c.strip() for c in rec):
                continue
            if len(rec) != len(header):
                raise ValidationError(
                    f"{name} line {reader.line_num}: expected {len(header)} fields, got {len(rec)}",
                    code="io.parse",
                )
            rows.append(dict(zip(header, rec)))
    except csv.Error as exc:
        raise ValidationError(f"{name} line {reader.line_num}: {exc}", code="io.parse") from None
    return rows, digest


def load_inputs(criteria, failure_modes, weighting, ratings, sodct=None,
                require_reliability: bool = True) -> Inputs:
    """Load and cross-validate every input table before any computation."""
    digests = {}

    def table(src, kind):
        rows, digests[kind] = read_table(src, kind)
        return rows

    crit = check_criteria(table(criteria, "criteria"))
    modes = check_failure_modes(table(failure_modes, "failure_modes"))
    cids = [c.id for c in crit]
    fids = [f.id for f in modes]
    w = check_weighting_judgments(table(weighting, "weighting_judgments"), cids)
    r = check_rating_judgments(table(ratings, "rating_judgments"), fids, cids, require_reliability)
    s = None
    if sodct is not None:
        s = check_sodct_ratings(table(sodct, "sodct_ratings"), fids)
    return Inputs(crit, modes, w, r, s, digests)


def demo_paths() -> dict[str, Path]:
    """Paths of the bundled demo dataset."""
    base = resources.files("zrisk") / "data" / "demo"
    return {
        "criteria": Path(str(base / "criteria.csv")),
        "failure_modes": Path(str(base / "failure_modes.csv")),
        "weighting": Path(str(base / "weighting_judgments.csv")),
        "ratings": Path(str(base / "rating_judgments.csv")),
        "sodct": Path(str(base / "sodct_ratings.csv")),
    }


def load_demo() -> Inputs:
    return load_inputs(**demo_paths())
