"""Pipeline orchestration and report serialisation."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Optional

from . import __version__
from .exceptions import ValidationError
from .fmea import RPNRanker, compare_methods
from .io import Inputs
from .scales import EI_MODES
from .sensitivity import PRESETS, load_cases, stability_sweep
from .swara import RECURRENCES, ZSwara
from .waspas import DEFAULT_TIE_TOLERANCE, MODES, ZWaspas

METHODS = ("rpn", "fuzzy-waspas", "z-waspas")
FORMATS = ("json", "csv", "markdown")
_METHOD_TITLES = {"rpn": "Conventional FMEA", "fuzzy-waspas": "Fuzzy-WASPAS", "z-waspas": "Z-WASPAS"}
_SCORE_HEADERS = {"rpn": "RPN", "fuzzy-waspas": "K_i", "z-waspas": "K_i"}


@dataclass(frozen=True)
class AnalysisConfig:
    swara_recurrence: str = "standard"
    ei_mode: str = "table"
    rounding: int = 2
    tie_tolerance: float = DEFAULT_TIE_TOLERANCE
    methods: tuple[str, ...] = METHODS
    sensitivity_cases: Optional[str] = None
    sensitivity_method: str = "z"

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(self.methods))
        if self.swara_recurrence not in RECURRENCES:
            raise ValidationError(f"config: swara_recurrence must be one of {RECURRENCES}", code="config.invalid")
        if self.ei_mode not in EI_MODES:
            raise ValidationError(f"config: ei_mode must be one of {EI_MODES}", code="config.invalid")
        if not isinstance(self.rounding, int) or self.rounding < 0:
            raise ValidationError("config: rounding must be a nonnegative integer", code="config.invalid")
        if not (isinstance(self.tie_tolerance, (int, float)) and self.tie_tolerance > 0):
            raise ValidationError("config: tie_tolerance must be positive", code="config.invalid")
        bad = [m for m in self.methods if m not in METHODS]
        if bad or not self.methods:
            raise ValidationError(f"config: methods must be a nonempty subset of {METHODS}, got {bad}",
                                  code="config.invalid")
        if self.sensitivity_method not in MODES:
            raise ValidationError(f"config: sensitivity_method must be one of {MODES}", code="config.invalid")

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(d) - known)
        if unknown:
            raise ValidationError(f"config: unknown key(s) {unknown}", code="config.invalid")
        # keep methods in canonical order whatever order the file lists them
        if "methods" in d:
            d = {**d, "methods": tuple(m for m in METHODS if m in d["methods"])
                 + tuple(m for m in d["methods"] if m not in METHODS)}
        return cls(**d)

    @classmethod
    def load(cls, path) -> "AnalysisConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ValidationError(f"cannot read config {path}: {exc.strerror}", code="io.unreadable") from None
        except json.JSONDecodeError as exc:
            raise ValidationError(f"config {path} line {exc.lineno}: {exc.msg}", code="io.parse") from None
        if not isinstance(data, dict):
            raise ValidationError("config must be a JSON object", code="config.invalid")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["methods"] = list(self.methods)
        return d


def run_analysis(config: AnalysisConfig, inputs: Inputs, cases=None) -> dict:
    """Weights, per-method rankings, comparison and optional sensitivity sweep.

    ``cases`` overrides ``config.sensitivity_cases`` (a preset name, a path
    or already-parsed cases).
    """
    if "rpn" in config.methods and inputs.sodct is None:
        raise ValidationError("method 'rpn' needs SODCT ratings (--sodct)", code="cli.missing-input")
    if cases is None and config.sensitivity_cases is not None:
        cases = config.sensitivity_cases
    case_list = load_cases(cases) if cases is not None else None
    warnings = []

    swara = ZSwara(recurrence=config.swara_recurrence, ei_mode=config.ei_mode).fit(inputs.weighting)
    weights = swara.weights_
    if config.swara_recurrence == "literal":
        warnings.append("literal SWARA recurrence divides by sub-unit terms; lower-ranked criteria "
                        "may receive larger weights")

    crit = inputs.criterion_ids
    waspas_kw = dict(criteria=crit, alternatives=inputs.failure_mode_ids,
                     directions=dict(zip(crit, inputs.directions)), tie_tolerance=config.tie_tolerance)
    results = {}
    for m in METHODS:
        if m not in config.methods:
            continue
        if m == "rpn":
            results[m] = RPNRanker(failure_modes=inputs.failure_mode_ids).fit(inputs.sodct).result_
        else:
            mode = "z" if m == "z-waspas" else "fuzzy"
            results[m] = ZWaspas(weights=weights.as_dict(), mode=mode, **waspas_kw).fit(inputs.ratings).result_
        if results[m].ties:
            for group in results[m].ties:
                warnings.append(f"{m}: tied failure modes {', '.join(group)}")

    sensitivity = None
    if case_list is not None:
        if isinstance(cases, str) and cases in PRESETS:
            warnings.append(f"preset {cases!r}: crisp case weights are used as published; they do not equal "
                            "the centroids of the accompanying fuzzy weights")
        sweep = stability_sweep(inputs.ratings, case_list, config.sensitivity_method, crit,
                                alternatives=inputs.failure_mode_ids,
                                directions=dict(zip(crit, inputs.directions)),
                                tie_tolerance=config.tie_tolerance)
        sensitivity = {"method": config.sensitivity_method,
                       "case_definitions": [c.to_dict() for c in case_list], **sweep.to_dict()}

    comparison = compare_methods(results).to_dict() if results else None
    return {
        "metadata": {
            "tool": "zrisk",
            "version": __version__,
            "config": config.to_dict(),
            "inputs": dict(sorted(inputs.digests.items())),
        },
        "failure_modes": [{"id": f.id, "label": f.label} for f in inputs.failure_modes],
        "criteria": [{"id": c.id, "name": c.name, "direction": c.direction} for c in inputs.criteria],
        "weights": {
            "order": list(weights.criteria),
            "comparative_importance": [list(t.as_tuple()) for t in swara.comparative_importance_],
            **{k: v for k, v in weights.to_dict().items() if k != "criteria"},
            "by_criterion": {c: weights.as_dict()[c] for c in crit},
        },
        "methods": {m: r.to_dict() for m, r in results.items()},
        "comparison": comparison,
        "sensitivity": sensitivity,
        "warnings": warnings,
    }


def _check_finite(obj, path="report"):
    if isinstance(obj, float) and not math.isfinite(obj):
        raise ValidationError(f"{path} holds a non-finite number", code="report.non-finite")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _check_finite(v, f"{path}.{k}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _check_finite(v, f"{path}[{i}]")


def to_json(report: dict) -> str:
    _check_finite(report)
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _fmt(x, nd):
    return f"{x:.{nd}f}"


def _comparison_rows(report):
    comp = report.get("comparison")
    if not comp:
        return [], []
    methods = comp["methods"]
    header = ["failure_mode_id"]
    for m in methods:
        key = m.replace("-", "_")
        header += [f"{key}_score", f"{key}_rank"]
    rows = []
    for r in comp["rows"]:
        row = [r["id"]]
        for m in methods:
            row += [repr(r[m]["score"]), str(r[m]["rank"])]
        rows.append(row)
    return header, rows


def to_csv(report: dict) -> dict[str, str]:
    """One CSV document per table section, keyed by file name."""
    out = {}

    def write(name, header, rows):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        out[name] = buf.getvalue()

    wts = report["weights"]
    rows = []
    for c, q, fw, cw in zip(wts["order"], wts["fuzzy_q"], wts["fuzzy_w"], wts["crisp_w"]):
        rows.append([c, *map(repr, q), *map(repr, fw), repr(cw)])
    write("weights.csv", ["criterion_id", "q_a", "q_b", "q_c", "w_a", "w_b", "w_c", "crisp_w"], rows)

    header, rows = _comparison_rows(report)
    if header:
        write("comparison.csv", header, rows)

    sens = report.get("sensitivity")
    if sens:
        cases = sens["cases"]
        write("sensitivity.csv", ["failure_mode_id", *cases],
              [[r["id"], *(str(r["ranks"][c]) for c in cases)] for r in sens["rank_matrix"]])
    return out


def to_markdown(report: dict) -> str:
    nd = report["metadata"]["config"]["rounding"]
    labels = {f["id"]: f["label"] for f in report["failure_modes"]}
    lines = ["# Failure-mode prioritisation report", ""]

    wts = report["weights"]
    lines += ["## Criterion weights", "", "| Criterion | Fuzzy weight | Crisp weight |", "|---|---|---|"]
    for c, fw, cw in zip(wts["order"], wts["fuzzy_w"], wts["crisp_w"]):
        lines.append(f"| {c} | ({', '.join(_fmt(v, nd) for v in fw)}) | {_fmt(cw, nd)} |")
    lines.append("")

    comp = report.get("comparison")
    if comp:
        methods = comp["methods"]
        lines += ["## Method comparison", ""]
        lines.append("Column groups: " + "; ".join(_METHOD_TITLES[m] for m in methods))
        lines.append("")
        head = ["Failure Modes"]
        for m in methods:
            head += [_SCORE_HEADERS[m], "Rank"]
        lines.append("| " + " | ".join(head) + " |")
        lines.append("|" + "---|" * len(head))
        for r in comp["rows"]:
            cells = [r["id"]]
            for m in methods:
                score = r[m]["score"]
                cells += [str(int(round(score))) if m == "rpn" else _fmt(score, nd), str(r[m]["rank"])]
            lines.append("| " + " | ".join(cells) + " |")
        lines.append("")
        if comp["spearman"]:
            lines += ["| Methods | Spearman rho |", "|---|---|"]
            for s in comp["spearman"]:
                rho = "n/a" if s["rho"] is None else _fmt(s["rho"], 3)
                lines.append(f"| {s['method_a']} vs {s['method_b']} | {rho} |")
            lines.append("")

    sens = report.get("sensitivity")
    if sens:
        cases = sens["cases"]
        lines += ["## Sensitivity analysis", "", "| Failure Modes | " + " | ".join(cases) + " |",
                  "|" + "---|" * (len(cases) + 1)]
        for r in sens["rank_matrix"]:
            lines.append(f"| {r['id']} | " + " | ".join(str(r["ranks"][c]) for c in cases) + " |")
        lines.append("")
        always = ", ".join(sens["always_rank_1"]) or "none"
        lines += [f"Ranked first in every case: {always}", ""]

    if labels:
        lines += ["## Failure modes", "", "| Id | Label |", "|---|---|"]
        lines += [f"| {k} | {v} |" for k, v in labels.items()]
        lines.append("")
    if report.get("warnings"):
        lines += ["## Warnings", ""] + [f"- {w}" for w in report["warnings"]] + [""]
    return "\n".join(lines)


def emit_report(report: dict, fmt: str = "json", out_dir=None) -> dict[str, str]:
    """Serialise ``report``; write into ``out_dir`` when given.

    Returns ``{file_name: content}``.
    """
    if fmt not in FORMATS:
        raise ValidationError(f"format must be one of {FORMATS}, got {fmt!r}", code="cli.format")
    if fmt == "json":
        docs = {"report.json": to_json(report)}
    elif fmt == "csv":
        docs = to_csv(report)
    else:
        docs = {"report.md": to_markdown(report)}
    if out_dir is not None:
        out = Path(out_dir)
        try:
            out.mkdir(parents=True, exist_ok=True)
            for name, text in docs.items():
                (out / name).write_text(text, encoding="utf-8", newline="")
        except OSError as exc:
            raise ValidationError(f"cannot write report to {out}: {exc.strerror}", code="io.unwritable") from None
    return docs
