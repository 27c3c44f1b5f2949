"""Command-line interface.

Exit codes: 0 success, 1 input or validation error, 2 internal error.
"""
from __future__ import annotations

import argparse
import json
import sys

import pandas as pd

from .exceptions import ZRiskError
from .io import demo_paths, load_inputs
from .report import FORMATS, METHODS, AnalysisConfig, emit_report, run_analysis
from .scales import scales_as_dict
from .stats import REGRESSION_PRESETS, RegressionSpec, cronbach_alpha, kruskal_wallis, mean_ranks, \
    moderated_regression


def _add_inputs(p):
    g = p.add_argument_group("inputs")
    g.add_argument("--criteria", help="criteria.csv (id,name,direction)")
    g.add_argument("--failure-modes", help="failure_modes.csv (id,label)")
    g.add_argument("--weighting", help="weighting_judgments.csv")
    g.add_argument("--ratings", help="rating_judgments.csv")
    g.add_argument("--sodct", help="sodct_ratings.csv (needed for the rpn method)")
    g.add_argument("--demo", action="store_true", help="use the bundled demo dataset")
    p.add_argument("--config", help="JSON analysis config")
    p.add_argument("--methods", help=f"comma-separated subset of {','.join(METHODS)}")
    p.add_argument("--out", help="output directory (default: stdout)")
    p.add_argument("--format", choices=FORMATS, default="json")


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1); 2 is reserved for internal failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zrisk", description="Z-number FMEA prioritisation toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="weights, rankings and method comparison")
    _add_inputs(p)
    p.add_argument("--cases", help="optional sensitivity cases: cases.json or 'paper-sodct'")

    p = sub.add_parser("sensitivity", help="weight-case sensitivity sweep")
    _add_inputs(p)
    p.add_argument("--cases", required=True, help="cases.json or 'paper-sodct'")
    p.add_argument("--method", choices=("z", "fuzzy"), help="WASPAS variant for the sweep")

    sub.add_parser("scales", help="dump the linguistic scales as JSON")

    p = sub.add_parser("stats", help="questionnaire statistics")
    p.add_argument("test", choices=("cronbach", "kruskal", "regress"))
    p.add_argument("--input", required=True, help="survey.csv: respondent_id plus one column per item")
    p.add_argument("--items", help="comma-separated item columns (default: all but respondent_id)")
    p.add_argument("--preset", choices=sorted(REGRESSION_PRESETS), help="named regression model")
    p.add_argument("--dependent")
    p.add_argument("--predictor")
    p.add_argument("--moderator")
    return parser


def _inputs(args, require_reliability):
    if args.demo:
        paths = demo_paths()
    else:
        needed = {"criteria": args.criteria, "failure_modes": args.failure_modes,
                  "weighting": args.weighting, "ratings": args.ratings}
        missing = [f"--{k.replace('_', '-')}" for k, v in needed.items() if v is None]
        if missing:
            raise ZRiskError(f"missing required input(s): {', '.join(missing)} (or use --demo)",
                             code="cli.missing-input")
        paths = {**needed, "sodct": args.sodct}
    return load_inputs(**paths, require_reliability=require_reliability)


def _config(args):
    cfg = AnalysisConfig.load(args.config) if args.config else AnalysisConfig()
    overrides = {}
    if args.methods:
        overrides["methods"] = [m.strip() for m in args.methods.split(",") if m.strip()]
    if getattr(args, "method", None):
        overrides["sensitivity_method"] = args.method
    if overrides:
        cfg = AnalysisConfig.from_dict({**cfg.to_dict(), **overrides})
    return cfg


def _emit(report, args):
    docs = emit_report(report, args.format, args.out)
    if args.out is None:
        if len(docs) == 1:
            sys.stdout.write(next(iter(docs.values())))
        else:
            for name, text in docs.items():
                sys.stdout.write(f"# {name}\n{text}\n")


def _cmd_analyze(args):
    cfg = _config(args)
    if args.command == "sensitivity" and args.config is None and not args.methods:
        cfg = AnalysisConfig.from_dict({**cfg.to_dict(), "methods": ["z-waspas"]})
    inputs = _inputs(args, require_reliability=("z-waspas" in cfg.methods or cfg.sensitivity_method == "z"))
    report = run_analysis(cfg, inputs, cases=args.cases)
    _emit(report, args)


def _read_survey(args):
    try:
        df = pd.read_csv(args.input)
    except FileNotFoundError:
        raise ZRiskError(f"cannot read {args.input}", code="io.unreadable") from None
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise ZRiskError(f"{args.input}: {exc}", code="io.parse") from None
    if args.items:
        cols = [c.strip() for c in args.items.split(",")]
        missing = [c for c in cols if c not in df.columns]
        if missing:
            raise ZRiskError(f"{args.input}: no column(s) {missing}", code="validation.invalid")
        items = df[cols]
    else:
        items = df.drop(columns=[c for c in ("respondent_id",) if c in df.columns])
    return df, items


def _cmd_stats(args):
    df, items = _read_survey(args)
    if args.test == "cronbach":
        out = cronbach_alpha(items)
    elif args.test == "kruskal":
        res = kruskal_wallis([items[c].to_numpy(float) for c in items.columns])
        out = {**res.to_dict(), "mean_ranks": mean_ranks(items)}
    else:
        if args.preset:
            spec = REGRESSION_PRESETS[args.preset]
        else:
            if not (args.dependent and args.predictor and args.moderator):
                raise ZRiskError("regress needs --preset or all of --dependent/--predictor/--moderator",
                                 code="cli.missing-input")
            spec = RegressionSpec(args.dependent, args.predictor, args.moderator)
        out = moderated_regression(spec, df)
    sys.stdout.write(json.dumps(_nan_to_null(out), indent=2, sort_keys=True, allow_nan=False) + "\n")


def _nan_to_null(o):
    if isinstance(o, float) and o != o:
        return None
    if isinstance(o, dict):
        return {k: _nan_to_null(v) for k, v in o.items()}
    if isinstance(o, list):
        return [_nan_to_null(v) for v in o]
    return o


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("analyze", "sensitivity"):
            _cmd_analyze(args)
        elif args.command == "scales":
            sys.stdout.write(json.dumps(scales_as_dict(), indent=2) + "\n")
        else:
            _cmd_stats(args)
    except ZRiskError as exc:
        print(f"zrisk: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"zrisk: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
