"""Command-line interface: train, evaluate, recommend, factors.

Exit codes: 0 success, 2 usage or validation failure, 3 domain failure
(unclassifiable observation, no informative factors).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Sequence

from .dataset import (
    AttributeSchema,
    Value,
    parse_dataset,
    parse_schema,
)
from .errors import (
    DomainError,
    ModelFormatError,
    NoInformativeFactorsError,
    ParseError,
    UnclassifiableError,
)
from .evaluate import cross_validate, export_confidence_csv, format_metrics_report
from .explain import AttributionReport, aggregate_explanation
from .service import factors_listing, model_fingerprint, recommendation_payload
from .wheel import WheelConfig, load_model, recommend, save_model, train

USAGE_EXIT = 2
DOMAIN_EXIT = 3


def _default_seed() -> int:
    return int(os.environ.get("RW_SEED", "0"))


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--depth", type=int, default=3)
    parser.add_argument("--noise-fraction", type=float, default=0.5)
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--shuffles", type=int, default=100)
    parser.add_argument("--window", type=float, default=0.5)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--workers", type=int, default=1)


def _config_from(args: argparse.Namespace) -> WheelConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    return WheelConfig(
        depth=args.depth,
        noise_fraction=args.noise_fraction,
        trials=args.trials,
        importance_shuffles=args.shuffles,
        neighbor_window=args.window,
        seed=seed,
    )


def _load_dataset(args: argparse.Namespace):
    try:
        with open(args.schema, "r", encoding="utf-8") as fh:
            schema = parse_schema(fh.read())
    except FileNotFoundError:
        raise ParseError(f"schema not found: {args.schema}") from None
    try:
        with open(args.data, "r", encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise ParseError(f"data not found: {args.data}") from None
    return parse_dataset(text, schema, class_column=args.class_column)


def _parse_observation(schema: Sequence[AttributeSchema], text: str) -> tuple[Value, ...]:
    from .dataset import _parse_cell

    fields = [f.strip() for f in text.split(",")]
    if len(fields) != len(schema):
        raise DomainError(
            f"observation needs {len(schema)} comma-separated values, got {len(fields)}"
        )
    return tuple(_parse_cell(tok, attr, None) for tok, attr in zip(fields, schema))


def _format_recommendation(
    label: str, approve: bool, confidence: float, report: AttributionReport, top: int
) -> str:
    verdict = "approve" if approve else "reject"
    shown = report.top(top)
    parts = [f"{e.attribute} {e.percentage:.1f}%" for e in shown]
    others = 100.0 - sum(e.percentage for e in shown)
    if len(report.entries) > top and others > 0:
        parts.append(f"others {others:.1f}%")
    lines = [
        f"Recommendation: {label} ({verdict}), Confidence: {confidence * 100:.1f}%",
        f"Top factors: {', '.join(parts)}",
    ]
    if report.no_signal:
        lines.append("note: no explanation signal")
    return "\n".join(lines)


def _cmd_train(args: argparse.Namespace) -> int:
    config = _config_from(args)
    dataset = _load_dataset(args)
    started = time.perf_counter()
    model = train(dataset, config, workers=args.workers)
    save_model(model, args.out)
    elapsed = time.perf_counter() - started
    table = model.factor_table
    print(f"factors kept: {len(table.scores)} (discarded {table.discarded_count})")
    print(f"model written to {args.out}")
    print(f"elapsed: {elapsed:.2f}s")
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = _config_from(args)
    dataset = _load_dataset(args)
    result = cross_validate(
        dataset, config, k=args.k, seed=config.seed, workers=args.workers
    )
    if args.format == "json":
        doc = {
            "accuracy": result.metrics.accuracy,
            "precision": result.metrics.precision,
            "f_measure": result.metrics.f_measure,
            "kappa": result.metrics.kappa,
            "evaluated": result.confusion.total,
            "unclassifiable": result.unclassifiable_count,
            "confidence": {
                "correct_mean": result.confidence.correct_mean,
                "incorrect_mean": result.confidence.incorrect_mean,
                "correct_count": result.confidence.correct_count,
                "incorrect_count": result.confidence.incorrect_count,
            },
        }
        print(json.dumps(doc, indent=1))
    else:
        print(format_metrics_report(result))
    if args.confidence_out:
        correct_path, wrong_path = export_confidence_csv(
            result.confidence, args.confidence_out
        )
        print(f"confidence written to {correct_path}, {wrong_path}")
    return 0


def _cmd_recommend(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    version = model_fingerprint(model)
    if args.values is None and args.input is None:
        raise DomainError("provide --values or --input")
    observations: list[tuple[Value, ...]] = []
    if args.values is not None:
        observations.append(_parse_observation(model.schema, args.values))
    if args.input is not None:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                lines = [ln for ln in fh.read().splitlines() if ln.strip()]
        except FileNotFoundError:
            raise ParseError(f"input not found: {args.input}") from None
        observations.extend(
            _parse_observation(model.schema, ln) for ln in lines
        )

    payloads = []
    for obs in observations:
        rec = recommend(model, obs)
        report = aggregate_explanation(rec, model.schema)
        payloads.append(recommendation_payload(model, version, rec, report))
        if args.format == "text":
            print(
                _format_recommendation(
                    rec.label,
                    payloads[-1]["approve"],
                    rec.confidence,
                    report,
                    args.top,
                )
            )
    if args.format == "json":
        print(json.dumps(payloads if len(payloads) > 1 else payloads[0], indent=1))
    return 0


def _cmd_factors(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    rows = factors_listing(model, args.top)
    if args.format == "json":
        print(json.dumps({"factors": rows}, indent=1))
    else:
        for row in rows:
            print(f"{'+'.join(row['attributes']):<30} {row['importance']:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="randomwheel",
        description="Random wheel classifier: train, evaluate, recommend, explain",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="build and save a model")
    p_train.add_argument("--data", required=True)
    p_train.add_argument("--schema", required=True)
    p_train.add_argument("--out", required=True)
    p_train.add_argument("--class-column", type=int, default=None)
    _add_config_flags(p_train)
    p_train.set_defaults(func=_cmd_train)

    p_eval = sub.add_parser("evaluate", help="stratified k-fold cross-validation")
    p_eval.add_argument("--data", required=True)
    p_eval.add_argument("--schema", required=True)
    p_eval.add_argument("--class-column", type=int, default=None)
    p_eval.add_argument("--k", type=int, default=10)
    p_eval.add_argument("--confidence-out", default=None)
    p_eval.add_argument("--format", choices=("text", "json"), default="text")
    _add_config_flags(p_eval)
    p_eval.set_defaults(func=_cmd_evaluate)

    p_rec = sub.add_parser("recommend", help="classify observations with a model")
    p_rec.add_argument("--model", required=True)
    p_rec.add_argument("--values", default=None, help="comma list, ? for missing")
    p_rec.add_argument("--input", default=None, help="file of observations")
    p_rec.add_argument("--top", type=int, default=3)
    p_rec.add_argument("--format", choices=("text", "json"), default="text")
    p_rec.set_defaults(func=_cmd_recommend)

    p_fac = sub.add_parser("factors", help="dump the ranked factor table")
    p_fac.add_argument("--model", required=True)
    p_fac.add_argument("--top", type=int, default=None)
    p_fac.add_argument("--format", choices=("text", "json"), default="text")
    p_fac.set_defaults(func=_cmd_factors)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UnclassifiableError, NoInformativeFactorsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN_EXIT
    except (ParseError, ModelFormatError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
