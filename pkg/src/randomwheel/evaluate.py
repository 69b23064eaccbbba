"""Cross-validation harness, effectiveness metrics, and confidence analysis."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .dataset import Dataset, materialize_views, stratified_folds
from .errors import DomainError, UnclassifiableError
from .explain import AttributionReport, aggregate_explanation
from .wheel import WheelConfig, recommend, train

#: Published results of the ten Weka-default reference classifiers on the
#: same credit-approval benchmark; shipped as report-footer constants only.
REFERENCE_BASELINES: tuple[tuple[str, float, float, float, float], ...] = (
    ("NaiveBayes", 0.7770, 0.7930, 0.7690, 0.5340),
    ("BayesNet", 0.8620, 0.8640, 0.8610, 0.7186),
    ("Logistic", 0.8520, 0.8540, 0.8530, 0.7024),
    ("J48", 0.8610, 0.8610, 0.8610, 0.7180),
    ("SMO", 0.8490, 0.8610, 0.8500, 0.7003),
    ("IBk", 0.8120, 0.8110, 0.8110, 0.6178),
    ("MultilayerPerceptron", 0.8290, 0.8290, 0.8290, 0.6529),
    ("RandomForest", 0.8670, 0.8670, 0.8670, 0.7295),
    ("Dl4jMlpClassifier", 0.8160, 0.8160, 0.8160, 0.6268),
    ("AdaBoostM1", 0.8460, 0.8470, 0.8460, 0.6894),
)


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """Actual x predicted counts, aligned to ``class_tokens`` order."""

    counts: np.ndarray
    class_tokens: tuple[str, ...]

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    precision: float
    f_measure: float
    kappa: float
    #: classes never predicted; their precision entered the average as 0
    zero_predicted: tuple[str, ...] = ()


@dataclass(frozen=True)
class InstanceOutcome:
    """One evaluated test instance from the cross-validation ledger."""

    index: int
    fold: int
    actual: str
    predicted: str
    confidence: float
    correct: bool
    explanation: AttributionReport | None = None


@dataclass(frozen=True)
class ConfidenceSplit:
    """Mean confidence of correct vs. incorrect recommendations.

    ``incorrect_mean`` is None (absent, not zero) when nothing was
    misclassified.  ``items`` holds (confidence, correct) pairs sorted by
    descending confidence, ready for heat-strip style export.
    """

    correct_mean: float
    incorrect_mean: float | None
    correct_count: int
    incorrect_count: int
    items: tuple[tuple[float, bool], ...]


@dataclass(frozen=True, eq=False)
class CrossValidationResult:
    metrics: MetricsReport
    confidence: ConfidenceSplit
    ledger: tuple[InstanceOutcome, ...]
    confusion: ConfusionMatrix
    unclassifiable_count: int


def compute_metrics(cm: ConfusionMatrix) -> MetricsReport:
    """Accuracy, support-weighted precision/F-measure, and Cohen's kappa."""
    counts = cm.counts.astype(np.int64)
    total = counts.sum()
    if total <= 0:
        raise DomainError("empty confusion matrix")
    diag = np.diag(counts)
    support = counts.sum(axis=1)
    predicted = counts.sum(axis=0)

    accuracy = float(diag.sum() / total)
    precision_c = np.where(predicted > 0, diag / np.maximum(predicted, 1), 0.0)
    recall_c = np.where(support > 0, diag / np.maximum(support, 1), 0.0)
    pr_sum = precision_c + recall_c
    f_c = np.divide(
        2 * precision_c * recall_c,
        pr_sum,
        out=np.zeros_like(pr_sum),
        where=pr_sum > 0,
    )

    weights = support / total
    precision = float((weights * precision_c).sum())
    f_measure = float((weights * f_c).sum())

    p_e = float((support * predicted).sum() / (total * total))
    kappa = 0.0 if p_e >= 1.0 else float((accuracy - p_e) / (1.0 - p_e))

    zero_predicted = tuple(
        t for t, p, s in zip(cm.class_tokens, predicted, support) if p == 0 and s > 0
    )
    return MetricsReport(
        accuracy=accuracy,
        precision=precision,
        f_measure=f_measure,
        kappa=kappa,
        zero_predicted=zero_predicted,
    )


def confidence_split(ledger: Sequence[InstanceOutcome]) -> ConfidenceSplit:
    """Partition the ledger by correctness and average each side's confidence."""
    if not ledger:
        raise DomainError("empty ledger")
    correct = [e.confidence for e in ledger if e.correct]
    incorrect = [e.confidence for e in ledger if not e.correct]
    items = sorted(
        ((e.confidence, e.correct) for e in ledger), key=lambda it: -it[0]
    )
    return ConfidenceSplit(
        correct_mean=float(np.mean(correct)) if correct else 0.0,
        incorrect_mean=float(np.mean(incorrect)) if incorrect else None,
        correct_count=len(correct),
        incorrect_count=len(incorrect),
        items=tuple(items),
    )


def _subset(dataset: Dataset, mask: np.ndarray) -> Dataset:
    records = tuple(r for r, keep in zip(dataset.records, mask) if keep)
    return Dataset(
        schema=dataset.schema, records=records, class_tokens=dataset.class_tokens
    )


def _evaluate_fold(
    dataset: Dataset,
    config: WheelConfig,
    folds: np.ndarray,
    fold: int,
    explanations: bool,
    train_workers: int = 1,
) -> list[InstanceOutcome | int]:
    """Outcomes for one held-out fold; unclassifiable indices come back as ints."""
    test_mask = folds == fold
    model = train(
        _subset(dataset, ~test_mask),
        replace(config, seed=config.seed + fold),
        workers=train_workers,
    )
    out: list[InstanceOutcome | int] = []
    for idx in np.flatnonzero(test_mask):
        record = dataset.records[idx]
        try:
            rec = recommend(model, record.values)
        except UnclassifiableError:
            out.append(int(idx))
            continue
        report = (
            aggregate_explanation(rec, dataset.schema) if explanations else None
        )
        out.append(
            InstanceOutcome(
                index=int(idx),
                fold=fold,
                actual=record.label,
                predicted=rec.label,
                confidence=rec.confidence,
                correct=rec.label == record.label,
                explanation=report,
            )
        )
    return out


_fold_state: tuple | None = None


def _init_fold_worker(dataset, config, folds, explanations) -> None:
    global _fold_state
    _fold_state = (dataset, config, folds, explanations)


def _fold_worker(fold: int) -> list[InstanceOutcome | int]:
    assert _fold_state is not None
    dataset, config, folds, explanations = _fold_state
    return _evaluate_fold(dataset, config, folds, fold, explanations)


def cross_validate(
    dataset: Dataset,
    config: WheelConfig,
    k: int,
    seed: int,
    workers: int = 1,
    explanations: bool = False,
) -> CrossValidationResult:
    """Stratified k-fold evaluation: train on k-1 folds, score the held-out one.

    Fold models reuse the base config with the seed offset by the fold
    index.  Unclassifiable instances are excluded from the confusion matrix
    and reported in ``unclassifiable_count``.  Deterministic for fixed seeds
    at any ``workers`` count.
    """
    folds = stratified_folds(dataset, k, seed)

    if workers > 1:
        materialize_views(dataset)
        with ProcessPoolExecutor(
            max_workers=workers,
            initializer=_init_fold_worker,
            initargs=(dataset, config, folds, explanations),
        ) as pool:
            per_fold = list(pool.map(_fold_worker, range(k)))
    else:
        per_fold = [
            _evaluate_fold(dataset, config, folds, fold, explanations)
            for fold in range(k)
        ]

    tokens = dataset.class_tokens
    token_index = {t: i for i, t in enumerate(tokens)}
    counts = np.zeros((len(tokens), len(tokens)), dtype=np.int64)
    ledger: list[InstanceOutcome] = []
    unclassifiable = 0
    for outcomes in per_fold:
        for item in outcomes:
            if isinstance(item, int):
                unclassifiable += 1
                continue
            counts[token_index[item.actual], token_index[item.predicted]] += 1
            ledger.append(item)
    if not ledger:
        raise DomainError("no instance could be classified")

    confusion = ConfusionMatrix(counts=counts, class_tokens=tokens)
    return CrossValidationResult(
        metrics=compute_metrics(confusion),
        confidence=confidence_split(ledger),
        ledger=tuple(ledger),
        confusion=confusion,
        unclassifiable_count=unclassifiable,
    )


def export_confidence_csv(split: ConfidenceSplit, directory: str | os.PathLike) -> tuple[str, str]:
    """Write correct.csv / wrong.csv: one confidence per line, descending."""
    os.makedirs(directory, exist_ok=True)
    correct_path = os.path.join(directory, "correct.csv")
    wrong_path = os.path.join(directory, "wrong.csv")
    with open(correct_path, "w", encoding="utf-8") as fh:
        for conf, ok in split.items:
            if ok:
                fh.write(f"{conf!r}\n")
    with open(wrong_path, "w", encoding="utf-8") as fh:
        for conf, ok in split.items:
            if not ok:
                fh.write(f"{conf!r}\n")
    return correct_path, wrong_path


def format_metrics_report(result: CrossValidationResult) -> str:
    """Aligned text table with the published reference results as a footer."""
    m = result.metrics
    lines = [
        "metric      value",
        f"accuracy    {m.accuracy:.4f}",
        f"precision   {m.precision:.4f}",
        f"f-measure   {m.f_measure:.4f}",
        f"kappa       {m.kappa:.4f}",
        "",
        f"evaluated instances: {result.confusion.total}",
        f"unclassifiable:      {result.unclassifiable_count}",
        (
            f"confidence: correct mean {result.confidence.correct_mean:.4f} "
            f"({result.confidence.correct_count}), incorrect mean "
            + (
                f"{result.confidence.incorrect_mean:.4f} "
                if result.confidence.incorrect_mean is not None
                else "n/a "
            )
            + f"({result.confidence.incorrect_count})"
        ),
    ]
    if m.zero_predicted:
        lines.append(f"never predicted: {', '.join(m.zero_predicted)}")
    lines.append("")
    lines.append("reference classifiers (Weka defaults) on this benchmark:")
    lines.append("  classifier            accuracy precision f-measure kappa")
    for name, acc, prec, f1, kappa in REFERENCE_BASELINES:
        lines.append(f"  {name:<21} {acc:.4f}   {prec:.4f}    {f1:.4f}    {kappa:.4f}")
    return "\n".join(lines)
