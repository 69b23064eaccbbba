"""Per-attribute contribution percentages for a recommendation.

Every factor that pushed the winning wheel splits its h * f_winner product
uniformly across its attributes; summing over all trials and normalizing
yields the percentage each attribute contributed to the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .dataset import AttributeSchema
from .errors import DomainError
from .wheel import Recommendation, TrialResult


@dataclass(frozen=True)
class AttributionEntry:
    attribute: str
    contribution: float
    percentage: float


@dataclass(frozen=True)
class AttributionReport:
    """All schema attributes, sorted by descending percentage.

    Percentages are nonnegative and sum to 100 unless no factor produced
    any force on the winning wheel, in which case ``no_signal`` is set and
    every percentage is zero.
    """

    entries: tuple[AttributionEntry, ...]
    winner_label: str
    no_signal: bool = False

    def top(self, n: int) -> tuple[AttributionEntry, ...]:
        return self.entries[:n]

    def as_dict(self) -> dict[str, Any]:
        return {
            "winner_label": self.winner_label,
            "no_signal": self.no_signal,
            "entries": [
                {
                    "attribute": e.attribute,
                    "contribution": e.contribution,
                    "percentage": e.percentage,
                }
                for e in self.entries
            ],
        }


def trial_contribution(trial: TrialResult, attribute: int, winner: int) -> float:
    """One trial's push on the winner wheel credited to one attribute.

    Each factor containing the attribute contributes h * f_winner divided
    by the factor's size (uniform split across its attributes); factors
    with empty neighborhoods applied no force and contribute nothing.
    """
    total = 0.0
    for ff in trial.per_factor:
        if attribute in ff.factor.attributes:
            total += (
                ff.weightage * float(ff.class_forces[winner]) / ff.factor.size
            )
    return total


def aggregate_explanation(
    recommendation: Recommendation, schema: Sequence[AttributeSchema]
) -> AttributionReport:
    """Sum each attribute's trial contributions and convert to percentages."""
    if not recommendation.trials:
        raise DomainError("recommendation has no trials to explain")
    winner = recommendation.class_tokens.index(recommendation.label)
    raw = [0.0] * len(schema)
    for trial in recommendation.trials:
        for ff in trial.per_factor:
            share = ff.weightage * float(ff.class_forces[winner]) / ff.factor.size
            for pos in ff.factor.attributes:
                raw[pos] += share
    total = sum(raw)
    no_signal = total <= 0
    entries = [
        AttributionEntry(
            attribute=attr.name,
            contribution=raw[attr.position],
            percentage=0.0 if no_signal else 100.0 * raw[attr.position] / total,
        )
        for attr in schema
    ]
    entries.sort(key=lambda e: (-e.percentage, e.attribute))
    return AttributionReport(
        entries=tuple(entries),
        winner_label=recommendation.label,
        no_signal=no_signal,
    )
