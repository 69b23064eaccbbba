"""The random wheel classifier core.

One wheel per class label.  A trial picks the top n_i factors (n_i a random
integer capped by the noise fraction), builds each factor's neighborhood
around the observation, and pushes every wheel with the factor's weightage
times its per-class elementary force.  Aggregated over many trials, the
fastest wheel wins; the margin over the runner-up is the confidence.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Mapping, Sequence

import numpy as np

from .dataset import (
    AttributeSchema,
    Dataset,
    Record,
    Value,
    attribute_stddev,
    class_prior,
    _check_value,
    _format_cell,
)
from .errors import DomainError, ModelFormatError, UnclassifiableError
from .factors import Factor, FactorScore, FactorTable, build_factor_table

MODEL_FORMAT = "randomwheel-model"
MODEL_VERSION = 1

#: An observation is one value per schema attribute, label unknown.
Observation = tuple[Value, ...]


@dataclass(frozen=True)
class WheelConfig:
    """Training and inference knobs.

    ``noise_fraction`` caps how deep into the ranked factor list a trial may
    reach: n_i is drawn uniformly from [1, ceil(noise_fraction * usable)].
    ``neighbor_window`` scales the numeric neighborhood half-width in units
    of the attribute's training standard deviation.
    """

    depth: int = 3
    noise_fraction: float = 0.5
    trials: int = 100
    importance_shuffles: int = 100
    neighbor_window: float = 0.5
    seed: int = 0

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise DomainError("depth must be >= 1")
        if not 0 < self.noise_fraction <= 1:
            raise DomainError("noise_fraction must be in (0, 1]")
        if self.trials < 1:
            raise DomainError("trials must be >= 1")
        if self.importance_shuffles < 1:
            raise DomainError("importance_shuffles must be >= 1")
        if self.neighbor_window <= 0:
            raise DomainError("neighbor_window must be > 0")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise DomainError("seed must be a nonnegative integer")


@dataclass(eq=False)
class RandomWheelModel:
    """Frozen training artifact; the classifier is instance-based.

    Holds the training dataset itself plus its frozen summary statistics
    (class priors, per-numeric-attribute sigma) and the ranked factor table.
    """

    dataset: Dataset
    factor_table: FactorTable
    priors: dict[str, float]
    sigmas: dict[int, float]
    config: WheelConfig

    def __post_init__(self) -> None:
        if not self.factor_table.scores:
            raise DomainError("factor table is empty")

    @property
    def schema(self) -> tuple[AttributeSchema, ...]:
        return self.dataset.schema

    @property
    def class_tokens(self) -> tuple[str, ...]:
        return self.dataset.class_tokens

    @cached_property
    def _prior_array(self) -> np.ndarray:
        return np.array([self.priors[t] for t in self.class_tokens])

    def usable_factors(self, observation: Observation) -> tuple[FactorScore, ...]:
        """Ranked table entries whose attributes are all present in the observation."""
        return tuple(
            s
            for s in self.factor_table.scores
            if all(observation[a] is not None for a in s.factor.attributes)
        )


@dataclass(eq=False)
class Neighborhood:
    """Training records matching an observation on one factor.

    Categorical attributes must match exactly; numeric attributes must lie
    within +/- neighbor_window * sigma of the observed value (inclusive).
    Records missing any factor attribute are excluded.
    """

    factor: Factor
    indices: np.ndarray
    class_counts: np.ndarray
    dataset: Dataset

    @property
    def size(self) -> int:
        return int(self.indices.size)

    @property
    def records(self) -> tuple[Record, ...]:
        return tuple(self.dataset.records[i] for i in self.indices)


@dataclass(frozen=True, eq=False)
class FactorForces:
    """One scored factor inside a trial: weightage h and per-class force f."""

    factor: Factor
    weightage: float
    class_forces: np.ndarray
    neighborhood_size: int


@dataclass(frozen=True, eq=False)
class TrialResult:
    """Ledger of a single trial.

    ``per_factor`` holds only the chosen factors whose neighborhoods were
    non-empty; the others contribute no force.
    """

    trial_index: int
    chosen_factors: tuple[Factor, ...]
    per_factor: tuple[FactorForces, ...]
    forces: np.ndarray
    velocities: np.ndarray


@dataclass(frozen=True, eq=False)
class Recommendation:
    """Aggregated verdict: winning label, per-class velocity, confidence."""

    label: str
    velocities: dict[str, float]
    confidence: float
    trials: tuple[TrialResult, ...]
    class_tokens: tuple[str, ...]
    observation: Observation


def validate_observation(
    schema: Sequence[AttributeSchema], values: Sequence[Value]
) -> Observation:
    """Check length and per-column typing; returns the observation tuple."""
    if len(values) != len(schema):
        raise DomainError(
            f"observation has {len(values)} values, schema has {len(schema)}"
        )
    for attr, v in zip(schema, values):
        if not _check_value(v, attr.kind):
            raise DomainError(
                f"value {v!r} does not match kind {attr.kind!r} of {attr.name}"
            )
    return tuple(values)


def observation_key(schema: Sequence[AttributeSchema], values: Sequence[Value]) -> int:
    """Stable 64-bit digest of a canonicalized observation.

    Drives per-trial stream derivation, so identical queries always see
    identical randomness regardless of process or platform.
    """
    canonical = ",".join(_format_cell(v) for v in values)
    digest = hashlib.sha256(canonical.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def trial_rng(
    model: RandomWheelModel, observation: Observation, trial_index: int
) -> np.random.Generator:
    """Independent stream per (model seed, observation, trial index)."""
    key = observation_key(model.schema, observation)
    return np.random.default_rng((model.config.seed, key, trial_index))


def train(dataset: Dataset, config: WheelConfig, workers: int = 1) -> RandomWheelModel:
    """Build the full training artifact; deterministic for a fixed seed."""
    table = build_factor_table(
        dataset, config.depth, config.importance_shuffles, config.seed, workers=workers
    )
    sigmas: dict[int, float] = {}
    for attr in dataset.schema:
        if attr.kind != "categorical":
            values = dataset.sort_key(attr.position)
            if not np.all(np.isnan(values)):
                sigmas[attr.position] = attribute_stddev(dataset, attr.position)
    return RandomWheelModel(
        dataset=dataset,
        factor_table=table,
        priors=class_prior(dataset),
        sigmas=sigmas,
        config=config,
    )


def _neighborhood_mask(
    model: RandomWheelModel, factor: Factor, observation: Observation
) -> np.ndarray:
    dataset = model.dataset
    mask = ~dataset.missing_mask[:, factor.attributes].any(axis=1)
    for pos in factor.attributes:
        value = observation[pos]
        if value is None:
            raise DomainError(
                f"observation is missing factor attribute {dataset.schema[pos].name}"
            )
        key = dataset.sort_key(pos)
        if dataset.schema[pos].kind == "categorical":
            vocab = dataset.categorical_tokens(pos)
            try:
                code = vocab.index(value)  # type: ignore[arg-type]
            except ValueError:
                return np.zeros(len(dataset.records), dtype=bool)
            mask &= key == code
        else:
            sigma = model.sigmas.get(pos)
            if sigma is None:
                return np.zeros(len(dataset.records), dtype=bool)
            half_width = model.config.neighbor_window * sigma
            with np.errstate(invalid="ignore"):
                mask &= (key >= value - half_width) & (key <= value + half_width)
    return mask


def extract_neighborhood(
    model: RandomWheelModel, factor: Factor, observation: Observation
) -> Neighborhood:
    """All training records matching the observation on the factor."""
    mask = _neighborhood_mask(model, factor, observation)
    dataset = model.dataset
    counts = np.bincount(
        dataset.label_codes[mask], minlength=len(dataset.class_tokens)
    )
    return Neighborhood(
        factor=factor,
        indices=np.flatnonzero(mask),
        class_counts=counts,
        dataset=dataset,
    )


def _weightage_from_counts(counts: Sequence[int]) -> float:
    counts = [int(c) for c in counts]
    n = sum(counts)
    if n == 0:
        raise DomainError("weightage undefined for an empty neighborhood")
    m = len(counts)
    square_sum = sum(c * c for c in counts)
    # Scaled Gini: (m * sum(n_j^2) - n^2) / ((m-1) * n^2); at m=2 this is
    # exactly 2*(n1^2+n2^2)/(n1+n2)^2 - 1.
    return (m * square_sum - n * n) / ((m - 1) * n * n)


def weightage(neighborhood: Neighborhood, class_tokens: Sequence[str]) -> float:
    """Scaled Gini coefficient of the neighborhood's class counts, in [0, 1].

    0 when every class is equally represented, 1 when one class owns the
    whole neighborhood.
    """
    if len(class_tokens) != neighborhood.class_counts.size:
        raise DomainError("class_tokens does not match neighborhood counts")
    return _weightage_from_counts(neighborhood.class_counts)


def elementary_force(
    neighborhood: Neighborhood, priors: Mapping[str, float], class_token: str
) -> float:
    """Lift of the class inside the neighborhood relative to its prior."""
    n = int(neighborhood.class_counts.sum())
    if n == 0:
        raise DomainError("elementary force undefined for an empty neighborhood")
    prior = priors[class_token]
    if prior <= 0:
        raise DomainError(f"class {class_token!r} has zero prior in training data")
    idx = neighborhood.dataset.class_tokens.index(class_token)
    return (int(neighborhood.class_counts[idx]) / n) / prior


def _trial_cap(noise_fraction: float, usable_count: int) -> int:
    return max(1, math.ceil(noise_fraction * usable_count))


def resultant_force(
    contributions: Sequence[tuple[float, Sequence[float]]], classes: int
) -> np.ndarray:
    """Sum of weightage * per-class elementary force over a trial's factors."""
    total = np.zeros(classes)
    for h, f in contributions:
        total = total + h * np.asarray(f, dtype=float)
    return total


def run_trial(
    model: RandomWheelModel,
    observation: Observation,
    trial_index: int,
    rng: np.random.Generator,
) -> TrialResult:
    """One randomized trial: pick top-n_i usable factors, sum their forces."""
    usable = model.usable_factors(observation)
    if not usable:
        raise UnclassifiableError("no usable factors for this observation")
    cap = _trial_cap(model.config.noise_fraction, len(usable))
    n_i = int(rng.integers(1, cap + 1))
    chosen = usable[:n_i]

    tokens = model.class_tokens
    per_factor: list[FactorForces] = []
    for score in chosen:
        nb = extract_neighborhood(model, score.factor, observation)
        if nb.size == 0:
            continue
        h = weightage(nb, tokens)
        f = np.array([elementary_force(nb, model.priors, t) for t in tokens])
        per_factor.append(
            FactorForces(
                factor=score.factor,
                weightage=h,
                class_forces=f,
                neighborhood_size=nb.size,
            )
        )
    forces = resultant_force(
        [(ff.weightage, ff.class_forces) for ff in per_factor], len(tokens)
    )
    return TrialResult(
        trial_index=trial_index,
        chosen_factors=tuple(s.factor for s in chosen),
        per_factor=tuple(per_factor),
        forces=forces,
        velocities=forces.copy(),
    )


class _ObservationScorer:
    """Per-observation cache: every usable factor's forces, plus prefix sums.

    A trial's randomness only picks how many top factors participate, so the
    per-factor work is shared across trials.  Prefix row r holds the summed
    force of the first r usable factors, making each trial an O(1) lookup.
    Results are bit-identical to running the factors one by one.
    """

    def __init__(self, model: RandomWheelModel, observation: Observation):
        self.model = model
        self.observation = observation
        self.usable = model.usable_factors(observation)
        tokens = model.class_tokens
        m = len(tokens)
        priors = model._prior_array

        evaluated: list[FactorForces] = []
        ranks: list[int] = []  # rank (0-based) of each non-empty factor
        prefix = np.zeros((len(self.usable) + 1, m))
        for rank, score in enumerate(self.usable):
            mask = _neighborhood_mask(model, score.factor, observation)
            counts = np.bincount(model.dataset.label_codes[mask], minlength=m)
            total = int(counts.sum())
            if total == 0:
                prefix[rank + 1] = prefix[rank]
                continue
            if np.any(priors <= 0):
                zero = tokens[int(np.argmin(priors))]
                raise DomainError(
                    f"class {zero!r} has zero prior in training data"
                )
            h = _weightage_from_counts(counts)
            f = np.array(
                [(int(counts[j]) / total) / priors[j] for j in range(m)]
            )
            evaluated.append(
                FactorForces(
                    factor=score.factor,
                    weightage=h,
                    class_forces=f,
                    neighborhood_size=total,
                )
            )
            ranks.append(rank)
            prefix[rank + 1] = prefix[rank] + h * f
        self._prefix = prefix
        self._evaluated = tuple(evaluated)
        self._ranks = np.array(ranks, dtype=np.intp)

    def trial(self, trial_index: int, rng: np.random.Generator) -> TrialResult:
        cap = _trial_cap(self.model.config.noise_fraction, len(self.usable))
        n_i = int(rng.integers(1, cap + 1))
        cut = int(np.searchsorted(self._ranks, n_i, side="left"))
        forces = self._prefix[n_i].copy()
        return TrialResult(
            trial_index=trial_index,
            chosen_factors=tuple(s.factor for s in self.usable[:n_i]),
            per_factor=self._evaluated[:cut],
            forces=forces,
            velocities=forces.copy(),
        )


def recommend(model: RandomWheelModel, observation: Sequence[Value]) -> Recommendation:
    """Run the configured number of trials and aggregate their velocities.

    Each trial draws from a stream derived from (seed, observation, trial
    index), so calls are reproducible and order-independent.
    """
    observation = validate_observation(model.schema, observation)
    scorer = _ObservationScorer(model, observation)
    if not scorer.usable:
        raise UnclassifiableError(
            "observation unclassifiable: every factor touches a missing attribute"
        )
    key = observation_key(model.schema, observation)
    seed = model.config.seed
    trials = tuple(
        scorer.trial(t, np.random.default_rng((seed, key, t)))
        for t in range(model.config.trials)
    )
    omega = np.mean(np.stack([t.velocities for t in trials]), axis=0)

    tokens = model.class_tokens
    winner = int(np.argmax(omega))
    others = np.delete(omega, winner)
    runner_up = float(others.max()) if others.size else 0.0
    top = float(omega[winner])
    confidence = (top - runner_up) / top if top > 0 else 0.0
    return Recommendation(
        label=tokens[winner],
        velocities={t: float(v) for t, v in zip(tokens, omega)},
        confidence=confidence,
        trials=trials,
        class_tokens=tokens,
        observation=observation,
    )


# -- persistence --------------------------------------------------------------


def model_to_dict(model: RandomWheelModel) -> dict[str, Any]:
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "config": {
            "depth": model.config.depth,
            "noise_fraction": model.config.noise_fraction,
            "trials": model.config.trials,
            "importance_shuffles": model.config.importance_shuffles,
            "neighbor_window": model.config.neighbor_window,
            "seed": model.config.seed,
        },
        "schema": [
            {"name": a.name, "kind": a.kind, "position": a.position}
            for a in model.schema
        ],
        "class_tokens": list(model.class_tokens),
        "priors": {t: model.priors[t] for t in model.class_tokens},
        "sigmas": [[pos, sigma] for pos, sigma in sorted(model.sigmas.items())],
        "factor_table": {
            "discarded_count": model.factor_table.discarded_count,
            "scores": [
                {
                    "attributes": list(s.factor.attributes),
                    "default_ratio": s.default_ratio,
                    "factor_ratio": s.factor_ratio,
                    "importance": s.importance,
                }
                for s in model.factor_table.scores
            ],
        },
        "records": [
            {"values": list(r.values), "label": r.label}
            for r in model.dataset.records
        ],
    }


def serialize_model(model: RandomWheelModel) -> str:
    return json.dumps(model_to_dict(model), indent=1)


def save_model(model: RandomWheelModel, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_model(model))


def model_fingerprint(model: RandomWheelModel) -> str:
    """Short stable digest of the serialized model; the served version string."""
    digest = hashlib.sha256(serialize_model(model).encode("utf-8")).hexdigest()
    return f"{MODEL_VERSION}-{digest[:12]}"


def _coerce_value(raw: Any, kind: str, where: str) -> Value:
    if raw is None:
        return None
    if kind == "categorical":
        if not isinstance(raw, str):
            raise ModelFormatError(f"{where}: expected string, got {raw!r}")
        return raw
    if kind == "integer":
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise ModelFormatError(f"{where}: expected integer, got {raw!r}")
        return raw
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ModelFormatError(f"{where}: expected number, got {raw!r}")
    value = float(raw)
    if not math.isfinite(value):
        raise ModelFormatError(f"{where}: non-finite number")
    return value


def model_from_dict(doc: dict[str, Any]) -> RandomWheelModel:
    try:
        if doc.get("format") != MODEL_FORMAT:
            raise ModelFormatError(f"not a {MODEL_FORMAT} document")
        if doc.get("version") != MODEL_VERSION:
            raise ModelFormatError(f"unsupported model version {doc.get('version')!r}")
        config = WheelConfig(**doc["config"])
        schema = tuple(
            AttributeSchema(name=a["name"], kind=a["kind"], position=a["position"])
            for a in doc["schema"]
        )
        class_tokens = tuple(doc["class_tokens"])
        records = tuple(
            Record(
                values=tuple(
                    _coerce_value(v, attr.kind, f"record {i}, column {attr.name}")
                    for v, attr in zip(r["values"], schema)
                ),
                label=r["label"],
            )
            for i, r in enumerate(doc["records"])
        )
        dataset = Dataset(schema=schema, records=records, class_tokens=class_tokens)
        scores = tuple(
            FactorScore(
                factor=Factor(attributes=tuple(s["attributes"])),
                default_ratio=float(s["default_ratio"]),
                factor_ratio=float(s["factor_ratio"]),
                importance=float(s["importance"]),
            )
            for s in doc["factor_table"]["scores"]
        )
        table = FactorTable(
            scores=scores,
            discarded_count=int(doc["factor_table"]["discarded_count"]),
        )
        priors = {str(k): float(v) for k, v in doc["priors"].items()}
        sigmas = {int(p): float(s) for p, s in doc["sigmas"]}
        model = RandomWheelModel(
            dataset=dataset,
            factor_table=table,
            priors=priors,
            sigmas=sigmas,
            config=config,
        )
    except ModelFormatError:
        raise
    except (KeyError, TypeError, ValueError, DomainError) as exc:
        raise ModelFormatError(f"invalid model document: {exc}") from exc
    # Frozen statistics must be recomputable bit-identically from the records.
    if class_prior(dataset) != priors:
        raise ModelFormatError("stored priors do not match the stored records")
    for pos, sigma in sigmas.items():
        if attribute_stddev(dataset, pos) != sigma:
            raise ModelFormatError(
                f"stored sigma for column {schema[pos].name} does not match records"
            )
    return model


def load_model(path: str | os.PathLike) -> RandomWheelModel:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise ModelFormatError(f"model file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ModelFormatError("model file must hold a JSON object")
    return model_from_dict(doc)
