"""Factor enumeration and importance scoring by mean decrease in bin count.

A factor is a non-empty set of attributes used as a joint sort key.  Sorting
the training records by an informative factor groups identical class labels
together, shrinking the number of label runs (bins) relative to a random
ordering.  Importance is the drop from the shuffled-baseline bin ratio to
the factor-sorted bin ratio; factors that fail to shrink it are noise and
get discarded.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .dataset import AttributeSchema, Dataset, count_bins, materialize_views
from .errors import DomainError, FactorUnusableError, NoInformativeFactorsError

# Entropy tags keep the baseline stream and each factor's stream disjoint,
# so scores do not depend on evaluation order or worker count.
_TAG_DEFAULT = 0
_TAG_FACTOR = 1


@dataclass(frozen=True)
class Factor:
    """A non-empty set of attribute positions, stored sorted ascending."""

    attributes: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.attributes:
            raise DomainError("factor needs at least one attribute")
        if list(self.attributes) != sorted(set(self.attributes)):
            raise DomainError("factor attributes must be unique and sorted")

    @property
    def size(self) -> int:
        return len(self.attributes)

    def names(self, schema: Sequence[AttributeSchema]) -> tuple[str, ...]:
        return tuple(schema[a].name for a in self.attributes)


@dataclass(frozen=True)
class FactorScore:
    """Importance = default_ratio - factor_ratio, kept exact."""

    factor: Factor
    default_ratio: float
    factor_ratio: float
    importance: float

    def __post_init__(self) -> None:
        if self.importance != self.default_ratio - self.factor_ratio:
            raise DomainError("importance must equal default_ratio - factor_ratio")


@dataclass(frozen=True)
class FactorTable:
    """Positive-importance scores, ranked best first.

    Ties break toward the smaller factor, then lexicographic positions.
    ``discarded_count`` counts enumerated factors dropped as noisy
    (importance <= 0) or unusable (no records survive missing-value
    filtering).
    """

    scores: tuple[FactorScore, ...]
    discarded_count: int

    def __post_init__(self) -> None:
        for s in self.scores:
            if s.importance <= 0:
                raise DomainError("factor table may only hold importance > 0")
        for a, b in zip(self.scores, self.scores[1:]):
            if _rank_key(a) > _rank_key(b):
                raise DomainError("factor table must be sorted by rank")

    def top(self, n: int) -> tuple[FactorScore, ...]:
        return self.scores[:n]


def _rank_key(score: FactorScore) -> tuple:
    return (-score.importance, score.factor.size, score.factor.attributes)


def enumerate_factors(
    schema: Sequence[AttributeSchema], depth: int
) -> tuple[Factor, ...]:
    """All attribute subsets of size 1..depth, by size then lexicographic."""
    n = len(schema)
    if not 1 <= depth <= n:
        raise DomainError(f"depth must be in [1, {n}], got {depth}")
    positions = range(n)
    return tuple(
        Factor(attributes=combo)
        for size in range(1, depth + 1)
        for combo in combinations(positions, size)
    )


def default_bin_ratio(dataset: Dataset, shuffles: int, seed: int) -> float:
    """Expected bins under uniform record order, divided by record count."""
    if shuffles < 1:
        raise DomainError("shuffles must be >= 1")
    labels = dataset.label_codes
    n = labels.size
    if n == 0:
        raise DomainError("empty dataset")
    rng = np.random.default_rng((seed, _TAG_DEFAULT))
    total = 0
    for _ in range(shuffles):
        total += count_bins(labels[rng.permutation(n)])
    return (total / shuffles) / n


def factor_bin_ratio(
    dataset: Dataset, factor: Factor, shuffles: int, seed: int
) -> float:
    """Expected bins after shuffling then stably sorting by the factor.

    Records missing a value in any factor attribute are filtered out first.
    The shuffle budget is split evenly over the size! attribute orderings
    (ceil(shuffles / size!) rounds each).  A fresh random permutation acts
    as the final sort key per round, which is exactly a uniform shuffle
    followed by a stable multi-key sort.
    """
    if shuffles < 1:
        raise DomainError("shuffles must be >= 1")
    attrs = factor.attributes
    mask = ~dataset.missing_mask[:, attrs].any(axis=1)
    n = int(mask.sum())
    if n == 0:
        raise FactorUnusableError(
            f"all records have missing values in factor {attrs}"
        )
    labels = dataset.label_codes[mask]
    keys = [dataset.sort_key(a)[mask] for a in attrs]
    size = factor.size
    per_ordering = math.ceil(shuffles / math.factorial(size))
    rng = np.random.default_rng((seed, _TAG_FACTOR, size, *attrs))

    total = 0
    rounds = 0
    for ordering in permutations(range(size)):
        for _ in range(per_ordering):
            tiebreak = rng.permutation(n)
            # lexsort's last key is primary: ordering[0] sorts first.
            order = np.lexsort((tiebreak, *(keys[a] for a in reversed(ordering))))
            total += count_bins(labels[order])
            rounds += 1
    return (total / rounds) / n


def score_factor(
    dataset: Dataset,
    factor: Factor,
    shuffles: int,
    seed: int,
    default_ratio: float | None = None,
) -> FactorScore:
    """Score one factor; importance may be negative for noisy factors."""
    if default_ratio is None:
        default_ratio = default_bin_ratio(dataset, shuffles, seed)
    ratio = factor_bin_ratio(dataset, factor, shuffles, seed)
    return FactorScore(
        factor=factor,
        default_ratio=default_ratio,
        factor_ratio=ratio,
        importance=default_ratio - ratio,
    )


def _ratio_or_none(
    dataset: Dataset, factor: Factor, shuffles: int, seed: int
) -> float | None:
    try:
        return factor_bin_ratio(dataset, factor, shuffles, seed)
    except FactorUnusableError:
        return None


# Module-level state for worker processes; set once per worker.
_worker_args: tuple[Dataset, int, int] | None = None


def _init_worker(dataset: Dataset, shuffles: int, seed: int) -> None:
    global _worker_args
    _worker_args = (dataset, shuffles, seed)


def _score_worker(factor: Factor) -> float | None:
    assert _worker_args is not None
    dataset, shuffles, seed = _worker_args
    return _ratio_or_none(dataset, factor, shuffles, seed)


def build_factor_table(
    dataset: Dataset,
    depth: int,
    shuffles: int,
    seed: int,
    workers: int = 1,
) -> FactorTable:
    """Enumerate, score, filter, and rank all factors up to ``depth``.

    Each factor draws from its own seed-derived stream, so the table is
    identical for any ``workers`` count.
    """
    factors = enumerate_factors(dataset.schema, depth)
    default_ratio = default_bin_ratio(dataset, shuffles, seed)

    if workers > 1:
        materialize_views(dataset)
        with ProcessPoolExecutor(
            max_workers=workers,
            initializer=_init_worker,
            initargs=(dataset, shuffles, seed),
        ) as pool:
            chunk = max(1, len(factors) // (workers * 8))
            ratios = list(pool.map(_score_worker, factors, chunksize=chunk))
    else:
        ratios = [_ratio_or_none(dataset, f, shuffles, seed) for f in factors]

    scores = [
        FactorScore(
            factor=f,
            default_ratio=default_ratio,
            factor_ratio=ratio,
            importance=default_ratio - ratio,
        )
        for f, ratio in zip(factors, ratios)
        if ratio is not None and default_ratio - ratio > 0
    ]
    if not scores:
        raise NoInformativeFactorsError("no informative factors")
    scores.sort(key=_rank_key)
    return FactorTable(
        scores=tuple(scores), discarded_count=len(factors) - len(scores)
    )
