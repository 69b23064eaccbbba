"""Typed ingestion, validation, and partitioning of mixed-type tabular data.

The credit-approval corpus is comma-separated text with no header: one
record per line, ``?`` marking a missing value, and one column holding the
class label.  Attribute kinds come from a sidecar schema (one ``name,kind``
line per attribute).  Values are kept in their native form — categorical
tokens stay tokens, numerics stay numbers — no encoding or normalization is
applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import DomainError, ParseError

Kind = Literal["categorical", "integer", "real"]
KINDS: tuple[Kind, ...] = ("categorical", "integer", "real")

#: A cell value: categorical token, integer, finite real, or None for missing.
Value = str | int | float | None

MISSING_TOKEN = "?"


@dataclass(frozen=True)
class AttributeSchema:
    """One column: its name, kind, and 0-based position."""

    name: str
    kind: Kind
    position: int


@dataclass(frozen=True)
class Record:
    """A single observation: one value per attribute plus its class label."""

    values: tuple[Value, ...]
    label: str


# Integers must stay exactly representable as float64: sort keys and
# neighborhood range queries go through float arrays.
_MAX_EXACT_INT = 2**53


def _check_value(value: Value, kind: Kind) -> bool:
    if value is None:
        return True
    if kind == "categorical":
        return isinstance(value, str)
    if kind == "integer":
        return (
            isinstance(value, int)
            and not isinstance(value, bool)
            and abs(value) <= _MAX_EXACT_INT
        )
    return isinstance(value, float) and math.isfinite(value)


@dataclass(eq=True)
class Dataset:
    """Immutable-by-convention training corpus.

    ``class_tokens`` is the ordered set of declared labels (file order of
    first appearance when parsed); it may include tokens no record carries,
    which then receive a zero prior.
    """

    schema: tuple[AttributeSchema, ...]
    records: tuple[Record, ...]
    class_tokens: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.records:
            raise DomainError("dataset has no records")
        if len(self.class_tokens) < 2:
            raise DomainError("at least 2 class tokens required")
        if len(set(self.class_tokens)) != len(self.class_tokens):
            raise DomainError("duplicate class tokens")
        for i, attr in enumerate(self.schema):
            if attr.position != i:
                raise DomainError(
                    f"schema positions must be contiguous from 0; got {attr.position} at index {i}"
                )
            if attr.kind not in KINDS:
                raise DomainError(f"unknown attribute kind {attr.kind!r}")
        tokens = set(self.class_tokens)
        width = len(self.schema)
        for r in self.records:
            if len(r.values) != width:
                raise DomainError(
                    f"record has {len(r.values)} values, schema has {width}"
                )
            if r.label not in tokens:
                raise DomainError(f"label {r.label!r} not among class tokens")
            for attr, v in zip(self.schema, r.values):
                if not _check_value(v, attr.kind):
                    raise DomainError(
                        f"value {v!r} does not match kind {attr.kind!r} of {attr.name}"
                    )

    # -- cached numeric views used by the scoring and inference hot paths --

    @cached_property
    def label_codes(self) -> np.ndarray:
        """Per-record index into class_tokens."""
        index = {t: i for i, t in enumerate(self.class_tokens)}
        return np.array([index[r.label] for r in self.records], dtype=np.intp)

    @cached_property
    def missing_mask(self) -> np.ndarray:
        """Boolean (records x attributes) matrix, True where a value is missing."""
        return np.array(
            [[v is None for v in r.values] for r in self.records], dtype=bool
        )

    def categorical_tokens(self, position: int) -> tuple[str, ...]:
        """Lexicographically sorted vocabulary of one categorical attribute."""
        return self._vocabularies[position]

    @cached_property
    def _vocabularies(self) -> dict[int, tuple[str, ...]]:
        vocabs: dict[int, tuple[str, ...]] = {}
        for attr in self.schema:
            if attr.kind == "categorical":
                seen = {
                    r.values[attr.position]
                    for r in self.records
                    if r.values[attr.position] is not None
                }
                vocabs[attr.position] = tuple(sorted(seen))  # type: ignore[arg-type]
        return vocabs

    @cached_property
    def _sort_keys(self) -> dict[int, np.ndarray]:
        keys: dict[int, np.ndarray] = {}
        for attr in self.schema:
            pos = attr.position
            if attr.kind == "categorical":
                code = {t: i for i, t in enumerate(self._vocabularies[pos])}
                keys[pos] = np.array(
                    [code.get(r.values[pos], -1) for r in self.records],
                    dtype=np.intp,
                )
            else:
                keys[pos] = np.array(
                    [
                        math.nan if r.values[pos] is None else float(r.values[pos])
                        for r in self.records
                    ],
                    dtype=np.float64,
                )
        return keys

    def sort_key(self, position: int) -> np.ndarray:
        """Total-order key for one attribute: token rank or numeric value.

        Missing entries are -1 (categorical) or NaN (numeric); callers must
        filter them out before sorting or range queries.
        """
        return self._sort_keys[position]

    def attribute(self, name: str) -> AttributeSchema:
        for attr in self.schema:
            if attr.name == name:
                return attr
        raise DomainError(f"no attribute named {name!r}")


def materialize_views(dataset: Dataset) -> None:
    """Force-build the cached numeric views (before forking worker processes)."""
    dataset.label_codes
    dataset.missing_mask
    for attr in dataset.schema:
        dataset.sort_key(attr.position)


def parse_schema(text: str | Iterable[str]) -> tuple[AttributeSchema, ...]:
    """Read a sidecar schema: one ``name,kind`` line per attribute, in column order."""
    lines = text.splitlines() if isinstance(text, str) else list(text)
    out: list[AttributeSchema] = []
    for ln, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise ParseError(f"expected 'name,kind', got {line!r}", line=ln)
        name, kind = parts
        if kind not in KINDS:
            raise ParseError(f"unknown kind {kind!r} (expected one of {KINDS})", line=ln)
        out.append(AttributeSchema(name=name, kind=kind, position=len(out)))
    if not out:
        raise ParseError("empty schema")
    return tuple(out)


def _parse_cell(token: str, attr: AttributeSchema, line: int | None) -> Value:
    if token == MISSING_TOKEN:
        return None
    if attr.kind == "categorical":
        return token
    if attr.kind == "integer":
        try:
            value = int(token)
        except ValueError:
            raise ParseError(
                f"non-numeric token {token!r} in integer column {attr.name}", line=line
            ) from None
        if abs(value) > _MAX_EXACT_INT:
            raise ParseError(
                f"integer {token!r} in column {attr.name} exceeds the exact range",
                line=line,
            )
        return value
    try:
        value = float(token)
    except ValueError:
        raise ParseError(
            f"non-numeric token {token!r} in real column {attr.name}", line=line
        ) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value {token!r} in column {attr.name}", line=line)
    return value


def parse_dataset(
    text: str | Iterable[str],
    schema: Sequence[AttributeSchema],
    class_column: int | None = None,
    class_tokens: Sequence[str] | None = None,
) -> Dataset:
    """Parse comma-separated records into a typed Dataset.

    ``class_column`` is the label's position in the raw line (default: the
    last field).  When ``class_tokens`` is given, labels outside it are
    rejected; otherwise tokens are collected in order of first appearance.
    """
    schema = tuple(schema)
    width = len(schema) + 1
    if class_column is None:
        class_column = width - 1
    if not 0 <= class_column < width:
        raise DomainError(f"class column {class_column} out of range for {width} fields")

    lines = text.splitlines() if isinstance(text, str) else text
    expected = set(class_tokens) if class_tokens is not None else None
    seen_tokens: list[str] = []
    records: list[Record] = []
    for ln, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != width:
            raise ParseError(
                f"expected {width} fields, got {len(fields)}", line=ln
            )
        label = fields.pop(class_column)
        if label == MISSING_TOKEN:
            raise ParseError("missing class label", line=ln)
        if expected is not None and label not in expected:
            raise ParseError(f"unknown class token {label!r}", line=ln)
        if label not in seen_tokens:
            seen_tokens.append(label)
        values = tuple(
            _parse_cell(tok, attr, ln) for tok, attr in zip(fields, schema)
        )
        records.append(Record(values=values, label=label))

    if not records:
        raise ParseError("no records")
    tokens = tuple(class_tokens) if class_tokens is not None else tuple(seen_tokens)
    if len(tokens) < 2:
        raise ParseError(
            f"at least 2 class tokens required, found {len(tokens)} ({tokens})"
        )
    return Dataset(schema=schema, records=tuple(records), class_tokens=tokens)


def _format_cell(value: Value) -> str:
    if value is None:
        return MISSING_TOKEN
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize_dataset(dataset: Dataset, class_column: int | None = None) -> str:
    """Inverse of parse_dataset; missing values come back as ``?``."""
    width = len(dataset.schema) + 1
    if class_column is None:
        class_column = width - 1
    lines = []
    for r in dataset.records:
        fields = [_format_cell(v) for v in r.values]
        fields.insert(class_column, r.label)
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def class_prior(dataset: Dataset) -> dict[str, float]:
    """Relative frequency of each declared class token (zero when absent)."""
    counts = np.bincount(dataset.label_codes, minlength=len(dataset.class_tokens))
    total = int(counts.sum())
    return {t: int(counts[i]) / total for i, t in enumerate(dataset.class_tokens)}


def attribute_stddev(dataset: Dataset, attribute: int) -> float:
    """Population standard deviation of a numeric attribute, missing excluded."""
    attr = dataset.schema[attribute]
    if attr.kind == "categorical":
        raise DomainError(f"{attr.name} is categorical; stddev undefined")
    values = dataset.sort_key(attribute)
    values = values[~np.isnan(values)]
    if values.size == 0:
        raise DomainError(f"{attr.name} has no non-missing values")
    return float(np.std(values))


def stratified_folds(dataset: Dataset, k: int, seed: int) -> np.ndarray:
    """Assign each record a fold in [0, k), preserving class proportions.

    Per class, fold counts differ by at most one; remainders rotate across
    classes so fold totals stay balanced.  Deterministic for a fixed seed.
    """
    n = len(dataset.records)
    if k < 2:
        raise DomainError("k must be >= 2")
    if k > n:
        raise DomainError(f"k={k} exceeds record count {n}")
    rng = np.random.default_rng(seed)
    folds = np.empty(n, dtype=np.intp)
    offset = 0
    for code in range(len(dataset.class_tokens)):
        idx = np.flatnonzero(dataset.label_codes == code)
        rng.shuffle(idx)
        folds[idx] = (np.arange(idx.size) + offset) % k
        offset += idx.size % k
    return folds


def count_bins(labels: Sequence[str] | np.ndarray) -> int:
    """Number of maximal runs of equal labels: 1 + adjacent unequal pairs."""
    arr = np.asarray(labels)
    if arr.size == 0:
        raise DomainError("empty label sequence")
    return int(1 + np.count_nonzero(arr[1:] != arr[:-1]))
