"""Shared fixtures and small dataset builders."""

from __future__ import annotations

import os

import pytest

from randomwheel.dataset import AttributeSchema, Dataset, Record, parse_dataset
from randomwheel.synth import SCHEMA as CREDIT_SCHEMA

#: Where the real 690-record credit-approval file is expected.  The tests
#: that reproduce its published results fail with instructions when absent.
UCI_DATA_PATH = os.environ.get(
    "RW_UCI_DATA", os.path.join(os.path.dirname(__file__), "..", "data", "crx.data")
)

UCI_MISSING_MESSAGE = (
    "the 690-record UCI credit-approval file is required for this criterion; "
    "download `crx.data` from the UCI repository (dataset 'Credit Approval', "
    "machine-learning-databases/credit-screening/crx.data) into data/crx.data "
    "or point RW_UCI_DATA at it. This sandbox has no network access, so the "
    "file could not be fetched at build time."
)


def make_schema(kinds: str) -> tuple[AttributeSchema, ...]:
    """Compact schema builder: 'c', 'i', 'r' per column."""
    full = {"c": "categorical", "i": "integer", "r": "real"}
    return tuple(
        AttributeSchema(name=f"a{i}", kind=full[k], position=i)
        for i, k in enumerate(kinds)
    )


def make_dataset(kinds: str, rows, class_tokens=None) -> Dataset:
    """Rows are (v0, v1, ..., label) tuples; None means missing."""
    records = tuple(Record(values=tuple(r[:-1]), label=r[-1]) for r in rows)
    if class_tokens is None:
        seen: list[str] = []
        for r in records:
            if r.label not in seen:
                seen.append(r.label)
        class_tokens = tuple(seen)
    return Dataset(
        schema=make_schema(kinds), records=records, class_tokens=class_tokens
    )


@pytest.fixture
def balanced_ten() -> Dataset:
    """Ten records, five per class, one constant categorical attribute."""
    rows = [("x", "+") for _ in range(5)] + [("x", "-") for _ in range(5)]
    return make_dataset("c", rows)


@pytest.fixture(scope="session")
def uci_dataset():
    if not os.path.exists(UCI_DATA_PATH):
        pytest.fail(UCI_MISSING_MESSAGE)
    with open(UCI_DATA_PATH, "r", encoding="utf-8") as fh:
        return parse_dataset(fh.read(), CREDIT_SCHEMA)
