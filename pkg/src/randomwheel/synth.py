"""Synthetic stand-in data shaped like the credit-approval corpus.

Matches the real file's surface: 15 attributes with the same kinds (nine
categorical, three integer, three real), two class tokens with a roughly
44.5/55.5 split, and scattered missing values.  A planted signal (one
strongly predictive binary attribute plus several weaker ones) makes the
approval decision learnable at roughly the accuracy reported for the real
corpus.  This is generated data for demos and tests, not the UCI file.
"""

from __future__ import annotations

import numpy as np

from .dataset import AttributeSchema, Dataset, Record, Value

SCHEMA: tuple[AttributeSchema, ...] = tuple(
    AttributeSchema(name=f"A{i + 1:02d}", kind=kind, position=i)
    for i, kind in enumerate(
        [
            "categorical",  # A01
            "real",         # A02
            "real",         # A03
            "categorical",  # A04
            "categorical",  # A05
            "categorical",  # A06
            "categorical",  # A07
            "real",         # A08
            "categorical",  # A09
            "categorical",  # A10
            "integer",      # A11
            "categorical",  # A12
            "categorical",  # A13
            "integer",      # A14
            "integer",      # A15
        ]
    )
)

CLASS_TOKENS = ("+", "-")

_VOCAB = {
    0: ("a", "b"),
    3: ("u", "y", "l"),
    4: ("g", "p", "gg"),
    5: ("c", "d", "cc", "i", "j", "k", "m", "q", "w", "x"),
    6: ("v", "h", "bb", "ff"),
    8: ("t", "f"),
    9: ("t", "f"),
    11: ("t", "f"),
    12: ("g", "p", "s"),
}


def synthetic_credit_dataset(
    n: int = 690, seed: int = 0, missing_rate: float = 0.02
) -> Dataset:
    """Generate ``n`` records with a planted, learnable approval signal."""
    rng = np.random.default_rng((seed, 0x5EED))
    approved = rng.random(n) < 0.4449
    records = []
    for i in range(n):
        pos = bool(approved[i])
        values: list[Value] = [None] * len(SCHEMA)
        # A09: dominant signal; agrees with the label 87% of the time.
        values[8] = ("t" if pos else "f") if rng.random() < 0.87 else ("f" if pos else "t")
        # A10: secondary signal, 70% agreement.
        values[9] = ("t" if pos else "f") if rng.random() < 0.70 else ("f" if pos else "t")
        # A11: months employed; approvals skew higher.
        values[10] = int(rng.poisson(4.0 if pos else 0.8))
        # A15: income-like, heavy tail, higher for approvals.
        values[14] = int(rng.lognormal(5.5 if pos else 4.0, 1.5))
        # A02: age-like real with a mild shift.
        values[1] = round(float(rng.normal(33.0 if pos else 30.0, 11.0)), 2)
        # A03 / A08: weakly informative reals.
        values[2] = round(float(rng.gamma(2.0, 3.0 if pos else 2.2)), 3)
        values[7] = round(float(rng.gamma(1.5, 2.0 if pos else 1.2)), 3)
        # A14: loosely label-free integer.
        values[13] = int(rng.integers(0, 400))
        # Remaining categoricals: noise over credit-file-like vocabularies.
        for p in (0, 3, 4, 5, 6, 11, 12):
            vocab = _VOCAB[p]
            values[p] = vocab[int(rng.integers(0, len(vocab)))]
        # Sprinkle missing values over a few columns, like the real file.
        for p in (0, 1, 3, 4, 5, 6, 13):
            if rng.random() < missing_rate:
                values[p] = None
        records.append(Record(values=tuple(values), label="+" if pos else "-"))
    return Dataset(schema=SCHEMA, records=tuple(records), class_tokens=CLASS_TOKENS)
