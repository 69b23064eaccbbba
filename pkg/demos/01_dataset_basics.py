# Dataset basics: parsing, typing, priors, and the bin primitive.
#
# The classifier works on comma-separated records with no header. A sidecar
# schema names each column and fixes its kind (categorical / integer /
# real); `?` marks a missing value and the last column holds the class
# label. This demo uses the bundled synthetic generator so it runs without
# any downloads; swap in data/crx.data + data/credit.schema to profile the
# real credit corpus.

from randomwheel import (
    attribute_stddev,
    class_prior,
    count_bins,
    parse_dataset,
    parse_schema,
    serialize_dataset,
    stratified_folds,
)
from randomwheel.synth import synthetic_credit_dataset

dataset = synthetic_credit_dataset(n=300, seed=1)
print(f"{len(dataset.records)} records, {len(dataset.schema)} attributes")
print("class tokens:", dataset.class_tokens)

# Class priors are plain relative frequencies; they later become the
# denominators of every elementary force.
for token, p in class_prior(dataset).items():
    print(f"  prior[{token}] = {p:.4f}")

# The same text round-trips through serialize/parse, missing values intact.
text = serialize_dataset(dataset)
schema = parse_schema("".join(f"{a.name},{a.kind}\n" for a in dataset.schema))
again = parse_dataset(text, schema)
assert again.records == dataset.records
print("serialize -> parse round-trips record-for-record")

# Numeric attributes carry a population standard deviation, computed over
# the non-missing values only. It sizes the neighborhood band at inference.
for attr in dataset.schema:
    if attr.kind != "categorical":
        sigma = attribute_stddev(dataset, attr.position)
        print(f"  sigma[{attr.name}] = {sigma:.3f}")

# A "bin" is a maximal run of identical labels in an ordered dataset. The
# ordered labels +,+,-,-,-,+,-,+,-,- change five times: six bins.
print("bins:", count_bins(["+", "+", "-", "-", "-", "+", "-", "+", "-", "-"]))

# Stratified folds keep each fold's class mix within one record of the
# global mix; a fixed seed makes the assignment reproducible.
folds = stratified_folds(dataset, k=10, seed=7)
print("fold sizes:", [int((folds == f).sum()) for f in range(10)])
