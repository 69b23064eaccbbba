# Stratified cross-validation, effectiveness metrics, confidence split.
#
# Train on k-1 folds, recommend every held-out record, and accumulate a
# confusion matrix plus a per-instance confidence ledger. Correct
# recommendations should come with visibly higher confidence than
# incorrect ones; that gap is what makes the single confidence number
# useful to a decision maker.

import tempfile

from randomwheel import WheelConfig, cross_validate, export_confidence_csv
from randomwheel.evaluate import format_metrics_report
from randomwheel.synth import synthetic_credit_dataset

dataset = synthetic_credit_dataset(n=400, seed=4)
config = WheelConfig(depth=2, trials=60, importance_shuffles=60, seed=19)

# workers=2 evaluates folds in parallel; results are identical at any
# worker count because every fold and trial owns a derived seed.
result = cross_validate(dataset, config, k=5, seed=19, workers=2)
print(format_metrics_report(result))

split = result.confidence
ratio = split.correct_mean / split.incorrect_mean if split.incorrect_mean else float("inf")
print(f"\nconfidence gap: correct {split.correct_mean:.3f} vs "
      f"incorrect {split.incorrect_mean:.3f} ({ratio:.2f}x)")

# The per-instance confidences export as two descending CSV strips
# (correct.csv / wrong.csv), ready for heatmap-style rendering.
with tempfile.TemporaryDirectory() as out:
    correct_path, wrong_path = export_confidence_csv(split, out)
    top = open(correct_path).readline().strip()
    print(f"exported {split.correct_count} correct / {split.incorrect_count} wrong; "
          f"highest correct confidence {float(top):.3f}")
