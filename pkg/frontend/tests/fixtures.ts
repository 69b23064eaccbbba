/** Mocked service payloads shared across the test suites. */

import type { ModelMetadata, RecommendationResponse } from "../src/types.js";

export const METADATA: ModelMetadata = {
  version: "1-abc123def456",
  schema: [
    { name: "A01", kind: "categorical", position: 0, tokens: ["a", "b"] },
    { name: "A02", kind: "real", position: 1 },
    { name: "A09", kind: "categorical", position: 2, tokens: ["f", "t"] },
    { name: "A11", kind: "integer", position: 3 },
  ],
  class_tokens: ["+", "-"],
  config: { depth: 3, trials: 100 },
  factor_count: 42,
  discarded_factors: 7,
};

export const APPROVED: RecommendationResponse = {
  label: "+",
  approve: true,
  confidence: 0.8559,
  velocities: { "+": 2.1, "-": 0.3 },
  attributions: [
    { attribute: "A09", percentage: 17.67 },
    { attribute: "A11", percentage: 17.41 },
    { attribute: "A15", percentage: 9.14 },
    { attribute: "A02", percentage: 8.0 },
    { attribute: "A03", percentage: 47.78 },
  ],
  no_signal: false,
  model_version: "1-abc123def456",
  trial_count: 100,
};

export const REJECTED: RecommendationResponse = {
  ...APPROVED,
  label: "-",
  approve: false,
  confidence: 0.21,
  attributions: [
    { attribute: "A11", percentage: 40.0 },
    { attribute: "A09", percentage: 35.0 },
    { attribute: "A15", percentage: 25.0 },
  ],
};
