/** Wire types of the /v1 service endpoints the console consumes. */

export type AttributeKind = "categorical" | "integer" | "real";

export interface AttributeMetadata {
  name: string;
  kind: AttributeKind;
  position: number;
  /** Present for categorical attributes: the training vocabulary. */
  tokens?: string[];
}

export interface ModelMetadata {
  version: string;
  schema: AttributeMetadata[];
  class_tokens: string[];
  config: Record<string, number>;
  factor_count: number;
  discarded_factors: number;
}

export interface AttributionSlice {
  attribute: string;
  percentage: number;
}

export interface RecommendationResponse {
  label: string;
  approve: boolean;
  /** In [0, 1]; the gauge shows this exact value as a percentage. */
  confidence: number;
  velocities: Record<string, number>;
  attributions: AttributionSlice[];
  no_signal: boolean;
  model_version: string;
  trial_count: number;
}

/** Observation payload: attribute name to value; null means unknown. */
export type ObservationPayload = Record<string, string | number | null>;

export interface ServiceError {
  error: string;
}
