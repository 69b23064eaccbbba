/** Application form model, built from live model metadata — never hard-coded. */

import type {
  AttributeMetadata,
  ModelMetadata,
  ObservationPayload,
} from "./types.js";

export interface FormControl {
  attribute: AttributeMetadata;
  /** Dropdown for categorical attributes, numeric input otherwise. */
  control: "dropdown" | "number";
  /** Dropdown options (categorical only). */
  options: string[];
  /** Raw user entry; meaningless while `unknown` is set. */
  value: string;
  /** Explicit "unknown" toggle; serializes the attribute as missing. */
  unknown: boolean;
}

export interface ApplicationForm {
  modelVersion: string;
  controls: FormControl[];
}

export class MetadataError extends Error {}

export function buildForm(metadata: ModelMetadata): ApplicationForm {
  if (!Array.isArray(metadata.schema) || metadata.schema.length === 0) {
    throw new MetadataError("model metadata carries no schema");
  }
  const controls = metadata.schema.map((attribute): FormControl => {
    if (
      !attribute.name ||
      !["categorical", "integer", "real"].includes(attribute.kind)
    ) {
      throw new MetadataError(`malformed attribute entry: ${JSON.stringify(attribute)}`);
    }
    if (attribute.kind === "categorical") {
      if (!attribute.tokens || attribute.tokens.length === 0) {
        throw new MetadataError(`categorical ${attribute.name} has no tokens`);
      }
      return {
        attribute,
        control: "dropdown",
        options: [...attribute.tokens],
        value: attribute.tokens[0],
        unknown: false,
      };
    }
    return { attribute, control: "number", options: [], value: "", unknown: false };
  });
  return { modelVersion: metadata.version, controls };
}

export function setValue(form: ApplicationForm, name: string, value: string): ApplicationForm {
  return mutate(form, name, (c) => ({ ...c, value, unknown: false }));
}

export function toggleUnknown(form: ApplicationForm, name: string): ApplicationForm {
  return mutate(form, name, (c) => ({ ...c, unknown: !c.unknown }));
}

function mutate(
  form: ApplicationForm,
  name: string,
  update: (control: FormControl) => FormControl,
): ApplicationForm {
  const index = form.controls.findIndex((c) => c.attribute.name === name);
  if (index < 0) {
    throw new MetadataError(`no control named ${name}`);
  }
  const controls = [...form.controls];
  controls[index] = update(controls[index]);
  return { ...form, controls };
}

export interface FieldProblem {
  attribute: string;
  message: string;
}

/** Per-control validation; unknown-toggled fields are always acceptable. */
export function validateForm(form: ApplicationForm): FieldProblem[] {
  const problems: FieldProblem[] = [];
  for (const control of form.controls) {
    if (control.unknown || control.control === "dropdown") {
      continue;
    }
    const text = control.value.trim();
    if (text === "") {
      problems.push({
        attribute: control.attribute.name,
        message: "enter a value or mark the field unknown",
      });
      continue;
    }
    const numeric = Number(text);
    if (!Number.isFinite(numeric)) {
      problems.push({ attribute: control.attribute.name, message: "not a number" });
    } else if (control.attribute.kind === "integer" && !Number.isInteger(numeric)) {
      problems.push({
        attribute: control.attribute.name,
        message: "must be a whole number",
      });
    }
  }
  return problems;
}

/**
 * Serialize the form to the service payload. Unknown fields become null —
 * never an empty string and never zero.
 */
export function serializeObservation(form: ApplicationForm): ObservationPayload {
  const payload: ObservationPayload = {};
  for (const control of form.controls) {
    const name = control.attribute.name;
    if (control.unknown) {
      payload[name] = null;
    } else if (control.control === "dropdown") {
      payload[name] = control.value;
    } else {
      payload[name] = Number(control.value.trim());
    }
  }
  return payload;
}
