/**
 * Browser bootstrap: wires the form, service client, and decision view to
 * the DOM. All rendering logic lives in the pure modules so it stays
 * testable without a browser.
 */

import { RequestRejectedError, ServiceClient, ServiceUnavailableError } from "./api.js";
import {
  ApplicationForm,
  buildForm,
  serializeObservation,
  setValue,
  toggleUnknown,
  validateForm,
} from "./form.js";
import { decisionViewModel, renderDecision } from "./view.js";
import { QueryHistory } from "./whatif.js";

const SERVICE_BASE =
  new URLSearchParams(window.location.search).get("service") ??
  "http://127.0.0.1:8000";

const client = new ServiceClient(SERVICE_BASE);
const history = new QueryHistory();
let form: ApplicationForm | null = null;
let pending = false;

const formRoot = () => document.getElementById("application-form")!;
const decisionRoot = () => document.getElementById("decision")!;
const errorRoot = () => document.getElementById("error-panel")!;

async function start(): Promise<void> {
  try {
    form = buildForm(await client.loadModelMetadata());
    errorRoot().hidden = true;
    renderForm();
  } catch (problem) {
    // Fail closed: no partial form, a blocking panel with retry.
    form = null;
    formRoot().innerHTML = "";
    errorRoot().hidden = false;
    errorRoot().innerHTML =
      `<p>service unavailable: ${String(problem)}</p>` +
      `<button id="retry">retry</button>`;
    document.getElementById("retry")!.addEventListener("click", start);
  }
}

function renderForm(): void {
  if (!form) return;
  const rows = form.controls
    .map((control) => {
      const name = control.attribute.name;
      const input =
        control.control === "dropdown"
          ? `<select name="${name}" ${control.unknown ? "disabled" : ""}>` +
            control.options
              .map(
                (token) =>
                  `<option value="${token}" ${token === control.value ? "selected" : ""}>${token}</option>`,
              )
              .join("") +
            `</select>`
          : `<input name="${name}" inputmode="decimal" value="${control.value}" ` +
            `${control.unknown ? "disabled" : ""} />`;
      return (
        `<label class="field" data-kind="${control.attribute.kind}">` +
        `<span>${name}</span>${input}` +
        `<label class="unknown"><input type="checkbox" data-unknown="${name}" ` +
        `${control.unknown ? "checked" : ""}/> unknown</label>` +
        `</label>`
      );
    })
    .join("");
  formRoot().innerHTML =
    rows + `<button id="submit" ${pending ? "disabled" : ""}>ask the machine</button>`;

  for (const select of formRoot().querySelectorAll("select, input[name]")) {
    select.addEventListener("change", (event) => {
      const target = event.target as HTMLInputElement | HTMLSelectElement;
      form = setValue(form!, target.name, target.value);
    });
  }
  for (const box of formRoot().querySelectorAll("input[data-unknown]")) {
    box.addEventListener("change", (event) => {
      const name = (event.target as HTMLInputElement).dataset.unknown!;
      form = toggleUnknown(form!, name);
      renderForm();
    });
  }
  document.getElementById("submit")!.addEventListener("click", submit);
}

async function submit(): Promise<void> {
  if (!form || pending) return;
  const problems = validateForm(form);
  if (problems.length > 0) {
    decisionRoot().innerHTML =
      `<ul class="field-problems">` +
      problems
        .map((p) => `<li data-field="${p.attribute}">${p.attribute}: ${p.message}</li>`)
        .join("") +
      `</ul>`;
    return;
  }
  pending = true;
  renderForm();
  try {
    const result = await client.recommend(serializeObservation(form));
    history.push(result);
    decisionRoot().innerHTML = renderDecision(
      decisionViewModel(result),
      history.compareLatest(),
    );
  } catch (problem) {
    if (problem instanceof RequestRejectedError && problem.status === 422) {
      decisionRoot().innerHTML =
        `<p class="notice">cannot classify: too many unknowns</p>`;
    } else if (problem instanceof ServiceUnavailableError) {
      decisionRoot().innerHTML = `<p class="notice">service unreachable</p>`;
    } else {
      decisionRoot().innerHTML = `<p class="notice">${String(problem)}</p>`;
    }
  } finally {
    pending = false;
    renderForm();
  }
}

start();
