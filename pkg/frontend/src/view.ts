/**
 * Decision view rendering: verdict banner, confidence gauge, attribution
 * bars, and the what-if diff strip.
 *
 * The console does no classification math. Every number on screen is a
 * service response field: the gauge shows the response confidence exactly,
 * and the bars keep the server's order.
 */

import type { RecommendationResponse } from "./types.js";
import type { WhatIfDiff } from "./whatif.js";

/** Gauge turns warning-colored below this percentage (a UI constant). */
export const LOW_CONFIDENCE_PERCENT = 35;

export interface BarView {
  attribute: string;
  percentage: number;
  /** Bar width; equals the percentage clamped to the drawable range. */
  width: number;
}

export interface DecisionViewModel {
  verdictText: string;
  rawLabel: string;
  approve: boolean;
  /** Exactly response.confidence * 100; no rounding or clamping. */
  gaugePercent: number;
  lowConfidence: boolean;
  bars: BarView[];
  othersPercent: number;
  noSignal: boolean;
  modelVersion: string;
  trialCount: number;
}

export function decisionViewModel(
  response: RecommendationResponse,
  topN = 3,
): DecisionViewModel {
  const shown = response.attributions.slice(0, topN);
  const shownTotal = shown.reduce((sum, a) => sum + a.percentage, 0);
  const gaugePercent = response.confidence * 100;
  return {
    verdictText: response.approve
      ? "I would recommend approving this request."
      : "I wouldn't recommend approving this request.",
    rawLabel: response.label,
    approve: response.approve,
    gaugePercent,
    lowConfidence: gaugePercent < LOW_CONFIDENCE_PERCENT,
    bars: shown.map((a) => ({
      attribute: a.attribute,
      percentage: a.percentage,
      width: Math.max(0, Math.min(100, a.percentage)),
    })),
    othersPercent:
      response.attributions.length > topN ? 100 - shownTotal : 0,
    noSignal: response.no_signal,
    modelVersion: response.model_version,
    trialCount: response.trial_count,
  };
}

const MOVEMENT_ARROWS = { up: "▲", down: "▼", same: "" } as const;

export function renderDecision(
  model: DecisionViewModel,
  diff: WhatIfDiff | null,
): string {
  const parts: string[] = [];
  parts.push(
    `<section class="verdict ${model.approve ? "approve" : "reject"}">` +
      `<h2>${escapeHtml(model.verdictText)}</h2>` +
      `<p class="raw-label">label: ${escapeHtml(model.rawLabel)} · ` +
      `model ${escapeHtml(model.modelVersion)} · ${model.trialCount} trials</p>` +
      `</section>`,
  );
  parts.push(
    `<section class="gauge${model.lowConfidence ? " warning" : ""}" ` +
      `data-confidence="${model.gaugePercent}">` +
      `I am ${formatPercent(model.gaugePercent)} confident about my recommendation.` +
      `</section>`,
  );
  const bars = model.bars
    .map((bar) => {
      const arrow = diff?.rankMovements[bar.attribute];
      const marker = arrow ? MOVEMENT_ARROWS[arrow] : "";
      return (
        `<li data-attribute="${escapeHtml(bar.attribute)}" ` +
        `data-percentage="${bar.percentage}">` +
        `<span class="bar" style="width:${bar.width}%"></span>` +
        `${escapeHtml(bar.attribute)} ${formatPercent(bar.percentage)}` +
        (marker ? ` <span class="movement">${marker}</span>` : "") +
        `</li>`
      );
    })
    .join("");
  const others =
    model.othersPercent > 0
      ? `<li class="others">others ${formatPercent(model.othersPercent)}</li>`
      : "";
  parts.push(
    `<section class="attributions">` +
      (model.noSignal
        ? `<p class="no-signal">no explanation signal</p>`
        : `<ol>${bars}${others}</ol>`) +
      `</section>`,
  );
  if (diff) {
    parts.push(renderDiffStrip(diff));
  }
  return parts.join("\n");
}

export function renderDiffStrip(diff: WhatIfDiff): string {
  const delta = diff.confidenceDelta * 100;
  const sign = delta > 0 ? "+" : "";
  const flip = diff.verdictFlipped
    ? `<span class="flip-badge">verdict flipped</span>`
    : "";
  return (
    `<section class="whatif" data-delta="${diff.confidenceDelta}">` +
    `Δ confidence: ${sign}${formatPercent(delta)} ${flip}` +
    `</section>`
  );
}

function formatPercent(value: number): string {
  return `${value.toFixed(1)}%`;
}

function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}
