/** What-if history and last-vs-previous comparison, purely client-side. */

import type { RecommendationResponse } from "./types.js";

export const HISTORY_LIMIT = 20;

export interface WhatIfDiff {
  /** Signed change of confidence (current minus previous), in [0,1] units. */
  confidenceDelta: number;
  verdictFlipped: boolean;
  /** Attributes whose contribution rank moved between the two results. */
  rankMovements: Record<string, "up" | "down" | "same">;
}

export class QueryHistory {
  private readonly entries: RecommendationResponse[] = [];

  push(result: RecommendationResponse): void {
    this.entries.push(result);
    if (this.entries.length > HISTORY_LIMIT) {
      this.entries.splice(0, this.entries.length - HISTORY_LIMIT);
    }
  }

  get size(): number {
    return this.entries.length;
  }

  latest(): RecommendationResponse | undefined {
    return this.entries[this.entries.length - 1];
  }

  previous(): RecommendationResponse | undefined {
    return this.entries[this.entries.length - 2];
  }

  /** Diff of the two most recent results, or null with fewer than two. */
  compareLatest(): WhatIfDiff | null {
    const current = this.latest();
    const prior = this.previous();
    if (!current || !prior) {
      return null;
    }
    return compare(prior, current);
  }
}

export function compare(
  previous: RecommendationResponse,
  current: RecommendationResponse,
): WhatIfDiff {
  const previousRank = rankByAttribute(previous);
  const currentRank = rankByAttribute(current);
  const rankMovements: Record<string, "up" | "down" | "same"> = {};
  for (const [attribute, rank] of Object.entries(currentRank)) {
    const before = previousRank[attribute];
    if (before === undefined || before === rank) {
      rankMovements[attribute] = "same";
    } else {
      rankMovements[attribute] = rank < before ? "up" : "down";
    }
  }
  return {
    confidenceDelta: current.confidence - previous.confidence,
    verdictFlipped: current.label !== previous.label,
    rankMovements,
  };
}

function rankByAttribute(result: RecommendationResponse): Record<string, number> {
  const ranks: Record<string, number> = {};
  result.attributions.forEach((slice, index) => {
    ranks[slice.attribute] = index;
  });
  return ranks;
}
