import { describe, expect, it } from "vitest";

import {
  RequestRejectedError,
  ServiceClient,
  ServiceUnavailableError,
  type FetchLike,
} from "../src/api.js";
import { APPROVED, METADATA } from "./fixtures.js";

function fakeFetch(
  handler: (url: string, init?: Parameters<FetchLike>[1]) => { status: number; body: unknown },
): FetchLike {
  return async (url, init) => {
    const { status, body } = handler(url, init);
    return { status, json: async () => body };
  };
}

describe("ServiceClient", () => {
  it("loads model metadata", async () => {
    const client = new ServiceClient(
      "http://svc",
      fakeFetch((url) => {
        expect(url).toBe("http://svc/v1/model");
        return { status: 200, body: METADATA };
      }),
    );
    expect(await client.loadModelMetadata()).toEqual(METADATA);
  });

  it("posts observations as JSON and returns the recommendation", async () => {
    let sent: unknown;
    const client = new ServiceClient(
      "http://svc",
      fakeFetch((url, init) => {
        expect(url).toBe("http://svc/v1/recommendations");
        sent = JSON.parse(init!.body!);
        return { status: 200, body: APPROVED };
      }),
    );
    const result = await client.recommend({ A01: "b", A02: null });
    expect(sent).toEqual({ A01: "b", A02: null });
    expect(result.label).toBe("+");
  });

  it("maps 4xx responses to RequestRejectedError with the server message", async () => {
    const client = new ServiceClient(
      "http://svc",
      fakeFetch(() => ({ status: 422, body: { error: "unclassifiable" } })),
    );
    await expect(client.recommend({})).rejects.toThrowError(RequestRejectedError);
    await expect(client.recommend({})).rejects.toThrow("unclassifiable");
  });

  it("maps transport failures to ServiceUnavailableError", async () => {
    const client = new ServiceClient("http://svc", async () => {
      throw new Error("ECONNREFUSED");
    });
    await expect(client.loadModelMetadata()).rejects.toThrowError(
      ServiceUnavailableError,
    );
  });
});
