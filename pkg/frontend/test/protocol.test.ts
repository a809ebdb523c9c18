import { describe, expect, it } from "vitest";

import { decodeRecord, encodeRecord } from "../src/protocol";

describe("protocol codec", () => {
  it("decodes snapshots", () => {
    const record = decodeRecord(
      JSON.stringify({
        type: "snapshot",
        v: 1,
        t: 0.5,
        phase: "first_level",
        gaze: [0, 0],
        metrics: { ticks: 30, time_s: 0.5, rotation_deg: 0, success: false },
        located: null,
        target: null,
        first_level: null,
        second_level: null,
        flights: [],
        markers: [],
      }),
    );
    expect(record).not.toBeNull();
    expect(record!.type).toBe("snapshot");
  });

  it("rejects garbage and unknown types", () => {
    expect(decodeRecord("{nope")).toBeNull();
    expect(decodeRecord('"just a string"')).toBeNull();
    expect(decodeRecord('{"type":"warp"}')).toBeNull();
  });

  it("encodes client records as single-line JSON", () => {
    const line = encodeRecord({ type: "gaze", t: 1.25, x: 0.5, y: -0.25 });
    expect(line).not.toContain("\n");
    expect(JSON.parse(line)).toEqual({ type: "gaze", t: 1.25, x: 0.5, y: -0.25 });
  });
});
