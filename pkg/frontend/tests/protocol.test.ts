import { describe, expect, it } from "vitest";
import { axesEqual, neutralAxes, parseServerMsg, serialize } from "../src/protocol.js";

describe("protocol helpers", () => {
  it("serializes client messages as plain JSON", () => {
    expect(JSON.parse(serialize({ type: "trigger", name: "yes" })))
      .toEqual({ type: "trigger", name: "yes" });
  });

  it("parses telemetry and rejects junk", () => {
    const msg = parseServerMsg(JSON.stringify({ type: "telemetry", t: 1.0 }));
    expect(msg?.type).toBe("telemetry");
    expect(parseServerMsg("not json")).toBeNull();
    expect(parseServerMsg("42")).toBeNull();
  });

  it("neutral axes compare equal", () => {
    expect(axesEqual(neutralAxes(), neutralAxes())).toBe(true);
    const moved = { ...neutralAxes(), lx: 0.2 };
    expect(axesEqual(moved, neutralAxes())).toBe(false);
  });
});
