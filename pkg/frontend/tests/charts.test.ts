import { describe, expect, it } from "vitest";
import { RingBuffer } from "../src/charts.js";

describe("ring buffer", () => {
  it("stays bounded by point count", () => {
    const buffer = new RingBuffer(1000, 100);
    for (let i = 0; i < 5000; i++) buffer.push(i * 0.01, Math.sin(i));
    expect(buffer.length).toBeLessThanOrEqual(100);
  });

  it("drops points older than the window", () => {
    const buffer = new RingBuffer(30, 100000);
    for (let i = 0; i < 4000; i++) buffer.push(i * 0.033, i);
    const t = buffer.latest()![0];
    for (const [pt] of buffer.points()) {
      expect(t - pt).toBeLessThanOrEqual(30);
    }
  });

  it("keeps insertion order", () => {
    const buffer = new RingBuffer();
    buffer.push(0, 1);
    buffer.push(1, 2);
    expect(buffer.points().map(([, v]) => v)).toEqual([1, 2]);
  });
});
