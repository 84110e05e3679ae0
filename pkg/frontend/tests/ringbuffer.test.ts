import { describe, expect, it } from "vitest";

import { FloatRing } from "../src/ringbuffer.js";

describe("float ring", () => {
  it("round-trips samples in order across the wrap point", () => {
    const ring = new FloatRing(8);
    ring.write(new Float32Array([1, 2, 3, 4, 5, 6]));
    const out = new Float32Array(4);
    ring.read(out);
    expect([...out]).toEqual([1, 2, 3, 4]);
    ring.write(new Float32Array([7, 8, 9, 10]));  // wraps internally
    const rest = new Float32Array(6);
    ring.read(rest);
    expect([...rest]).toEqual([5, 6, 7, 8, 9, 10]);
  });

  it("zero-pads and counts underflows", () => {
    const ring = new FloatRing(8);
    ring.write(new Float32Array([1, 2]));
    const out = new Float32Array(4);
    const got = ring.read(out);
    expect(got).toBe(2);
    expect([...out]).toEqual([1, 2, 0, 0]);
    expect(ring.underflows).toBe(1);
  });

  it("refuses writes past capacity and counts the drop", () => {
    const ring = new FloatRing(4);
    const written = ring.write(new Float32Array([1, 2, 3, 4, 5, 6]));
    expect(written).toBe(4);
    expect(ring.dropped).toBe(2);
    expect(ring.available).toBe(4);
  });

  it("clear resets positions and fill level", () => {
    const ring = new FloatRing(4);
    ring.write(new Float32Array([1, 2, 3]));
    ring.clear();
    expect(ring.available).toBe(0);
    const out = new Float32Array(2);
    ring.read(out);
    expect([...out]).toEqual([0, 0]);
  });

  it("rejects nonsense capacity", () => {
    expect(() => new FloatRing(0)).toThrow(/positive/);
  });
});
