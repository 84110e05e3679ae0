import { describe, expect, it } from "vitest";

import { BASE_NOTE, KeyboardMap } from "../src/keyboard.js";

describe("keyboard map", () => {
  it("maps the bottom row chromatically from middle C", () => {
    const map = new KeyboardMap();
    expect(map.noteFor("z")).toBe(BASE_NOTE);
    expect(map.noteFor("s")).toBe(BASE_NOTE + 1);
    expect(map.noteFor("x")).toBe(BASE_NOTE + 2);
    expect(map.noteFor("m")).toBe(BASE_NOTE + 11);
  });

  it("maps the top row one octave up", () => {
    const map = new KeyboardMap();
    expect(map.noteFor("q")).toBe(BASE_NOTE + 12);
    expect(map.noteFor("u")).toBe(BASE_NOTE + 23);
  });

  it("ignores unmapped keys", () => {
    const map = new KeyboardMap();
    expect(map.noteFor("p")).toBeNull();
    expect(map.keyDown("p")).toBeNull();
    expect(map.keyUp("p")).toBeNull();
  });

  it("emits one note_on per physical press despite auto-repeat", () => {
    const map = new KeyboardMap();
    expect(map.keyDown("z", false)).toEqual({ kind: "on", note: BASE_NOTE });
    expect(map.keyDown("z", true)).toBeNull();   // browser repeat flag
    expect(map.keyDown("z", false)).toBeNull();  // still held
    expect(map.keyUp("z")).toEqual({ kind: "off", note: BASE_NOTE });
    expect(map.keyDown("z", false)).toEqual({ kind: "on", note: BASE_NOTE });
  });

  it("supports two simultaneous keys (polyphony)", () => {
    const map = new KeyboardMap();
    expect(map.keyDown("z")).toEqual({ kind: "on", note: BASE_NOTE });
    expect(map.keyDown("b")).toEqual({ kind: "on", note: BASE_NOTE + 7 });
    expect(map.heldCount).toBe(2);
  });

  it("transposing an octave doubles the frequency of the same key", () => {
    const map = new KeyboardMap();
    const before = map.noteFor("z")!;
    map.transposeOctaves(1);
    const after = map.noteFor("z")!;
    expect(after - before).toBe(12);
    const ratio = Math.pow(2, (after - before) / 12);
    expect(ratio).toBeCloseTo(2.0, 12);
  });

  it("releases held notes at their original pitch across transpose", () => {
    const map = new KeyboardMap();
    map.keyDown("z");
    map.transposeOctaves(1);
    expect(map.keyUp("z")).toEqual({ kind: "off", note: BASE_NOTE });
  });

  it("clamps transpose so notes stay inside the MIDI range", () => {
    const map = new KeyboardMap();
    for (let i = 0; i < 12; i++) {
      map.transposeOctaves(1);
    }
    expect(map.noteFor("u")).toBeNull(); // would exceed 127
  });

  it("releaseAll flushes the held set", () => {
    const map = new KeyboardMap();
    map.keyDown("z");
    map.keyDown("q");
    const actions = map.releaseAll();
    expect(actions).toHaveLength(2);
    expect(actions.every((a) => a.kind === "off")).toBe(true);
    expect(map.heldCount).toBe(0);
  });

  it("treats upper-case keys as their lower-case piano key", () => {
    const map = new KeyboardMap();
    expect(map.keyDown("Z")).toEqual({ kind: "on", note: BASE_NOTE });
    expect(map.keyUp("z")).toEqual({ kind: "off", note: BASE_NOTE });
  });
});
