// Wire protocol between the playground and the engine bridge.
//
// Control traffic is JSON text; audio arrives as binary messages of
// interleaved float32 stereo frames (L, R, L, R, ...). The UI never
// interprets the simulation itself — it only forwards engine calls.

export type ParamBounds = Record<string, [number, number]>;

export type ClientMessage =
  | { type: "create"; sampleRate: number }
  | { type: "note_on"; note: number; velocity: number }
  | { type: "note_off"; note: number }
  | { type: "set_param"; id: string; value: number }
  | { type: "pull"; frames: number }
  | { type: "frame" };

export type ServerMessage =
  | { type: "ready"; n: number; sampleRate: number; bounds: ParamBounds }
  | { type: "frame"; density: number[]; potential: number[] }
  | { type: "error"; message: string };

export function encodeMessage(message: ClientMessage): string {
  return JSON.stringify(message);
}

export function decodeServerMessage(text: string): ServerMessage {
  const parsed = JSON.parse(text);
  if (typeof parsed !== "object" || parsed === null || typeof parsed.type !== "string") {
    throw new Error("malformed server message");
  }
  switch (parsed.type) {
    case "ready":
      if (typeof parsed.n !== "number" || typeof parsed.sampleRate !== "number"
          || typeof parsed.bounds !== "object") {
        throw new Error("malformed ready message");
      }
      return parsed as ServerMessage;
    case "frame":
      if (!Array.isArray(parsed.density) || !Array.isArray(parsed.potential)) {
        throw new Error("malformed frame message");
      }
      return parsed as ServerMessage;
    case "error":
      return { type: "error", message: String(parsed.message ?? "unknown") };
    default:
      throw new Error(`unknown server message type: ${parsed.type}`);
  }
}

/** Split an interleaved stereo float32 buffer into planar channels. */
export function deinterleave(buffer: ArrayBuffer): { left: Float32Array; right: Float32Array } {
  const interleaved = new Float32Array(buffer);
  if (interleaved.length % 2 !== 0) {
    throw new Error(`stereo payload must have an even sample count, got ${interleaved.length}`);
  }
  const frames = interleaved.length / 2;
  const left = new Float32Array(frames);
  const right = new Float32Array(frames);
  for (let i = 0; i < frames; i++) {
    left[i] = interleaved[2 * i];
    right[i] = interleaved[2 * i + 1];
  }
  return { left, right };
}
