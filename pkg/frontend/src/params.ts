// Parameter registry: ids, labels, and bounds.
//
// Bounds come from the engine (the single source of truth); the static
// descriptors below only add presentation details. `clamp` is what every
// input control runs through before a value reaches the wire.

import type { ParamBounds } from "./protocol.js";

export interface ParamDescriptor {
  id: string;
  label: string;
  // slider mapping: "linear" | "log" (log needs lo > 0)
  scale: "linear" | "log";
  step?: number;
}

export const KNOBS: ParamDescriptor[] = [
  { id: "sim_speed", label: "sim speed (steps/s)", scale: "linear", step: 1 },
  { id: "dt", label: "timestep dt", scale: "log" },
  { id: "master_gain", label: "master gain", scale: "linear" },
  { id: "attack", label: "attack (s)", scale: "linear" },
  { id: "decay", label: "decay (s)", scale: "linear" },
  { id: "sustain", label: "sustain", scale: "linear" },
  { id: "release", label: "release (s)", scale: "linear" },
  { id: "gaussian_center", label: "packet center", scale: "linear" },
  { id: "gaussian_sigma", label: "packet width", scale: "linear" },
  { id: "gaussian_momentum", label: "packet momentum", scale: "linear" },
  { id: "potential_p1", label: "potential strength/height", scale: "linear" },
  { id: "potential_p2", label: "potential center/left", scale: "linear" },
  { id: "potential_p3", label: "potential right", scale: "linear" },
];

export class ParamRegistry {
  private bounds: ParamBounds = {};

  setBounds(bounds: ParamBounds): void {
    this.bounds = { ...bounds };
  }

  has(id: string): boolean {
    return id in this.bounds;
  }

  boundsOf(id: string): [number, number] {
    const entry = this.bounds[id];
    if (!entry) {
      throw new Error(`unknown parameter id: ${id}`);
    }
    return entry;
  }

  /**
   * Clamp a raw input value into the engine's published range.
   * Returns the clamped value and whether clamping changed it (for
   * visual feedback on the control).
   */
  clamp(id: string, value: number): { value: number; clamped: boolean } {
    const [lo, hi] = this.boundsOf(id);
    if (Number.isNaN(value)) {
      return { value: lo, clamped: true };
    }
    const inside = Math.min(hi, Math.max(lo, value));
    return { value: inside, clamped: inside !== value };
  }
}

/** Map a 0..1 slider position onto the parameter range. */
export function sliderToValue(position: number, lo: number, hi: number,
                              scale: "linear" | "log"): number {
  const t = Math.min(1, Math.max(0, position));
  if (scale === "log") {
    const safeLo = Math.max(lo, 1e-6);
    return safeLo * Math.pow(hi / safeLo, t);
  }
  return lo + t * (hi - lo);
}

/** Inverse of sliderToValue. */
export function valueToSlider(value: number, lo: number, hi: number,
                              scale: "linear" | "log"): number {
  if (scale === "log") {
    const safeLo = Math.max(lo, 1e-6);
    const clamped = Math.min(hi, Math.max(safeLo, value));
    return Math.log(clamped / safeLo) / Math.log(hi / safeLo);
  }
  if (hi === lo) {
    return 0;
  }
  return Math.min(1, Math.max(0, (value - lo) / (hi - lo)));
}
