// Demo scenario presets. Each preset is an atomic group of parameter
// changes: the caller sends every entry back to back so the engine
// rebuilds the potential once at the next block boundary.

const PI = Math.PI;

export interface Preset {
  name: string;
  label: string;
  params: Array<{ id: string; value: number }>;
}

export const PRESETS: Preset[] = [
  {
    name: "harmonic",
    label: "harmonic oscillator",
    params: [
      { id: "potential_kind", value: 1 },
      { id: "potential_p1", value: 1.0 },
      { id: "potential_p2", value: PI },
      { id: "gaussian_center", value: PI + 0.5 },
      { id: "gaussian_sigma", value: 0.35 },
      { id: "gaussian_momentum", value: 0 },
      { id: "sim_speed", value: 2000 },
    ],
  },
  {
    name: "tunneling",
    label: "tunneling barrier",
    params: [
      { id: "potential_kind", value: 2 },
      { id: "potential_p1", value: 20.0 },
      { id: "potential_p2", value: PI },
      { id: "potential_p3", value: PI + 0.3 },
      { id: "gaussian_center", value: PI / 2 },
      { id: "gaussian_sigma", value: 0.25 },
      { id: "gaussian_momentum", value: 4 },
      { id: "sim_speed", value: 8000 },
      { id: "dt", value: 0.01 },
    ],
  },
  {
    name: "free",
    label: "free packet",
    params: [
      { id: "potential_kind", value: 0 },
      { id: "gaussian_center", value: PI / 2 },
      { id: "gaussian_sigma", value: 0.3 },
      { id: "gaussian_momentum", value: 2 },
      { id: "sim_speed", value: 2000 },
    ],
  },
];

export function presetByName(name: string): Preset {
  const preset = PRESETS.find((p) => p.name === name);
  if (!preset) {
    throw new Error(`unknown preset: ${name}`);
  }
  return preset;
}
