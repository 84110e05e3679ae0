#!/usr/bin/env python3
"""Regenerate the frozen reference values used by the acceptance suite.

Run from the repository root:

    python tools/make_references.py [--full]

Without --full the long dt=1e-5 harmonic run (about two minutes) is
skipped and only the fast references are printed.  Copy updated values
into tests/test_acceptance.py if the simulation conventions ever change.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from psiwave import (
    Propagator,
    expectation_position,
    gaussian_initial,
    harmonic_potential,
    make_grid,
    parse_config,
    probability_in_interval,
    render_wav_bytes,
)
from psiwave.sim import WaveFunction

from oracles import first_return_time, matrix_propagator

GOLDEN_CONFIG = """\
{
  "engine": {"sample_rate": 48000, "n": 128, "dt": 0.001, "sim_speed": 2000,
             "stereo_mode": "weighted", "master_gain": 0.5},
  "envelope": {"attack": 0.01, "decay": 0.05, "sustain": 0.8, "release": 0.05},
  "initial": {"center": 3.141592653589793, "sigma": 0.4, "momentum": 0.0},
  "potential": {"kind": "harmonic", "strength": 1.0, "center": 3.141592653589793},
  "notes": [{"start": 0.0, "duration": 0.2, "note": 69, "velocity": 100}],
  "duration": 0.25
}
"""


def harmonic_first_return(dt: float, total_steps: int, sample_every: int) -> float:
    grid = make_grid(128)
    v = harmonic_potential(grid, 1.0, np.pi)
    psi = gaussian_initial(grid, np.pi + 0.5, 0.35, 0.0)
    prop = Propagator(grid, v, dt)
    amp = psi.amp.copy()
    series = [expectation_position(psi)]
    for i in range(1, total_steps + 1):
        prop.step_into(amp)
        if i % sample_every == 0:
            series.append(expectation_position(WaveFunction(grid, amp)))
    return first_return_time(np.asarray(series), dt * sample_every)


def tunneling_reference(dt: float, steps: int) -> dict:
    grid = make_grid(128)
    x = grid.x
    v = np.where((x >= np.pi) & (x <= np.pi + 0.3), 20.0, 0.0)
    u = matrix_propagator(128, v, dt)
    psi = gaussian_initial(grid, np.pi / 2, 0.25, 4.0)
    amp = psi.amp.copy()
    initial = probability_in_interval(WaveFunction(grid, amp), np.pi + 0.3, 2 * np.pi)
    for _ in range(steps):
        amp = u @ amp
    final = probability_in_interval(WaveFunction(grid, amp), np.pi + 0.3, 2 * np.pi)
    return {"dt": dt, "steps": steps, "initial_right_mass": initial,
            "final_right_mass": final}


def golden_hash() -> str:
    config = parse_config(GOLDEN_CONFIG)
    return hashlib.sha256(render_wav_bytes(config)).hexdigest()


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--full", action="store_true",
                        help="include the dt=1e-5 harmonic reference (slow)")
    args = parser.parse_args()

    out: dict = {}
    t0 = time.perf_counter()
    out["tunneling"] = tunneling_reference(dt=0.05, steps=2250)
    out["golden_wav_sha256"] = golden_hash()
    out["harmonic_first_return_dt_1e-3"] = harmonic_first_return(1e-3, 66_000, 1)
    if args.full:
        out["harmonic_first_return_dt_1e-5"] = harmonic_first_return(1e-5, 6_600_000, 10)
    out["elapsed_s"] = time.perf_counter() - t0
    print(json.dumps(out, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
