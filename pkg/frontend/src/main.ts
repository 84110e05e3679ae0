// Playground wiring: audio gate, engine socket, keyboard, knobs, plot.

import { KeyboardMap } from "./keyboard.js";
import { KNOBS, ParamRegistry, sliderToValue, valueToSlider } from "./params.js";
import { WavePlot } from "./plot.js";
import { PRESETS } from "./presets.js";
import {
  ClientMessage,
  decodeServerMessage,
  deinterleave,
  encodeMessage,
} from "./protocol.js";

// queued audio is key-to-sound latency: 3 chunks of 1024 frames is
// ~64 ms at 48 kHz, comfortably under the 100 ms responsiveness target
const PULL_CHUNK_FRAMES = 1024;
const TARGET_BUFFER_FRAMES = 3072;
const PLOT_INTERVAL_MS = 33; // ~30 fps

const statusEl = document.getElementById("status") as HTMLElement;
const startButton = document.getElementById("start") as HTMLButtonElement;
const knobsEl = document.getElementById("knobs") as HTMLElement;
const presetsEl = document.getElementById("presets") as HTMLElement;
const canvas = document.getElementById("plot") as HTMLCanvasElement;

const registry = new ParamRegistry();
const keyboard = new KeyboardMap();

let socket: WebSocket | null = null;
let workletNode: AudioWorkletNode | null = null;
let audioContext: AudioContext | null = null;
let pullInFlight = 0;
let plot: WavePlot | null = null;
let lastPlotRequest = 0;

function setStatus(text: string, kind: "info" | "error" | "ready" = "info"): void {
  statusEl.textContent = text;
  statusEl.dataset.kind = kind;
}

function send(message: ClientMessage): void {
  if (socket && socket.readyState === WebSocket.OPEN) {
    socket.send(encodeMessage(message));
  }
}

function requestAudioIfLow(bufferedFrames: number): void {
  while (bufferedFrames + pullInFlight * PULL_CHUNK_FRAMES < TARGET_BUFFER_FRAMES) {
    send({ type: "pull", frames: PULL_CHUNK_FRAMES });
    pullInFlight += 1;
    bufferedFrames += PULL_CHUNK_FRAMES;
  }
}

function buildKnobs(): void {
  knobsEl.textContent = "";
  for (const descriptor of KNOBS) {
    if (!registry.has(descriptor.id)) {
      continue;
    }
    const [lo, hi] = registry.boundsOf(descriptor.id);
    const row = document.createElement("label");
    row.className = "knob";
    const caption = document.createElement("span");
    caption.textContent = descriptor.label;
    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = "0";
    slider.max = "1000";
    slider.dataset.param = descriptor.id;
    const readout = document.createElement("input");
    readout.type = "text";
    readout.className = "readout";

    const show = (value: number) => {
      readout.value = value >= 100 ? value.toFixed(0) : value.toPrecision(4);
      slider.value = String(
        Math.round(1000 * valueToSlider(value, lo, hi, descriptor.scale)));
    };
    slider.addEventListener("input", () => {
      const value = sliderToValue(Number(slider.value) / 1000, lo, hi, descriptor.scale);
      show(value);
      send({ type: "set_param", id: descriptor.id, value });
    });
    readout.addEventListener("change", () => {
      const raw = Number(readout.value);
      const { value, clamped } = registry.clamp(descriptor.id, raw);
      readout.classList.toggle("clamped", clamped);
      show(value);
      send({ type: "set_param", id: descriptor.id, value });
    });

    show(sliderToValue(0.0, lo, hi, descriptor.scale));
    row.append(caption, slider, readout);
    knobsEl.append(row);
  }
}

function applyPreset(name: string): void {
  const preset = PRESETS.find((p) => p.name === name);
  if (!preset) {
    return;
  }
  for (const { id, value } of preset.params) {
    send({ type: "set_param", id, value });
  }
  setStatus(`preset: ${preset.label}`, "ready");
}

function buildPresets(): void {
  presetsEl.textContent = "";
  for (const preset of PRESETS) {
    const button = document.createElement("button");
    button.textContent = preset.label;
    button.addEventListener("click", () => applyPreset(preset.name));
    presetsEl.append(button);
  }
}

function wireStereoControls(): void {
  for (const radio of document.querySelectorAll<HTMLInputElement>("input[name=stereo]")) {
    radio.addEventListener("change", () => {
      send({ type: "set_param", id: "stereo_mode", value: Number(radio.value) });
    });
  }
  const dc = document.getElementById("dc") as HTMLInputElement;
  dc.addEventListener("change", () => {
    send({ type: "set_param", id: "dc_removal", value: dc.checked ? 1 : 0 });
  });
}

function wireKeyboard(): void {
  window.addEventListener("keydown", (event) => {
    if (event.target instanceof HTMLInputElement) {
      return;
    }
    const action = keyboard.keyDown(event.key, event.repeat);
    if (action) {
      send({ type: "note_on", note: action.note, velocity: 100 });
    }
  });
  window.addEventListener("keyup", (event) => {
    const action = keyboard.keyUp(event.key);
    if (action) {
      send({ type: "note_off", note: action.note });
    }
  });
  (document.getElementById("transpose-down") as HTMLButtonElement)
    .addEventListener("click", () => transposeBy(-1));
  (document.getElementById("transpose-up") as HTMLButtonElement)
    .addEventListener("click", () => transposeBy(1));
}

function transposeBy(octaves: number): void {
  for (const action of keyboard.releaseAll()) {
    send({ type: "note_off", note: action.note });
  }
  keyboard.transposeOctaves(octaves);
  const label = document.getElementById("transpose-label") as HTMLElement;
  label.textContent = `${keyboard.transpose >= 0 ? "+" : ""}${keyboard.transpose / 12} oct`;
}

function plotLoop(timestamp: number): void {
  if (timestamp - lastPlotRequest >= PLOT_INTERVAL_MS) {
    lastPlotRequest = timestamp;
    send({ type: "frame" });
  }
  requestAnimationFrame(plotLoop);
}

async function start(): Promise<void> {
  startButton.disabled = true;
  try {
    audioContext = new AudioContext();
    await audioContext.resume();
    await audioContext.audioWorklet.addModule("dist/worklet.js");
    workletNode = new AudioWorkletNode(audioContext, "bridge-player", {
      numberOfInputs: 0,
      numberOfOutputs: 1,
      outputChannelCount: [2],
    });
    workletNode.connect(audioContext.destination);
    workletNode.port.onmessage = (event) => {
      if (event.data.type === "level") {
        requestAudioIfLow(event.data.frames as number);
      }
    };
  } catch (error) {
    setStatus(`audio unavailable: ${error}`, "error");
    return;
  }

  const url = `${location.protocol === "https:" ? "wss" : "ws"}://${location.host}/ws`;
  socket = new WebSocket(url);
  socket.binaryType = "arraybuffer";
  socket.onopen = () => {
    send({ type: "create", sampleRate: audioContext!.sampleRate });
  };
  socket.onerror = () => setStatus("engine bridge unreachable", "error");
  socket.onclose = () => setStatus("engine bridge closed", "error");
  socket.onmessage = (event) => {
    if (event.data instanceof ArrayBuffer) {
      pullInFlight = Math.max(0, pullInFlight - 1);
      const { left, right } = deinterleave(event.data);
      workletNode?.port.postMessage({ type: "chunk", left, right },
                                    [left.buffer, right.buffer]);
      return;
    }
    const message = decodeServerMessage(event.data as string);
    if (message.type === "ready") {
      registry.setBounds(message.bounds);
      buildKnobs();
      buildPresets();
      wireStereoControls();
      setStatus(`ready — ${message.sampleRate} Hz, n = ${message.n}`, "ready");
      (document.getElementById("gate") as HTMLElement).hidden = true;
      requestAudioIfLow(0);
      requestAnimationFrame(plotLoop);
    } else if (message.type === "frame") {
      plot?.draw(message.density, message.potential);
    } else {
      setStatus(message.message, "error");
    }
  };
}

function init(): void {
  const context = canvas.getContext("2d");
  if (context) {
    plot = new WavePlot(context, canvas.width, canvas.height);
  }
  wireKeyboard();
  startButton.addEventListener("click", () => void start());
  window.addEventListener("beforeunload", () => {
    socket?.close();
    void audioContext?.close();
  });
  setStatus("click start to enable audio");
}

init();
