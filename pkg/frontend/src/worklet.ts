// AudioWorkletProcessor that plays chunks pushed from the main thread.
//
// Self-contained on purpose: worklet module loading is pickiest about
// imports, so the small ring logic lives here rather than being shared.

declare class AudioWorkletProcessor {
  readonly port: MessagePort;
}
declare function registerProcessor(
  name: string,
  ctor: new () => AudioWorkletProcessor,
): void;

const RING_CAPACITY = 65536;
const LEVEL_REPORT_INTERVAL = 4; // render quanta between buffer reports

class ChannelRing {
  private data = new Float32Array(RING_CAPACITY);
  private readPos = 0;
  private writePos = 0;
  filled = 0;

  write(samples: Float32Array): void {
    const writable = Math.min(samples.length, RING_CAPACITY - this.filled);
    for (let i = 0; i < writable; i++) {
      this.data[this.writePos] = samples[i];
      this.writePos = (this.writePos + 1) % RING_CAPACITY;
    }
    this.filled += writable;
  }

  read(out: Float32Array): void {
    const readable = Math.min(out.length, this.filled);
    for (let i = 0; i < readable; i++) {
      out[i] = this.data[this.readPos];
      this.readPos = (this.readPos + 1) % RING_CAPACITY;
    }
    out.fill(0, readable);
    this.filled -= readable;
  }

  clear(): void {
    this.readPos = 0;
    this.writePos = 0;
    this.filled = 0;
  }
}

class BridgePlayer extends AudioWorkletProcessor {
  private left = new ChannelRing();
  private right = new ChannelRing();
  private quantaSinceReport = 0;

  constructor() {
    super();
    this.port.onmessage = (event: MessageEvent) => {
      const message = event.data;
      if (message.type === "chunk") {
        this.left.write(message.left as Float32Array);
        this.right.write(message.right as Float32Array);
      } else if (message.type === "clear") {
        this.left.clear();
        this.right.clear();
      }
    };
  }

  process(_inputs: Float32Array[][], outputs: Float32Array[][]): boolean {
    const output = outputs[0];
    this.left.read(output[0]);
    if (output.length > 1) {
      this.right.read(output[1]);
    }
    this.quantaSinceReport += 1;
    if (this.quantaSinceReport >= LEVEL_REPORT_INTERVAL) {
      this.quantaSinceReport = 0;
      this.port.postMessage({ type: "level", frames: this.left.filled });
    }
    return true;
  }
}

registerProcessor("bridge-player", BridgePlayer);
