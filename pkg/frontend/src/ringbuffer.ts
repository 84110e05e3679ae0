// Single-producer single-consumer float ring buffer for audio frames.
// The worklet reads, the message handler writes; underflow plays silence
// and is counted instead of blocking.

export class FloatRing {
  private data: Float32Array;
  private readPos = 0;
  private writePos = 0;
  private filled = 0;
  underflows = 0;
  dropped = 0;

  constructor(capacity: number) {
    if (capacity <= 0) {
      throw new Error(`ring capacity must be positive, got ${capacity}`);
    }
    this.data = new Float32Array(capacity);
  }

  get capacity(): number {
    return this.data.length;
  }

  get available(): number {
    return this.filled;
  }

  get freeSpace(): number {
    return this.data.length - this.filled;
  }

  /** Append samples; rejects (and counts) anything beyond free space. */
  write(samples: Float32Array): number {
    const writable = Math.min(samples.length, this.freeSpace);
    this.dropped += samples.length - writable;
    for (let i = 0; i < writable; i++) {
      this.data[this.writePos] = samples[i];
      this.writePos = (this.writePos + 1) % this.data.length;
    }
    this.filled += writable;
    return writable;
  }

  /** Fill `out` from the ring, zero-padding (and counting) underflow. */
  read(out: Float32Array): number {
    const readable = Math.min(out.length, this.filled);
    for (let i = 0; i < readable; i++) {
      out[i] = this.data[this.readPos];
      this.readPos = (this.readPos + 1) % this.data.length;
    }
    for (let i = readable; i < out.length; i++) {
      out[i] = 0;
    }
    if (readable < out.length) {
      this.underflows += 1;
    }
    this.filled -= readable;
    return readable;
  }

  clear(): void {
    this.readPos = 0;
    this.writePos = 0;
    this.filled = 0;
  }
}
