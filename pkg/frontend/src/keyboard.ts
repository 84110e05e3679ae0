// Two-row piano layout on the computer keyboard.
//
// Bottom row (z..m + , .) covers an octave from the base note, top row
// (q..u + i) the octave above, mirroring the usual tracker layout.
// Key auto-repeat must not retrigger notes: the caller passes the
// event's `repeat` flag and we also track the held set ourselves.

const BOTTOM_ROW = ["z", "s", "x", "d", "c", "v", "g", "b", "h", "n", "j", "m"];
const TOP_ROW = ["q", "2", "w", "3", "e", "r", "5", "t", "6", "y", "7", "u"];

export const BASE_NOTE = 60; // middle C

const KEY_OFFSETS: Map<string, number> = new Map();
BOTTOM_ROW.forEach((key, i) => KEY_OFFSETS.set(key, i));
TOP_ROW.forEach((key, i) => KEY_OFFSETS.set(key, i + 12));

export type NoteAction =
  | { kind: "on"; note: number }
  | { kind: "off"; note: number };

export class KeyboardMap {
  transpose = 0; // semitones added to the base note
  private held: Map<string, number> = new Map();

  /** Note number a key would play right now, or null for unmapped keys. */
  noteFor(key: string): number | null {
    const offset = KEY_OFFSETS.get(key.toLowerCase());
    if (offset === undefined) {
      return null;
    }
    const note = BASE_NOTE + this.transpose + offset;
    return note >= 0 && note <= 127 ? note : null;
  }

  /** Handle a keydown; returns the action to send, or null (repeat/unmapped). */
  keyDown(key: string, isRepeat = false): NoteAction | null {
    const lower = key.toLowerCase();
    if (isRepeat || this.held.has(lower)) {
      return null;
    }
    const note = this.noteFor(lower);
    if (note === null) {
      return null;
    }
    this.held.set(lower, note);
    return { kind: "on", note };
  }

  /** Handle a keyup; releases the note the key started, even after transpose. */
  keyUp(key: string): NoteAction | null {
    const lower = key.toLowerCase();
    const note = this.held.get(lower);
    if (note === undefined) {
      return null;
    }
    this.held.delete(lower);
    return { kind: "off", note };
  }

  /** Shift by whole octaves; currently held notes keep their pitch. */
  transposeOctaves(octaves: number): void {
    this.transpose += 12 * octaves;
    this.transpose = Math.min(48, Math.max(-48, this.transpose));
  }

  releaseAll(): NoteAction[] {
    const actions = [...this.held.values()].map(
      (note): NoteAction => ({ kind: "off", note }));
    this.held.clear();
    return actions;
  }

  get heldCount(): number {
    return this.held.size;
  }
}
