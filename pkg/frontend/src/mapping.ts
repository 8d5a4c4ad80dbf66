// Controller semantics: raw button/axis state in, command messages out.
// Dual-action buttons discriminate short presses from holds at a fixed
// threshold; the walk button toggles against the last telemetry mode.

import { ClientMsg, JoystickAxes, neutralAxes } from "./protocol.js";

export type ButtonName =
  | "a" | "b" | "x" | "y"
  | "menu" | "view"
  | "l1" | "r1" | "l3" | "r3" | "l4" | "l5" | "r4" | "r5"
  | "dpad_up" | "dpad_down" | "dpad_left" | "dpad_right"
  | "lt_q1" | "lt_q2" | "lt_q3" | "lt_q4"
  | "rt_q1" | "rt_q2" | "rt_q3" | "rt_q4";

export interface RawInput {
  axes: { lx: number; ly: number; rx: number; ry: number; l2: number; r2: number };
  held: Partial<Record<ButtonName, boolean>>;
}

export interface TriggerBindings {
  triggers: Record<string, string>;
  audio: Record<string, string>;
  episodic: { left_trackpad: string[]; right_trackpad: string[] };
}

export const DEFAULT_BINDINGS: TriggerBindings = {
  triggers: {
    L3: "scan",
    L4_short: "happy", L4_long: "angry",
    L5_short: "anxious", L5_long: "curious",
    R4_short: "yes", R4_long: "no",
  },
  audio: { R5: "cue_vocal", R3: "audio_level" },
  episodic: {
    left_trackpad: ["dance", "excited", "jump", "tantrum"],
    right_trackpad: [],
  },
};

export const HOLD_THRESHOLD = 0.4; // s: short press vs hold
const DEADZONE = 0.08;

const DUAL_BUTTONS: ReadonlyArray<ButtonName> = ["l4", "l5", "r4"];

function deadzone(v: number): number {
  return Math.abs(v) < DEADZONE ? 0 : Math.max(-1, Math.min(1, v));
}

export class InputMapper {
  mode = "standing";
  backgroundOn = true;
  tuckOn = false;
  lampOn = false;

  private prevHeld: Partial<Record<ButtonName, boolean>> = {};
  private pressedAt = new Map<ButtonName, number>();
  private longFired = new Set<ButtonName>();

  constructor(private bindings: TriggerBindings = DEFAULT_BINDINGS,
              private holdThreshold: number = HOLD_THRESHOLD) {}

  setMode(mode: string) {
    this.mode = mode;
  }

  /** Process one input snapshot; returns messages plus the axes stream. */
  step(raw: RawInput, now: number): { messages: ClientMsg[]; axes: JoystickAxes } {
    const messages: ClientMsg[] = [];
    const held = raw.held;

    const pressed = (b: ButtonName) =>
      Boolean(held[b]) && !this.prevHeld[b];
    const released = (b: ButtonName) =>
      !held[b] && Boolean(this.prevHeld[b]);

    // Safety first: motion stop goes ahead of everything else.
    if (pressed("menu")) {
      messages.push({ type: "motion_stop", priority: true });
    }
    if (pressed("view")) messages.push({ type: "reset_pose" });

    if (pressed("a")) messages.push({ type: "transition", target: "standing" });
    if (pressed("x")) messages.push({ type: "cancel" });
    if (pressed("y")) {
      this.backgroundOn = !this.backgroundOn;
      messages.push({ type: "flag", name: "background", on: this.backgroundOn });
    }
    if (pressed("b")) {
      this.tuckOn = !this.tuckOn;
      messages.push({ type: "flag", name: "tuck", on: this.tuckOn });
    }
    if (pressed("l1")) {
      this.lampOn = !this.lampOn;
      messages.push({ type: "flag", name: "lamp", on: this.lampOn });
    }
    if (pressed("l3")) {
      messages.push({ type: "trigger", name: this.bindings.triggers.L3 });
    }
    if (pressed("r3")) {
      messages.push({ type: "audio", cue: this.bindings.audio.R3 });
    }
    if (pressed("r5")) {
      messages.push({ type: "audio", cue: this.bindings.audio.R5 });
    }

    // Trackpad quadrants trigger episodic motions.
    const quads: Array<[ButtonName, string[], number]> = [
      ["lt_q1", this.bindings.episodic.left_trackpad, 0],
      ["lt_q2", this.bindings.episodic.left_trackpad, 1],
      ["lt_q3", this.bindings.episodic.left_trackpad, 2],
      ["lt_q4", this.bindings.episodic.left_trackpad, 3],
      ["rt_q1", this.bindings.episodic.right_trackpad, 0],
      ["rt_q2", this.bindings.episodic.right_trackpad, 1],
      ["rt_q3", this.bindings.episodic.right_trackpad, 2],
      ["rt_q4", this.bindings.episodic.right_trackpad, 3],
    ];
    for (const [button, list, index] of quads) {
      if (pressed(button) && list[index]) {
        messages.push({ type: "episodic", name: list[index] });
      }
    }

    // Short/long discrimination for the dual-action triggers.
    for (const button of DUAL_BUTTONS) {
      if (pressed(button)) {
        this.pressedAt.set(button, now);
        this.longFired.delete(button);
      }
      const t0 = this.pressedAt.get(button);
      if (held[button] && t0 !== undefined && !this.longFired.has(button) &&
          now - t0 >= this.holdThreshold) {
        const name = this.bindings.triggers[`${button.toUpperCase()}_long`];
        if (name) messages.push({ type: "trigger", name });
        this.longFired.add(button);
      }
      if (released(button)) {
        if (t0 !== undefined && !this.longFired.has(button) &&
            now - t0 < this.holdThreshold) {
          const name = this.bindings.triggers[`${button.toUpperCase()}_short`];
          if (name) messages.push({ type: "trigger", name });
        }
        this.pressedAt.delete(button);
        this.longFired.delete(button);
      }
    }

    // R1: tap toggles walking; holding boosts the velocity gain.
    if (pressed("r1")) this.pressedAt.set("r1", now);
    if (released("r1")) {
      const t0 = this.pressedAt.get("r1");
      if (t0 !== undefined && now - t0 < this.holdThreshold) {
        messages.push({
          type: "transition",
          target: this.mode === "walking" ? "standing" : "walking",
        });
      }
      this.pressedAt.delete("r1");
    }

    const axes: JoystickAxes = {
      ...neutralAxes(),
      lx: deadzone(raw.axes.lx),
      ly: deadzone(raw.axes.ly),
      rx: deadzone(raw.axes.rx),
      ry: deadzone(raw.axes.ry),
      l2: Math.max(0, Math.min(1, raw.axes.l2)),
      r2: Math.max(0, Math.min(1, raw.axes.r2)),
      dpad_x: (held.dpad_right ? 1 : 0) - (held.dpad_left ? 1 : 0),
      dpad_y: (held.dpad_up ? 1 : 0) - (held.dpad_down ? 1 : 0),
      r1_held: Boolean(held.r1),
    };

    this.prevHeld = { ...held };
    return { messages, axes };
  }
}
