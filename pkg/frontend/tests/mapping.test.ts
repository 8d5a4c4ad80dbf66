// Every bound controller row gets an automated mapping test: synthetic
// input events in, expected command messages out.

import { describe, expect, it } from "vitest";
import { DEFAULT_BINDINGS, HOLD_THRESHOLD, InputMapper, RawInput } from "../src/mapping.js";
import { DEFAULT_PROFILE } from "../src/gamepad.js";

function raw(held: RawInput["held"] = {}, axes: Partial<RawInput["axes"]> = {}): RawInput {
  return { axes: { lx: 0, ly: 0, rx: 0, ry: 0, l2: 0, r2: 0, ...axes }, held };
}

function types(messages: { type: string }[]): string[] {
  return messages.map((m) => m.type);
}

describe("stick and trigger axes", () => {
  it("streams left/right stick axes with deadzone", () => {
    const m = new InputMapper();
    const { axes } = m.step(raw({}, { lx: 0.5, ly: -0.8, rx: 0.03, ry: 1.0 }), 0);
    expect(axes.lx).toBe(0.5);
    expect(axes.ly).toBe(-0.8);
    expect(axes.rx).toBe(0);   // inside deadzone
    expect(axes.ry).toBe(1.0);
  });

  it("passes L2/R2 analog values through (lateral velocity / torso roll)", () => {
    const m = new InputMapper();
    const { axes } = m.step(raw({}, { l2: 0.7, r2: 0.2 }), 0);
    expect(axes.l2).toBeCloseTo(0.7);
    expect(axes.r2).toBeCloseTo(0.2);
  });

  it("maps the D-pad to head height and roll axes", () => {
    const m = new InputMapper();
    let out = m.step(raw({ dpad_up: true }), 0);
    expect(out.axes.dpad_y).toBe(1);
    out = m.step(raw({ dpad_down: true }), 0.1);
    expect(out.axes.dpad_y).toBe(-1);
    out = m.step(raw({ dpad_left: true }), 0.2);
    expect(out.axes.dpad_x).toBe(-1);
    out = m.step(raw({ dpad_right: true }), 0.3);
    expect(out.axes.dpad_x).toBe(1);
  });
});

describe("R1 walk control", () => {
  it("tap toggles walking and back", () => {
    const m = new InputMapper();
    m.setMode("standing");
    m.step(raw({ r1: true }), 0);
    let out = m.step(raw({}), 0.1);
    expect(out.messages).toContainEqual({ type: "transition", target: "walking" });
    m.setMode("walking");
    m.step(raw({ r1: true }), 1.0);
    out = m.step(raw({}), 1.1);
    expect(out.messages).toContainEqual({ type: "transition", target: "standing" });
  });

  it("hold boosts the velocity gain and does not toggle", () => {
    const m = new InputMapper();
    m.setMode("standing");
    m.step(raw({ r1: true }), 0);
    const held = m.step(raw({ r1: true }), 0.3);
    expect(held.axes.r1_held).toBe(true);
    const out = m.step(raw({}), 0.9);  // released after 0.9 s
    expect(types(out.messages)).not.toContain("transition");
    expect(out.axes.r1_held).toBe(false);
  });
});

describe("short/long dual triggers", () => {
  const cases: Array<[string, string, string]> = [
    ["r4", "yes", "no"],
    ["l4", "happy", "angry"],
    ["l5", "anxious", "curious"],
  ];
  for (const [button, short, long] of cases) {
    it(`${button} short press triggers "${short}"`, () => {
      const m = new InputMapper();
      m.step(raw({ [button]: true } as RawInput["held"]), 0);
      const out = m.step(raw({}), HOLD_THRESHOLD - 0.15);
      expect(out.messages).toContainEqual({ type: "trigger", name: short });
    });
    it(`${button} long press triggers "${long}"`, () => {
      const m = new InputMapper();
      m.step(raw({ [button]: true } as RawInput["held"]), 0);
      const out = m.step(raw({ [button]: true } as RawInput["held"]),
                         HOLD_THRESHOLD + 0.05);
      expect(out.messages).toContainEqual({ type: "trigger", name: long });
      const release = m.step(raw({}), HOLD_THRESHOLD + 0.3);
      expect(release.messages).toHaveLength(0);  // no duplicate short
    });
  }
});

describe("single-action buttons", () => {
  it("Menu sends motion stop with priority", () => {
    const m = new InputMapper();
    const out = m.step(raw({ menu: true }), 0);
    expect(out.messages[0]).toEqual({ type: "motion_stop", priority: true });
  });

  it("motion stop precedes other messages in the same snapshot", () => {
    const m = new InputMapper();
    const out = m.step(raw({ menu: true, a: true, l3: true }), 0);
    expect(out.messages[0].type).toBe("motion_stop");
  });

  it("View sends reset pose", () => {
    const m = new InputMapper();
    expect(types(m.step(raw({ view: true }), 0).messages)).toContain("reset_pose");
  });

  it("A transitions to standing", () => {
    const m = new InputMapper();
    expect(m.step(raw({ a: true }), 0).messages)
      .toContainEqual({ type: "transition", target: "standing" });
  });

  it("B toggles the tuck flag", () => {
    const m = new InputMapper();
    expect(m.step(raw({ b: true }), 0).messages)
      .toContainEqual({ type: "flag", name: "tuck", on: true });
    m.step(raw({}), 0.2);
    expect(m.step(raw({ b: true }), 0.4).messages)
      .toContainEqual({ type: "flag", name: "tuck", on: false });
  });

  it("X cancels active animations", () => {
    const m = new InputMapper();
    expect(types(m.step(raw({ x: true }), 0).messages)).toContain("cancel");
  });

  it("Y toggles the background layer", () => {
    const m = new InputMapper();
    expect(m.step(raw({ y: true }), 0).messages)
      .toContainEqual({ type: "flag", name: "background", on: false });
    m.step(raw({}), 0.1);
    expect(m.step(raw({ y: true }), 0.2).messages)
      .toContainEqual({ type: "flag", name: "background", on: true });
  });

  it("L1 toggles the head lamp", () => {
    const m = new InputMapper();
    expect(m.step(raw({ l1: true }), 0).messages)
      .toContainEqual({ type: "flag", name: "lamp", on: true });
  });

  it("L3 triggers the scanning animation", () => {
    const m = new InputMapper();
    expect(m.step(raw({ l3: true }), 0).messages)
      .toContainEqual({ type: "trigger", name: "scan" });
  });

  it("R3 toggles the audio level", () => {
    const m = new InputMapper();
    expect(m.step(raw({ r3: true }), 0).messages)
      .toContainEqual({ type: "audio", cue: "audio_level" });
  });

  it("R5 triggers an expressive audio clip", () => {
    const m = new InputMapper();
    expect(m.step(raw({ r5: true }), 0).messages)
      .toContainEqual({ type: "audio", cue: "cue_vocal" });
  });
});

describe("trackpad quadrants", () => {
  it("left quadrants trigger the four episodic motions", () => {
    const m = new InputMapper();
    const expected = ["dance", "excited", "jump", "tantrum"];
    for (let i = 0; i < 4; i++) {
      const held: RawInput["held"] = {};
      held[`lt_q${i + 1}` as keyof RawInput["held"]] = true;
      const out = m.step(raw(held), i);
      expect(out.messages).toContainEqual({ type: "episodic", name: expected[i] });
      m.step(raw({}), i + 0.5);
    }
  });

  it("right quadrants are explicitly unbound and send nothing", () => {
    const m = new InputMapper();
    for (let i = 0; i < 4; i++) {
      const held: RawInput["held"] = {};
      held[`rt_q${i + 1}` as keyof RawInput["held"]] = true;
      expect(m.step(raw(held), i).messages).toHaveLength(0);
      m.step(raw({}), i + 0.5);
    }
    expect(DEFAULT_PROFILE.unbound).toContain("right_trackpad");
  });
});

describe("binding coverage", () => {
  it("every dual trigger has both short and long bindings", () => {
    for (const button of ["L4", "L5", "R4"]) {
      expect(DEFAULT_BINDINGS.triggers[`${button}_short`]).toBeTruthy();
      expect(DEFAULT_BINDINGS.triggers[`${button}_long`]).toBeTruthy();
    }
  });

  it("no button press repeats while held", () => {
    const m = new InputMapper();
    m.step(raw({ a: true }), 0);
    expect(m.step(raw({ a: true }), 0.1).messages).toHaveLength(0);
  });
});
