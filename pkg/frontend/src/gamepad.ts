// Gamepad API polling with a keyboard fallback, translated through the
// editable input profile into semantic button/axis state.

import { ButtonName, RawInput } from "./mapping.js";

export interface InputProfile {
  gamepad: {
    buttons: Record<string, ButtonName>;
    axes: { lx: number; ly: number; rx: number; ry: number };
    triggers: { l2: number; r2: number };  // button indices with analog value
    invert_ly: boolean;
    invert_ry: boolean;
  };
  keyboard: Record<string, ButtonName | "lx-" | "lx+" | "ly-" | "ly+" |
                           "rx-" | "rx+" | "ry-" | "ry+" | "l2" | "r2">;
  unbound: string[];
}

export const DEFAULT_PROFILE: InputProfile = {
  gamepad: {
    buttons: {
      "0": "a", "1": "b", "2": "x", "3": "y",
      "4": "l1", "5": "r1",
      "8": "view", "9": "menu",
      "10": "l3", "11": "r3",
      "12": "dpad_up", "13": "dpad_down", "14": "dpad_left", "15": "dpad_right",
    },
    axes: { lx: 0, ly: 1, rx: 2, ry: 3 },
    triggers: { l2: 6, r2: 7 },
    invert_ly: true,
    invert_ry: true,
  },
  keyboard: {
    KeyA: "lx-", KeyD: "lx+", KeyW: "ly+", KeyS: "ly-",
    KeyJ: "rx-", KeyL: "rx+", KeyI: "ry+", KeyK: "ry-",
    KeyQ: "l2", KeyE: "r2",
    ArrowUp: "dpad_up", ArrowDown: "dpad_down",
    ArrowLeft: "dpad_left", ArrowRight: "dpad_right",
    Space: "r1", Enter: "a", Escape: "menu", Backspace: "view",
    KeyZ: "l4", KeyC: "l5", KeyV: "r4", KeyN: "r5",
    KeyH: "l3", KeyU: "r3", KeyB: "b", KeyX: "x", KeyY: "y", KeyG: "l1",
  },
  // L4/L5/R4/R5 sit on paddles most gamepads lack; keyboard keys cover them.
  unbound: ["right_trackpad"],
};

export class InputSource {
  private keysDown = new Set<string>();
  private screenButtons = new Set<ButtonName>();
  gamepadConnected = false;

  constructor(private profile: InputProfile = DEFAULT_PROFILE) {}

  attach(target: Window) {
    target.addEventListener("keydown", (e) => {
      if (this.profile.keyboard[(e as KeyboardEvent).code]) e.preventDefault();
      this.keysDown.add((e as KeyboardEvent).code);
    });
    target.addEventListener("keyup", (e) => {
      this.keysDown.delete((e as KeyboardEvent).code);
    });
    target.addEventListener("gamepadconnected", () => {
      this.gamepadConnected = true;
    });
    target.addEventListener("gamepaddisconnected", () => {
      this.gamepadConnected = false;
    });
  }

  /** On-screen buttons (trackpad grid) press/release. */
  screenPress(button: ButtonName, down: boolean) {
    if (down) this.screenButtons.add(button);
    else this.screenButtons.delete(button);
  }

  poll(): RawInput {
    const held: Partial<Record<ButtonName, boolean>> = {};
    const axes = { lx: 0, ly: 0, rx: 0, ry: 0, l2: 0, r2: 0 };

    const pads = typeof navigator !== "undefined" && navigator.getGamepads
      ? navigator.getGamepads() : [];
    const pad = pads && pads.length ? pads[0] : null;
    if (pad) {
      this.gamepadConnected = true;
      const g = this.profile.gamepad;
      for (const [index, name] of Object.entries(g.buttons)) {
        if (pad.buttons[Number(index)]?.pressed) held[name] = true;
      }
      axes.lx = pad.axes[g.axes.lx] ?? 0;
      axes.ly = (pad.axes[g.axes.ly] ?? 0) * (g.invert_ly ? -1 : 1);
      axes.rx = pad.axes[g.axes.rx] ?? 0;
      axes.ry = (pad.axes[g.axes.ry] ?? 0) * (g.invert_ry ? -1 : 1);
      axes.l2 = pad.buttons[g.triggers.l2]?.value ?? 0;
      axes.r2 = pad.buttons[g.triggers.r2]?.value ?? 0;
    }

    for (const code of this.keysDown) {
      const action = this.profile.keyboard[code];
      if (!action) continue;
      switch (action) {
        case "lx-": axes.lx = -1; break;
        case "lx+": axes.lx = 1; break;
        case "ly-": axes.ly = -1; break;
        case "ly+": axes.ly = 1; break;
        case "rx-": axes.rx = -1; break;
        case "rx+": axes.rx = 1; break;
        case "ry-": axes.ry = -1; break;
        case "ry+": axes.ry = 1; break;
        case "l2": axes.l2 = 1; break;
        case "r2": axes.r2 = 1; break;
        default: held[action] = true;
      }
    }
    for (const button of this.screenButtons) held[button] = true;
    return { axes, held };
  }
}
