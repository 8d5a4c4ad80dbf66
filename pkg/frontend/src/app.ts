// Console wiring: input loop at display rate, telemetry-driven rendering,
// rolling charts, on-screen trigger grid, and connection status.

import { LinePlot, RingBuffer } from "./charts.js";
import { DEFAULT_PROFILE, InputProfile, InputSource } from "./gamepad.js";
import { ButtonName, DEFAULT_BINDINGS, InputMapper } from "./mapping.js";
import { TelemetryFrame } from "./protocol.js";
import { CharacterView } from "./render.js";
import { Session } from "./session.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function loadProfile(): Promise<InputProfile> {
  try {
    const response = await fetch("./profile.json");
    if (response.ok) return (await response.json()) as InputProfile;
  } catch {
    /* fall through to the default */
  }
  return DEFAULT_PROFILE;
}

async function boot() {
  const profile = await loadProfile();
  const params = new URLSearchParams(location.search);
  const wsUrl = params.get("ws")
    ?? `ws://${location.host || "127.0.0.1:8080"}/ws`;

  const view = new CharacterView(el<HTMLCanvasElement>("scene"));
  const source = new InputSource(profile);
  source.attach(window);
  const mapper = new InputMapper(DEFAULT_BINDINGS);

  const buffers = {
    vxCmd: new RingBuffer(), vxMeas: new RingBuffer(),
    vyCmd: new RingBuffer(), vyMeas: new RingBuffer(),
    wzCmd: new RingBuffer(), wzMeas: new RingBuffer(),
    neckSet: new RingBuffer(), neckMeas: new RingBuffer(),
  };
  const velPlot = new LinePlot(el<HTMLCanvasElement>("vel-plot"), [
    { label: "vx cmd", buffer: buffers.vxCmd, color: "#76c7ff", dashed: true },
    { label: "vx", buffer: buffers.vxMeas, color: "#76c7ff" },
    { label: "vy cmd", buffer: buffers.vyCmd, color: "#ffd166", dashed: true },
    { label: "vy", buffer: buffers.vyMeas, color: "#ffd166" },
  ], [-0.9, 0.9], "path velocities [m/s]");
  const turnPlot = new LinePlot(el<HTMLCanvasElement>("turn-plot"), [
    { label: "ω cmd", buffer: buffers.wzCmd, color: "#9bff8a", dashed: true },
    { label: "ω", buffer: buffers.wzMeas, color: "#9bff8a" },
  ], [-2.2, 2.2], "turn rate [rad/s]");
  const jointPlot = new LinePlot(el<HTMLCanvasElement>("joint-plot"), [
    { label: "NP set", buffer: buffers.neckSet, color: "#e58fff", dashed: true },
    { label: "NP", buffer: buffers.neckMeas, color: "#e58fff" },
  ], [-1.2, 1.2], "neck pitch [rad]");

  let lastFrame: TelemetryFrame | null = null;
  const session = new Session(wsUrl, {
    onFrame: (frame) => {
      lastFrame = frame;
      mapper.setMode(frame.mode);
      buffers.vxCmd.push(frame.t, frame.command.vx);
      buffers.vxMeas.push(frame.t, frame.measured_velocity.vx);
      buffers.vyCmd.push(frame.t, frame.command.vy);
      buffers.vyMeas.push(frame.t, frame.measured_velocity.vy);
      buffers.wzCmd.push(frame.t, frame.command.wz);
      buffers.wzMeas.push(frame.t, frame.measured_velocity.wz);
      buffers.neckSet.push(frame.t, frame.setpoint[12]);
      buffers.neckMeas.push(frame.t, frame.joint_pos[12]);
      if (frame.cues.length) {
        el("cues").textContent = `audio: ${frame.cues.join(", ")}`;
      }
      el("vitals").textContent =
        `battery — · temp — · misses ${frame.deadline_misses}`;
    },
    onStatus: (status) => {
      el("status").textContent =
        `${status.connected ? "connected" : "disconnected"} · ${status.role}` +
        (status.stale ? " · STALE" : "");
      el("status").className = status.connected && !status.stale ? "ok" : "bad";
    },
    onError: (message) => {
      el("errors").textContent = message;
      setTimeout(() => { el("errors").textContent = ""; }, 4000);
    },
  });
  session.connect();

  // On-screen 2x2 trigger grids stand in for the trackpads.
  for (const [gridId, prefix] of [["left-grid", "lt"], ["right-grid", "rt"]]) {
    const grid = el(gridId);
    const names = prefix === "lt"
      ? DEFAULT_BINDINGS.episodic.left_trackpad
      : DEFAULT_BINDINGS.episodic.right_trackpad;
    for (let i = 0; i < 4; i++) {
      const button = document.createElement("button");
      button.textContent = names[i] ?? "—";
      button.disabled = !names[i];
      const name = `${prefix}_q${i + 1}` as ButtonName;
      button.addEventListener("pointerdown", () => source.screenPress(name, true));
      button.addEventListener("pointerup", () => source.screenPress(name, false));
      button.addEventListener("pointerleave", () => source.screenPress(name, false));
      grid.appendChild(button);
    }
  }
  for (const name of ["l4", "l5", "r4", "r5", "l1", "r1", "menu", "view",
                      "a", "b", "x", "y"] as ButtonName[]) {
    const node = document.getElementById(`btn-${name}`);
    if (!node) continue;
    node.addEventListener("pointerdown", () => source.screenPress(name, true));
    node.addEventListener("pointerup", () => source.screenPress(name, false));
    node.addEventListener("pointerleave", () => source.screenPress(name, false));
  }

  function loop() {
    const raw = source.poll();
    const { messages, axes } = mapper.step(raw, performance.now() / 1000);
    for (const message of messages) session.send(message);
    session.sendAxes(axes);
    el("pad").textContent = source.gamepadConnected
      ? "gamepad connected" : "keyboard fallback (WASD/IJKL, see README)";
    view.draw(lastFrame, session.stale);
    const now = lastFrame ? lastFrame.t : 0;
    velPlot.draw(now);
    turnPlot.draw(now);
    jointPlot.draw(now);
    requestAnimationFrame(loop);
  }
  requestAnimationFrame(loop);
}

boot();
