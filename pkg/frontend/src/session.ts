// WebSocket session: connect, role negotiation, stale detection, command
// sending. Rendering state is derived purely from received frames.

import {
  ClientMsg,
  JoystickAxes,
  ServerMsg,
  TelemetryFrame,
  axesEqual,
  neutralAxes,
  parseServerMsg,
  serialize,
} from "./protocol.js";

export const STALE_AFTER_MS = 500;

export interface SessionCallbacks {
  onFrame?: (frame: TelemetryFrame) => void;
  onStatus?: (status: SessionStatus) => void;
  onError?: (message: string) => void;
}

export interface SessionStatus {
  connected: boolean;
  role: string;
  stale: boolean;
}

export class Session {
  private ws: WebSocket | null = null;
  private lastFrameAt = 0;
  private lastAxes: JoystickAxes = neutralAxes();
  private staleTimer: ReturnType<typeof setInterval> | null = null;
  role = "observer";
  connected = false;
  stale = true;
  lastFrame: TelemetryFrame | null = null;

  constructor(private url: string, private callbacks: SessionCallbacks = {},
              private wantRole: "operator" | "observer" = "operator") {}

  connect() {
    const ws = new WebSocket(this.url);
    this.ws = ws;
    ws.onopen = () => {
      this.connected = true;
      this.send({ type: "hello", role: this.wantRole });
      this.emitStatus();
    };
    ws.onclose = () => {
      this.connected = false;
      this.role = "observer";
      this.emitStatus();
      setTimeout(() => this.connect(), 1000);
    };
    ws.onmessage = (event) => {
      const msg = parseServerMsg(String(event.data));
      if (!msg) return;
      this.handle(msg);
    };
    if (this.staleTimer === null) {
      this.staleTimer = setInterval(() => this.checkStale(), 100);
    }
  }

  close() {
    if (this.staleTimer !== null) clearInterval(this.staleTimer);
    this.staleTimer = null;
    this.ws?.close();
  }

  private handle(msg: ServerMsg) {
    if (msg.type === "welcome") {
      this.role = msg.role;
      this.emitStatus();
    } else if (msg.type === "telemetry") {
      this.lastFrameAt = Date.now();
      if (this.stale) {
        this.stale = false;
        this.emitStatus();
      }
      this.lastFrame = msg;
      this.callbacks.onFrame?.(msg);
    } else if (msg.type === "error") {
      this.callbacks.onError?.(msg.message);
    }
  }

  private checkStale() {
    const stale = Date.now() - this.lastFrameAt > STALE_AFTER_MS;
    if (stale !== this.stale) {
      this.stale = stale;
      this.emitStatus();
    }
  }

  private emitStatus() {
    this.callbacks.onStatus?.({
      connected: this.connected,
      role: this.role,
      stale: this.stale,
    });
  }

  send(msg: ClientMsg) {
    if (this.ws && this.ws.readyState === WebSocket.OPEN) {
      this.ws.send(serialize(msg));
    }
  }

  /** Stream axes, skipping identical consecutive neutral frames. */
  sendAxes(axes: JoystickAxes) {
    const bothNeutral = axesEqual(axes, neutralAxes())
      && axesEqual(this.lastAxes, neutralAxes());
    if (!bothNeutral) this.send({ type: "joystick", ...axes });
    this.lastAxes = axes;
  }
}
