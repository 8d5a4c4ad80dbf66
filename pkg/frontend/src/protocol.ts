// Wire protocol shared with the live service: JSON text messages over one
// WebSocket. Client messages carry commands; the server streams telemetry.

export interface JoystickAxes {
  lx: number;
  ly: number;
  rx: number;
  ry: number;
  l2: number;
  r2: number;
  dpad_x: number;
  dpad_y: number;
  r1_held: boolean;
}

export type ClientMsg =
  | { type: "hello"; role: "operator" | "observer" }
  | ({ type: "joystick" } & JoystickAxes)
  | { type: "trigger"; name: string }
  | { type: "episodic"; name: string }
  | { type: "transition"; target: "standing" | "walking" }
  | { type: "motion_stop"; priority?: boolean }
  | { type: "reset_pose" }
  | { type: "cancel" }
  | { type: "flag"; name: "lamp" | "tuck" | "background"; on: boolean }
  | { type: "audio"; cue: string };

export interface LinkPose {
  pos: [number, number, number];
  quat: [number, number, number, number];
}

export interface TelemetryFrame {
  type: "telemetry";
  t: number;
  mode: string;
  phi: number | null;
  command: { vx: number; vy: number; wz: number; h_torso: number; dh_head: number };
  show: number[];
  joint_pos: number[];
  joint_vel: number[];
  joint_torque: number[];
  setpoint: number[];
  reference_q: number[];
  path_frame: { x: number; y: number; heading: number };
  links: Record<string, LinkPose>;
  measured_velocity: { vx: number; vy: number; wz: number };
  reward: { total: number } | null;
  cues: string[];
  trigger: string | null;
  deadline_misses: number;
}

export type ServerMsg =
  | { type: "welcome"; role: string; session: number }
  | TelemetryFrame
  | { type: "ack"; for: string }
  | { type: "error"; message: string };

export function neutralAxes(): JoystickAxes {
  return { lx: 0, ly: 0, rx: 0, ry: 0, l2: 0, r2: 0, dpad_x: 0, dpad_y: 0, r1_held: false };
}

export function axesEqual(a: JoystickAxes, b: JoystickAxes): boolean {
  return (
    a.lx === b.lx && a.ly === b.ly && a.rx === b.rx && a.ry === b.ry &&
    a.l2 === b.l2 && a.r2 === b.r2 && a.dpad_x === b.dpad_x &&
    a.dpad_y === b.dpad_y && a.r1_held === b.r1_held
  );
}

export function parseServerMsg(raw: string): ServerMsg | null {
  try {
    const msg = JSON.parse(raw);
    if (msg && typeof msg.type === "string") return msg as ServerMsg;
  } catch {
    /* malformed frames are dropped */
  }
  return null;
}

export function serialize(msg: ClientMsg): string {
  return JSON.stringify(msg);
}
