// 2.5D character view: skeleton segments from streamed link poses, eyes as
// discs with live color/radius, antennas, lamp, plus a stale badge.

import { TelemetryFrame } from "./protocol.js";

const BONES: Array<[string, string]> = [
  ["torso", "l_thigh"], ["l_thigh", "l_shank"], ["l_shank", "l_foot"],
  ["l_foot", "left_sole"],
  ["torso", "r_thigh"], ["r_thigh", "r_shank"], ["r_shank", "r_foot"],
  ["r_foot", "right_sole"],
  ["torso", "lower_neck"], ["lower_neck", "head"], ["head", "head_site"],
];

export class CharacterView {
  scale = 420;  // px per meter

  constructor(private canvas: HTMLCanvasElement) {}

  // Oblique orthographic projection: x right, z up, y adds depth slant.
  private project(p: [number, number, number], frame: TelemetryFrame,
                  w: number, h: number): [number, number] {
    const fx = frame.path_frame.x;
    const fy = frame.path_frame.y;
    const heading = frame.path_frame.heading;
    const c = Math.cos(-heading);
    const s = Math.sin(-heading);
    const lx = c * (p[0] - fx) - s * (p[1] - fy);
    const ly = s * (p[0] - fx) + c * (p[1] - fy);
    const u = w * 0.5 + (ly * -1.0 + lx * 0.35) * this.scale;
    const v = h * 0.92 - (p[2] + lx * 0.08) * this.scale;
    return [u, v];
  }

  draw(frame: TelemetryFrame | null, stale: boolean) {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const { width: w, height: h } = this.canvas;
    ctx.clearRect(0, 0, w, h);
    ctx.fillStyle = "#0c1018";
    ctx.fillRect(0, 0, w, h);
    ctx.strokeStyle = "#1d2636";
    ctx.beginPath();
    ctx.moveTo(0, h * 0.92);
    ctx.lineTo(w, h * 0.92);
    ctx.stroke();
    if (!frame) {
      ctx.fillStyle = "#5f6f8a";
      ctx.font = "14px system-ui";
      ctx.fillText("waiting for telemetry…", w / 2 - 70, h / 2);
      return;
    }

    ctx.lineWidth = 5;
    ctx.lineCap = "round";
    ctx.strokeStyle = "#7f94b8";
    for (const [a, b] of BONES) {
      const pa = frame.links[a];
      const pb = frame.links[b];
      if (!pa || !pb) continue;
      const [x1, y1] = this.project(pa.pos, frame, w, h);
      const [x2, y2] = this.project(pb.pos, frame, w, h);
      ctx.beginPath();
      ctx.moveTo(x1, y1);
      ctx.lineTo(x2, y2);
      ctx.stroke();
    }

    const head = frame.links["head_site"];
    if (head) {
      const [hx, hy] = this.project(head.pos, frame, w, h);
      const r = 0.065 * this.scale;
      ctx.fillStyle = "#222c3f";
      ctx.beginPath();
      ctx.arc(hx, hy, r, 0, Math.PI * 2);
      ctx.fill();

      const show = frame.show;
      // Antennas: angled segments from the top of the head.
      for (const side of [-1, 1]) {
        const angle = show[side < 0 ? 0 : 1];
        ctx.strokeStyle = "#9fb3d1";
        ctx.lineWidth = 2.5;
        ctx.beginPath();
        const bx = hx + side * r * 0.5;
        const by = hy - r * 0.85;
        ctx.moveTo(bx, by);
        ctx.lineTo(bx + side * Math.sin(0.5 - angle) * r * 0.9,
                   by - Math.cos(0.5 - angle) * r * 1.2);
        ctx.stroke();
      }
      // Eyes: per-eye RGB color and radius fraction.
      for (const side of [-1, 1]) {
        const base = side < 0 ? 2 : 5;
        const radius = show[side < 0 ? 8 : 9];
        const [cr, cg, cb] = [show[base], show[base + 1], show[base + 2]];
        if (radius <= 0.001) continue;
        ctx.fillStyle = `rgb(${cr * 255}, ${cg * 255}, ${cb * 255})`;
        ctx.beginPath();
        ctx.arc(hx + side * r * 0.42, hy - r * 0.1, radius * r * 0.3, 0,
                Math.PI * 2);
        ctx.fill();
      }
      // Head lamp brightness indicator.
      const lamp = show[10];
      ctx.fillStyle = `rgba(255, 236, 160, ${lamp})`;
      ctx.strokeStyle = "#3a4762";
      ctx.beginPath();
      ctx.arc(hx, hy + r * 0.45, r * 0.16, 0, Math.PI * 2);
      ctx.fill();
      ctx.stroke();
    }

    ctx.fillStyle = "#8fa3c2";
    ctx.font = "12px system-ui";
    const phi = frame.phi === null ? "—" : frame.phi.toFixed(2);
    ctx.fillText(`mode ${frame.mode}   φ ${phi}   t ${frame.t.toFixed(1)}s`, 8, 16);
    if (stale) {
      ctx.fillStyle = "#e0564a";
      ctx.fillRect(w - 74, 6, 68, 20);
      ctx.fillStyle = "#fff";
      ctx.fillText("STALE", w - 56, 20);
    }
  }
}
