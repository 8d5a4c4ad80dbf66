// Rolling telemetry plots on plain canvas: bounded ring buffers, one line
// per series, dashed for commands and solid for measurements.

export class RingBuffer {
  private data: Array<[number, number]> = [];

  constructor(public readonly windowSeconds = 30, public readonly maxPoints = 1200) {}

  push(t: number, value: number) {
    this.data.push([t, value]);
    const cutoff = t - this.windowSeconds;
    while (this.data.length > this.maxPoints ||
           (this.data.length && this.data[0][0] < cutoff)) {
      this.data.shift();
    }
  }

  get length(): number {
    return this.data.length;
  }

  points(): ReadonlyArray<[number, number]> {
    return this.data;
  }

  latest(): [number, number] | undefined {
    return this.data[this.data.length - 1];
  }
}

export interface Series {
  label: string;
  buffer: RingBuffer;
  color: string;
  dashed?: boolean;
}

export class LinePlot {
  constructor(private canvas: HTMLCanvasElement, private series: Series[],
              private yRange: [number, number], private title = "") {}

  draw(now: number, windowSeconds = 10) {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const { width, height } = this.canvas;
    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = "#111722";
    ctx.fillRect(0, 0, width, height);
    const [y0, y1] = this.yRange;
    const toX = (t: number) => width - ((now - t) / windowSeconds) * width;
    const toY = (v: number) => height - ((v - y0) / (y1 - y0)) * height;

    ctx.strokeStyle = "#2a3346";
    ctx.beginPath();
    ctx.moveTo(0, toY(0));
    ctx.lineTo(width, toY(0));
    ctx.stroke();

    for (const s of this.series) {
      ctx.strokeStyle = s.color;
      ctx.setLineDash(s.dashed ? [5, 4] : []);
      ctx.beginPath();
      let started = false;
      for (const [t, v] of s.buffer.points()) {
        const x = toX(t);
        if (x < 0) continue;
        const y = toY(v);
        if (!started) {
          ctx.moveTo(x, y);
          started = true;
        } else {
          ctx.lineTo(x, y);
        }
      }
      ctx.stroke();
    }
    ctx.setLineDash([]);
    ctx.fillStyle = "#9fb3d1";
    ctx.font = "11px system-ui";
    ctx.fillText(this.title, 6, 13);
    let lx = 6;
    for (const s of this.series) {
      ctx.fillStyle = s.color;
      ctx.fillText((s.dashed ? "┄ " : "— ") + s.label, lx, height - 6);
      lx += ctx.measureText(s.label).width + 34;
    }
  }
}
