// Canvas renderer: draws exactly what the latest snapshot says, nothing more.

import { Snapshot } from "./protocol";
import { Frame } from "./transform";

const MARKER_COLOR = "#4a6b8a";
const BEHIND_COLOR = "#b5bdc4";
const LABEL_COLOR = "#1c2733";
const ACCENT = "#d96c2c";
const RING_COLOR = "#8fa3b5";

export class SnapshotView {
  private lastRendered = -1;

  constructor(private readonly canvas: HTMLCanvasElement) {}

  frame(): Frame {
    return new Frame(this.canvas.width, this.canvas.height);
  }

  render(snapshot: Snapshot): void {
    if (snapshot.t < this.lastRendered) return; // stale frame, skip
    this.lastRendered = snapshot.t;
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const frame = this.frame();
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);

    this.drawMarkers(ctx, frame, snapshot);
    if (snapshot.first_level && snapshot.phase === "first_level") {
      this.drawLetterRing(ctx, frame, snapshot);
    }
    if (snapshot.second_level && (snapshot.phase === "second_level" || snapshot.phase === "guiding")) {
      this.drawSecondLevel(ctx, frame, snapshot);
    }
    this.drawFlights(ctx, frame, snapshot);
    this.drawGaze(ctx, frame, snapshot);
    this.drawHud(ctx, snapshot);
  }

  private drawMarkers(ctx: CanvasRenderingContext2D, frame: Frame, snapshot: Snapshot): void {
    for (const marker of snapshot.markers) {
      const [x, y] = frame.toPixel(marker.pos2d);
      ctx.fillStyle = marker.front ? MARKER_COLOR : BEHIND_COLOR;
      ctx.beginPath();
      ctx.arc(x, y, marker.front ? 4 : 3, 0, 2 * Math.PI);
      ctx.fill();
      if (snapshot.target && marker.id === snapshot.target.id && snapshot.phase === "located") {
        ctx.strokeStyle = ACCENT;
        ctx.lineWidth = 2;
        ctx.beginPath();
        ctx.arc(x, y, 10, 0, 2 * Math.PI);
        ctx.stroke();
      }
    }
  }

  private drawLetterRing(ctx: CanvasRenderingContext2D, frame: Frame, snapshot: Snapshot): void {
    const ring = snapshot.first_level!;
    const [cx, cy] = frame.toPixel([0, 0]);
    ctx.strokeStyle = RING_COLOR;
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.arc(cx, cy, ring.radius * frame.scale, 0, 2 * Math.PI);
    ctx.stroke();

    ctx.font = "16px sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    for (const slot of ring.letters) {
      const [x, y] = frame.radialPoint(slot.radian, ring.radius);
      const hovered = ring.dwell.letter === slot.letter;
      ctx.fillStyle = hovered ? ACCENT : LABEL_COLOR;
      ctx.fillText(slot.letter, x, y);
      if (hovered && ring.dwell.progress > 0) {
        ctx.strokeStyle = ACCENT;
        ctx.lineWidth = 3;
        ctx.beginPath();
        ctx.arc(x, y, 14, -Math.PI / 2, -Math.PI / 2 + 2 * Math.PI * ring.dwell.progress);
        ctx.stroke();
      }
    }
  }

  private drawSecondLevel(ctx: CanvasRenderingContext2D, frame: Frame, snapshot: Snapshot): void {
    const layout = snapshot.second_level!;
    const center = layout.center;
    const [cx, cy] = frame.toPixel(center);
    ctx.strokeStyle = RING_COLOR;
    ctx.lineWidth = 1;
    for (const circle of layout.circles) {
      ctx.beginPath();
      ctx.arc(cx, cy, circle.radius * frame.scale, 0, 2 * Math.PI);
      ctx.stroke();
    }
    ctx.font = "12px sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    for (const circle of layout.circles) {
      for (const label of circle.labels) {
        const [x, y] = frame.radialPoint(label.radian, circle.radius, center);
        const isTarget = snapshot.target !== null && label.anchor_id === snapshot.target.id;
        ctx.fillStyle = isTarget ? ACCENT : LABEL_COLOR;
        ctx.fillText(label.text, x, y);
      }
    }
  }

  private drawFlights(ctx: CanvasRenderingContext2D, frame: Frame, snapshot: Snapshot): void {
    ctx.font = "12px sans-serif";
    ctx.textAlign = "center";
    for (const flight of snapshot.flights) {
      const [x, y] = frame.toPixel(flight.pos2d);
      const isTarget = snapshot.target !== null && flight.anchor_id === snapshot.target.id;
      ctx.fillStyle = isTarget ? ACCENT : LABEL_COLOR;
      ctx.beginPath();
      ctx.arc(x, y, 5, 0, 2 * Math.PI);
      ctx.fill();
      ctx.fillText(`${flight.text} (s=${flight.s.toFixed(2)})`, x, y - 12);
    }
  }

  private drawGaze(ctx: CanvasRenderingContext2D, frame: Frame, snapshot: Snapshot): void {
    const [x, y] = frame.toPixel(snapshot.gaze);
    ctx.strokeStyle = "#2c8a57";
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    ctx.arc(x, y, 8, 0, 2 * Math.PI);
    ctx.stroke();
  }

  private drawHud(ctx: CanvasRenderingContext2D, snapshot: Snapshot): void {
    ctx.font = "13px monospace";
    ctx.textAlign = "left";
    ctx.textBaseline = "top";
    ctx.fillStyle = LABEL_COLOR;
    const lines = [
      `phase: ${snapshot.phase}`,
      `time: ${snapshot.metrics.time_s.toFixed(1)}s  rotation: ${snapshot.metrics.rotation_deg.toFixed(0)}°`,
    ];
    if (snapshot.target) {
      lines.unshift(`find: ${snapshot.target.name}`);
    }
    if (snapshot.located) {
      lines.push(`located: ${snapshot.located} ${snapshot.metrics.success ? "✓" : "(wrong object)"}`);
    }
    lines.forEach((line, i) => ctx.fillText(line, 12, 12 + 18 * i));
  }
}
