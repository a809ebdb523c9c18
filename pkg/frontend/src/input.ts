// Pointer-as-gaze capture, throttled to the engine tick rate (newest wins).

export interface GazeMessage {
  t: number;
  x: number;
  y: number;
}

export class GazeThrottle {
  private latest: { x: number; y: number } | null = null;
  private lastSent = -Infinity;

  constructor(readonly tickHz: number) {}

  update(x: number, y: number): void {
    this.latest = { x, y };
  }

  /** Returns the message to send now, or null while throttled. */
  poll(nowSeconds: number): GazeMessage | null {
    if (this.latest === null) return null;
    if (nowSeconds - this.lastSent < 1 / this.tickHz - 1e-9) return null;
    if (nowSeconds <= this.lastSent) return null;
    this.lastSent = nowSeconds;
    return { t: nowSeconds, x: this.latest.x, y: this.latest.y };
  }
}
