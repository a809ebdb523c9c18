// Mapping between the engine's unit-circle frame and canvas pixels.
// Engine y points up; canvas y points down.

export type Point = [number, number];

export class Frame {
  constructor(
    readonly width: number,
    readonly height: number,
    readonly unitsPerHalf = 2.6,
  ) {}

  get scale(): number {
    return Math.min(this.width, this.height) / (2 * this.unitsPerHalf);
  }

  toPixel(p: Point): Point {
    return [this.width / 2 + p[0] * this.scale, this.height / 2 - p[1] * this.scale];
  }

  fromPixel(px: Point): Point {
    return [(px[0] - this.width / 2) / this.scale, (this.height / 2 - px[1]) / this.scale];
  }

  radialPoint(radian: number, radius: number, center: Point = [0, 0]): Point {
    return this.toPixel([center[0] + radius * Math.cos(radian), center[1] + radius * Math.sin(radian)]);
  }
}
