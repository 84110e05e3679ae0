// Wave/potential plot geometry and drawing.
//
// The x axis is fixed to the simulation domain [0, 2π] mapped across the
// canvas; the density is a filled curve over the potential line, each
// normalized to its own vertical scale so both stay visible.

export interface Polyline {
  xs: Float32Array;
  ys: Float32Array;
}

/**
 * Map n samples onto canvas coordinates. `yMax` fixes the value mapped
 * to the top of the plot area (a margin keeps curves off the edges).
 */
export function toPolyline(values: ArrayLike<number>, width: number, height: number,
                           yMax: number): Polyline {
  const n = values.length;
  const xs = new Float32Array(n);
  const ys = new Float32Array(n);
  const margin = 0.05 * height;
  const usable = height - 2 * margin;
  const scale = yMax > 0 ? usable / yMax : 0;
  for (let j = 0; j < n; j++) {
    xs[j] = (j / n) * width;
    const value = Math.min(Math.max(values[j], 0), yMax);
    ys[j] = height - margin - value * scale;
  }
  return { xs, ys };
}

/** Round a scale limit up to keep the autoscaled plot from flickering. */
export function stickyScale(previous: number, peak: number): number {
  if (peak > previous) {
    return peak * 1.25;
  }
  if (peak < previous * 0.4) {
    return Math.max(peak * 1.25, 1e-6);
  }
  return previous;
}

export class WavePlot {
  private densityScale = 1.0;
  private potentialScale = 1.0;

  constructor(private context: CanvasRenderingContext2D,
              private width: number, private height: number) {}

  draw(density: ArrayLike<number>, potential: ArrayLike<number>): void {
    const ctx = this.context;
    ctx.clearRect(0, 0, this.width, this.height);

    this.potentialScale = stickyScale(this.potentialScale, arrayMax(potential));
    this.densityScale = stickyScale(this.densityScale, arrayMax(density));

    const potentialLine = toPolyline(potential, this.width, this.height,
                                     this.potentialScale);
    ctx.strokeStyle = "#4d7fbe";
    ctx.lineWidth = 1.5;
    strokePath(ctx, potentialLine);

    const densityLine = toPolyline(density, this.width, this.height, this.densityScale);
    ctx.strokeStyle = "#ff9e3d";
    ctx.lineWidth = 2;
    strokePath(ctx, densityLine);
    fillToBaseline(ctx, densityLine, this.height, "rgba(255, 158, 61, 0.25)");
  }
}

function arrayMax(values: ArrayLike<number>): number {
  let max = 0;
  for (let i = 0; i < values.length; i++) {
    if (values[i] > max) {
      max = values[i];
    }
  }
  return max;
}

function strokePath(ctx: CanvasRenderingContext2D, line: Polyline): void {
  ctx.beginPath();
  ctx.moveTo(line.xs[0], line.ys[0]);
  for (let i = 1; i < line.xs.length; i++) {
    ctx.lineTo(line.xs[i], line.ys[i]);
  }
  ctx.stroke();
}

function fillToBaseline(ctx: CanvasRenderingContext2D, line: Polyline,
                        height: number, style: string): void {
  ctx.beginPath();
  ctx.moveTo(line.xs[0], height);
  for (let i = 0; i < line.xs.length; i++) {
    ctx.lineTo(line.xs[i], line.ys[i]);
  }
  ctx.lineTo(line.xs[line.xs.length - 1], height);
  ctx.closePath();
  ctx.fillStyle = style;
  ctx.fill();
}
