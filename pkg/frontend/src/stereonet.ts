/** Stereonet canvas: draws the unit-circle net and the pole points the API
 * returned. All projection math happens server-side; this module only maps
 * unit-disc coordinates to pixels with a linear scale.
 */
import type { StereoPoint } from "./types.js";

export interface PlottedPoint {
  label: string;
  px: number;
  py: number;
}

export class StereonetView {
  /** Points from the last plot() call, in API order (for tests/inspection). */
  lastPlotted: StereoPoint[] = [];

  constructor(private canvas: HTMLCanvasElement, private margin = 14) {}

  private geometry(): { cx: number; cy: number; radius: number } {
    const size = Math.min(this.canvas.width, this.canvas.height);
    return { cx: this.canvas.width / 2, cy: this.canvas.height / 2,
             radius: size / 2 - this.margin };
  }

  /** Linear unit-disc -> pixel mapping (canvas y grows downward). */
  toPixels(points: StereoPoint[]): PlottedPoint[] {
    const { cx, cy, radius } = this.geometry();
    return points.map((p) => ({
      label: p.label,
      px: cx + p.x * radius,
      py: cy - p.y * radius,
    }));
  }

  plot(points: StereoPoint[]): PlottedPoint[] {
    this.lastPlotted = points.slice();
    const pixels = this.toPixels(points);
    const ctx = this.canvas.getContext("2d");
    if (!ctx) {
      return pixels;
    }
    const { cx, cy, radius } = this.geometry();
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);

    ctx.strokeStyle = "#444";
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.arc(cx, cy, radius, 0, 2 * Math.PI);
    ctx.stroke();
    // center cross
    ctx.beginPath();
    ctx.moveTo(cx - 5, cy);
    ctx.lineTo(cx + 5, cy);
    ctx.moveTo(cx, cy - 5);
    ctx.lineTo(cx, cy + 5);
    ctx.stroke();
    // cardinal ticks
    ctx.fillStyle = "#444";
    ctx.font = "11px sans-serif";
    ctx.textAlign = "center";
    ctx.fillText("N", cx, cy - radius - 4);
    ctx.fillText("S", cx, cy + radius + 12);
    ctx.fillText("E", cx + radius + 8, cy + 4);
    ctx.fillText("W", cx - radius - 8, cy + 4);

    ctx.fillStyle = "#b03030";
    for (const point of pixels) {
      ctx.beginPath();
      ctx.arc(point.px, point.py, 4, 0, 2 * Math.PI);
      ctx.fill();
      if (point.label) {
        ctx.fillText(point.label, point.px + 10, point.py - 6);
      }
    }
    return pixels;
  }
}

/** Bar chart of measurements per joint set (labels/counts shown verbatim). */
export class BarChartView {
  constructor(private canvas: HTMLCanvasElement) {}

  draw(bars: { label: string; count: number }[]): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) {
      return;
    }
    const { width, height } = this.canvas;
    ctx.clearRect(0, 0, width, height);
    if (bars.length === 0) {
      return;
    }
    const maxCount = bars.reduce((acc, b) => (b.count > acc ? b.count : acc), 1);
    const slot = width / bars.length;
    const barWidth = slot * 0.6;
    ctx.fillStyle = "#33658a";
    ctx.font = "11px sans-serif";
    ctx.textAlign = "center";
    bars.forEach((bar, i) => {
      const h = (height - 30) * (bar.count / maxCount);
      const x = i * slot + (slot - barWidth) / 2;
      ctx.fillRect(x, height - 20 - h, barWidth, h);
      ctx.fillStyle = "#222";
      ctx.fillText(String(bar.count), x + barWidth / 2, height - 24 - h);
      ctx.fillText(bar.label, x + barWidth / 2, height - 6);
      ctx.fillStyle = "#33658a";
    });
  }
}
