// Minimal canvas renderer for the four marks at card size. No external
// chart grammar: bars, histogram columns, a polyline, and scatter dots
// cover everything the service recommends. In test environments without a
// 2D context the renderer degrades to a no-op (the data mapping helpers
// below stay testable).
import type { ChartData, VizSpecJson } from "./types.js";

const PALETTE = ["#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2", "#b279a2"];
const PAD = 18;

export interface Scaled {
  x: number[];
  y: number[];
}

export function scaleLinear(values: number[], lo: number, hi: number): number[] {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  const span = max - min;
  if (!(span > 0)) return values.map(() => (lo + hi) / 2);
  return values.map((v) => lo + ((v - min) / span) * (hi - lo));
}

export function colorFor(label: string | number, classes: (string | number)[]): string {
  const idx = classes.indexOf(label);
  return PALETTE[(idx < 0 ? 0 : idx) % PALETTE.length];
}

export function chartPoints(chart: ChartData, width: number, height: number): Scaled {
  const xs = chart.x.map((v, i) => (typeof v === "number" ? v : i));
  return {
    x: scaleLinear(xs, PAD, width - PAD),
    y: scaleLinear(chart.y, height - PAD, PAD),
  };
}

export function renderChart(
  canvas: HTMLCanvasElement,
  spec: VizSpecJson,
  chart: ChartData,
): void {
  let ctx: CanvasRenderingContext2D | null = null;
  try {
    ctx = canvas.getContext("2d");
  } catch {
    return; // headless DOM without canvas support
  }
  if (!ctx) return;
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  if (!chart.x.length) {
    ctx.fillStyle = "#999";
    ctx.fillText("no data", width / 2 - 18, height / 2);
    return;
  }

  if (spec.mark === "scatter") {
    const pts = chartPoints(chart, width, height);
    const classes = chart.color ? [...new Set(chart.color)] : [];
    for (let i = 0; i < pts.x.length; i++) {
      ctx.fillStyle = chart.color ? colorFor(chart.color[i], classes) : PALETTE[0];
      ctx.beginPath();
      ctx.arc(pts.x[i], pts.y[i], 2, 0, Math.PI * 2);
      ctx.fill();
    }
    return;
  }

  if (spec.mark === "line") {
    const pts = chartPoints(chart, width, height);
    ctx.strokeStyle = PALETTE[0];
    ctx.beginPath();
    pts.x.forEach((x, i) => (i === 0 ? ctx.moveTo(x, pts.y[i]) : ctx.lineTo(x, pts.y[i])));
    ctx.stroke();
    return;
  }

  // bar / histogram columns
  const n = chart.y.length;
  const gap = spec.mark === "histogram" ? 0 : 2;
  const slot = (width - 2 * PAD) / n;
  const heights = scaleLinear(
    [0, ...chart.y],
    0,
    height - 2 * PAD,
  ).slice(1);
  ctx.fillStyle = PALETTE[0];
  for (let i = 0; i < n; i++) {
    const h = Math.max(1, heights[i]);
    ctx.fillRect(PAD + i * slot + gap / 2, height - PAD - h, slot - gap, h);
  }
}
