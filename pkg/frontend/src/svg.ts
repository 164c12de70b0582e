/**
 * Minimal SVG scatter/line charts, no dependencies.
 *
 * Points are drawn sorted by x with markers always and a connecting line
 * only when a series has at least two points, so one-row inputs degrade to
 * lone markers.
 */

export interface Point {
  x: number;
  y: number;
}

export interface Series {
  label: string;
  points: Point[];
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  logX?: boolean;
  series: Series[];
}

const W = 640;
const H = 420;
const M = { left: 66, right: 18, top: 40, bottom: 52 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmt(v: number): string {
  if (Number.isInteger(v) && Math.abs(v) < 1e6) return String(v);
  const a = Math.abs(v);
  if (a !== 0 && (a < 1e-3 || a >= 1e6)) return v.toExponential(1);
  return String(Number(v.toPrecision(4)));
}

interface Scale {
  (v: number): number;
  ticks: number[];
}

function linearTicks(lo: number, hi: number, n = 5): number[] {
  const span = hi - lo;
  const rawStep = span / n;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= n + 1)
    ?? 10 * mag;
  const first = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = first; v <= hi + 1e-9 * span; v += step) out.push(v);
  return out;
}

function makeScale(values: number[], lo_px: number, hi_px: number,
                   log: boolean): Scale {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    // collapse guard: pad so a single value still lands mid-axis
    lo = log ? lo / 2 : lo - 1;
    hi = log ? hi * 2 : hi + 1;
  }
  const tr = log ? Math.log2 : (v: number) => v;
  const a = (hi_px - lo_px) / (tr(hi) - tr(lo));
  const scale = ((v: number) => lo_px + a * (tr(v) - tr(lo))) as Scale;
  if (log) {
    const ticks: number[] = [];
    for (let p = Math.ceil(Math.log2(lo)); p <= Math.floor(Math.log2(hi)); p++) {
      ticks.push(Math.pow(2, p));
    }
    scale.ticks = ticks.length >= 2 ? ticks : [lo, hi];
  } else {
    scale.ticks = linearTicks(lo, hi);
  }
  return scale;
}

export function chartSvg(spec: ChartSpec): string {
  const pts = spec.series.flatMap((s) => s.points);
  const xs = pts.map((p) => p.x);
  const ys = pts.map((p) => p.y);
  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" viewBox="0 0 ${W} ${H}" font-family="sans-serif" font-size="12">`);
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(`<text x="${W / 2}" y="22" text-anchor="middle" font-size="15">${esc(spec.title)}</text>`);
  if (pts.length === 0) {
    parts.push(`<text x="${W / 2}" y="${H / 2}" text-anchor="middle" fill="#888">no data</text>`);
    parts.push("</svg>");
    return parts.join("\n") + "\n";
  }
  const sx = makeScale(xs, M.left, W - M.right, spec.logX ?? false);
  const sy = makeScale(ys, H - M.bottom, M.top, false);

  for (const t of sx.ticks) {
    const x = sx(t);
    parts.push(`<line x1="${x.toFixed(1)}" y1="${M.top}" x2="${x.toFixed(1)}" y2="${H - M.bottom}" stroke="#eee"/>`);
    parts.push(`<text x="${x.toFixed(1)}" y="${H - M.bottom + 18}" text-anchor="middle">${fmt(t)}</text>`);
  }
  for (const t of sy.ticks) {
    const y = sy(t);
    parts.push(`<line x1="${M.left}" y1="${y.toFixed(1)}" x2="${W - M.right}" y2="${y.toFixed(1)}" stroke="#eee"/>`);
    parts.push(`<text x="${M.left - 8}" y="${(y + 4).toFixed(1)}" text-anchor="end">${fmt(t)}</text>`);
  }
  parts.push(`<line x1="${M.left}" y1="${H - M.bottom}" x2="${W - M.right}" y2="${H - M.bottom}" stroke="#333"/>`);
  parts.push(`<line x1="${M.left}" y1="${M.top}" x2="${M.left}" y2="${H - M.bottom}" stroke="#333"/>`);
  parts.push(`<text x="${(M.left + W - M.right) / 2}" y="${H - 12}" text-anchor="middle">${esc(spec.xLabel)}${spec.logX ? " (log scale)" : ""}</text>`);
  parts.push(`<text x="16" y="${(M.top + H - M.bottom) / 2}" text-anchor="middle" transform="rotate(-90 16 ${(M.top + H - M.bottom) / 2})">${esc(spec.yLabel)}</text>`);

  spec.series.forEach((series, si) => {
    const color = PALETTE[si % PALETTE.length];
    const sorted = [...series.points].sort((a, b) => a.x - b.x);
    if (sorted.length >= 2) {
      const path = sorted.map((p) => `${sx(p.x).toFixed(1)},${sy(p.y).toFixed(1)}`).join(" ");
      parts.push(`<polyline points="${path}" fill="none" stroke="${color}" stroke-width="1.5"/>`);
    }
    for (const p of sorted) {
      parts.push(`<circle cx="${sx(p.x).toFixed(1)}" cy="${sy(p.y).toFixed(1)}" r="3.5" fill="${color}"/>`);
    }
    const ly = M.top + 14 + 16 * si;
    parts.push(`<rect x="${W - M.right - 150}" y="${ly - 9}" width="10" height="10" fill="${color}"/>`);
    parts.push(`<text x="${W - M.right - 135}" y="${ly}">${esc(series.label)}</text>`);
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
