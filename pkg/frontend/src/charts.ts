/**
 * The four tradeoff charts drawn from a sweep frame:
 *   max degree vs rho, hop count vs rho (both at the largest swept n),
 *   lightness vs n, edges-per-point vs n (both at the smallest swept rho).
 *
 * Fitted constants go to summary.md so a run leaves a numeric record next
 * to the pictures.
 */
import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { loadSweep, okRows, SweepFrame, SweepRow } from "./csv.js";
import { leastSquares, log2, mean } from "./fit.js";
import { chartSvg, Series } from "./svg.js";

export interface FittedConstants {
  label: string;
  rows: number;
  degreeOverRho: number | null;
  hopOverBudget: number | null;
  lightnessSlope: number | null;
  edgesPerPoint: number | null;
}

function groupMean(rows: SweepRow[], key: (r: SweepRow) => number,
                   val: (r: SweepRow) => number | null): Array<[number, number]> {
  const acc = new Map<number, number[]>();
  for (const r of rows) {
    const v = val(r);
    if (v === null) continue;
    const k = key(r);
    const bucket = acc.get(k) ?? [];
    bucket.push(v);
    acc.set(k, bucket);
  }
  return [...acc.entries()]
    .map(([k, vs]): [number, number] => [k, vs.reduce((a, b) => a + b, 0) / vs.length])
    .sort((a, b) => a[0] - b[0]);
}

function atLargestN(rows: SweepRow[]): SweepRow[] {
  const n = Math.max(...rows.map((r) => r.n));
  return rows.filter((r) => r.n === n);
}

function atSmallestRho(rows: SweepRow[]): SweepRow[] {
  const rho = Math.min(...rows.map((r) => r.rho));
  return rows.filter((r) => r.rho === rho);
}

function toSeries(label: string, pairs: Array<[number, number]>): Series {
  return { label, points: pairs.map(([x, y]) => ({ x, y })) };
}

function degreeSeries(f: SweepFrame): Series {
  return toSeries(f.label, groupMean(atLargestN(okRows(f)), (r) => r.rho,
                                     (r) => r.maxDegree));
}

function hopSeries(f: SweepFrame): Series {
  return toSeries(f.label, groupMean(atLargestN(okRows(f)), (r) => r.rho,
                                     (r) => r.hopH));
}

function lightnessSeries(f: SweepFrame): Series {
  return toSeries(f.label, groupMean(atSmallestRho(okRows(f)), (r) => r.n,
                                     (r) => r.lightness));
}

function sizeSeries(f: SweepFrame): Series {
  return toSeries(f.label, groupMean(atSmallestRho(okRows(f)), (r) => r.n,
                                     (r) => r.edges === null ? null : r.edges / r.n));
}

export function fittedConstants(f: SweepFrame): FittedConstants {
  const rows = okRows(f);
  const degs = atLargestN(rows)
    .filter((r) => r.maxDegree !== null)
    .map((r) => (r.maxDegree as number) / r.rho);
  const hops = rows
    .filter((r) => r.hopH !== null)
    .map((r) => (r.hopH as number) / (Math.log(r.n) / Math.log(r.rho) + r.rho));
  const light = lightnessSeries(f).points;
  const fit = leastSquares(light.map((p) => log2(p.x)), light.map((p) => p.y));
  const sizes = rows
    .filter((r) => r.edges !== null)
    .map((r) => (r.edges as number) / r.n);
  return {
    label: f.label,
    rows: f.rows.length,
    degreeOverRho: mean(degs),
    hopOverBudget: mean(hops),
    lightnessSlope: fit ? fit.slope : null,
    edgesPerPoint: mean(sizes),
  };
}

const CHART_FILES = ["degree_vs_rho.svg", "hop_vs_rho.svg",
                     "lightness_vs_n.svg", "edges_per_point_vs_n.svg"];

function chartSpecs(frames: SweepFrame[]) {
  return [
    { file: CHART_FILES[0], title: "max degree vs rho", xLabel: "rho",
      yLabel: "max degree", logX: false, series: frames.map(degreeSeries) },
    { file: CHART_FILES[1], title: "hops at target stretch vs rho",
      xLabel: "rho", yLabel: "hops", logX: false,
      series: frames.map(hopSeries) },
    { file: CHART_FILES[2], title: "lightness vs n", xLabel: "n",
      yLabel: "weight / mst weight", logX: true,
      series: frames.map(lightnessSeries) },
    { file: CHART_FILES[3], title: "edges per point vs n", xLabel: "n",
      yLabel: "edges / n", logX: true, series: frames.map(sizeSeries) },
  ];
}

const fmtConst = (v: number | null): string =>
  v === null ? "n/a (need >= 2 points)" : v.toFixed(4);

function summaryMarkdown(frames: SweepFrame[]): string {
  const consts = frames.map(fittedConstants);
  const lines = ["# Sweep tradeoff summary", ""];
  for (const c of consts) {
    lines.push(`- ${c.label}: ${c.rows} rows`);
  }
  lines.push("");
  lines.push("## Fitted constants");
  lines.push("");
  lines.push(`| constant | ${consts.map((c) => c.label).join(" | ")} |`);
  lines.push(`|---|${consts.map(() => "---").join("|")}|`);
  const table: Array<[string, (c: FittedConstants) => number | null]> = [
    ["max degree / rho (largest n)", (c) => c.degreeOverRho],
    ["hops / (log_rho n + rho)", (c) => c.hopOverBudget],
    ["lightness slope vs log2 n (smallest rho)", (c) => c.lightnessSlope],
    ["edges per point", (c) => c.edgesPerPoint],
  ];
  for (const [name, pick] of table) {
    lines.push(`| ${name} | ${consts.map((c) => fmtConst(pick(c))).join(" | ")} |`);
  }
  lines.push("");
  return lines.join("\n");
}

function write(frames: SweepFrame[], outDir: string): string[] {
  mkdirSync(outDir, { recursive: true });
  const written: string[] = [];
  for (const spec of chartSpecs(frames)) {
    const path = join(outDir, spec.file);
    writeFileSync(path, chartSvg(spec));
    written.push(path);
  }
  const summary = join(outDir, "summary.md");
  writeFileSync(summary, summaryMarkdown(frames));
  written.push(summary);
  return written;
}

export function render(csvPath: string, outDir: string): string[] {
  return write([loadSweep(csvPath)], outDir);
}

export function compare(csvA: string, csvB: string, outDir: string): string[] {
  return write([loadSweep(csvA), loadSweep(csvB)], outDir);
}
