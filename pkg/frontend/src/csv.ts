/**
 * Sweep CSV loader.
 *
 * The upstream tool writes a schema comment, a header row, then one row per
 * configuration. Rows that failed upstream keep their config cells but have
 * blank measurements and a non-"ok" status; blanks parse to null here so the
 * charts can skip them without guessing.
 */
import { readFileSync } from "node:fs";
import { basename } from "node:path";

export const SCHEMA = "spanlab-sweep v1";
export const COLUMNS = [
  "n", "rho", "eps", "mode", "edges", "max_degree", "lightness", "stretch",
  "hop_h", "gamma", "levels", "build_ms", "status",
] as const;

export class SchemaMismatch extends Error {}

export interface SweepRow {
  n: number;
  rho: number;
  eps: number;
  mode: string;
  edges: number | null;
  maxDegree: number | null;
  lightness: number | null;
  stretch: number | null;
  hopH: number | null;
  gamma: number | null;
  levels: number | null;
  buildMs: number | null;
  status: string;
}

export interface SweepFrame {
  label: string;
  rows: SweepRow[];
}

function requireNum(cell: string, col: string, line: number): number {
  const v = Number(cell);
  if (cell === "" || !Number.isFinite(v)) {
    throw new SchemaMismatch(`line ${line}: column ${col} is not numeric: "${cell}"`);
  }
  return v;
}

function numOrNull(cell: string, col: string, line: number): number | null {
  if (cell === "") return null;
  return requireNum(cell, col, line);
}

function parseRow(raw: string, line: number): SweepRow {
  const cells = raw.split(",");
  if (cells.length !== COLUMNS.length) {
    throw new SchemaMismatch(
      `line ${line}: expected ${COLUMNS.length} cells, got ${cells.length}`);
  }
  return {
    n: requireNum(cells[0], "n", line),
    rho: requireNum(cells[1], "rho", line),
    eps: requireNum(cells[2], "eps", line),
    mode: cells[3],
    edges: numOrNull(cells[4], "edges", line),
    maxDegree: numOrNull(cells[5], "max_degree", line),
    lightness: numOrNull(cells[6], "lightness", line),
    stretch: numOrNull(cells[7], "stretch", line),
    hopH: numOrNull(cells[8], "hop_h", line),
    gamma: numOrNull(cells[9], "gamma", line),
    levels: numOrNull(cells[10], "levels", line),
    buildMs: numOrNull(cells[11], "build_ms", line),
    status: cells[12],
  };
}

export function parseSweep(text: string, label: string): SweepFrame {
  const lines = text.split(/\r?\n/).filter((ln) => ln.trim().length > 0);
  if (lines.length === 0 || lines[0].trim() !== `# ${SCHEMA}`) {
    throw new SchemaMismatch(`first line must be "# ${SCHEMA}"`);
  }
  if (lines.length < 2 || lines[1].trim() !== COLUMNS.join(",")) {
    throw new SchemaMismatch("header row does not match the sweep schema");
  }
  const rows = lines.slice(2).map((ln, i) => parseRow(ln, i + 3));
  if (rows.length === 0) {
    throw new SchemaMismatch("no data rows");
  }
  return { label, rows };
}

export function loadSweep(path: string): SweepFrame {
  const label = basename(path).replace(/\.[^.]*$/, "");
  return parseSweep(readFileSync(path, "utf8"), label);
}

export function okRows(frame: SweepFrame): SweepRow[] {
  return frame.rows.filter((r) => r.status === "ok");
}
