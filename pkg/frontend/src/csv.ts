/* Reading and validating the diagnostics CSV bundle emitted by a run's
 * postprocess step: trace.csv, levels_diag.csv, weights.csv. */

import { readFileSync } from "fs";
import { join } from "path";

export interface Table {
  header: string[];
  rows: number[][];
}

export interface DiagnosticsBundle {
  trace: Table; // save_index, level
  levels: Table; // level, delta_log_x, acceptance
  weights: Table; // log_x, log_l, posterior_weight
}

export function parseCsv(text: string, name: string): Table {
  const lines = text
    .split("\n")
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error(`${name}: file is empty`);
  }
  const header = lines[0].split(",").map((h) => h.trim());
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== header.length) {
      throw new Error(
        `${name}: row ${i + 1} has ${parts.length} fields, expected ${header.length}`,
      );
    }
    const row = parts.map(Number);
    if (row.some((v) => Number.isNaN(v))) {
      throw new Error(`${name}: row ${i + 1} is not numeric: ${lines[i]}`);
    }
    rows.push(row);
  }
  if (rows.length === 0) {
    throw new Error(`${name}: no data rows`);
  }
  return { header, rows };
}

function loadTable(dir: string, file: string, columns: string[]): Table {
  const path = join(dir, file);
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch {
    throw new Error(`missing input file: ${path}`);
  }
  const table = parseCsv(text, file);
  for (const col of columns) {
    if (!table.header.includes(col)) {
      throw new Error(`${file}: missing column ${col}`);
    }
  }
  return table;
}

export function column(table: Table, name: string): number[] {
  const idx = table.header.indexOf(name);
  return table.rows.map((r) => r[idx]);
}

/* Loads and validates all three files before any figure is rendered, so a
 * broken bundle never produces partial output. */
export function loadBundle(dir: string): DiagnosticsBundle {
  return {
    trace: loadTable(dir, "trace.csv", ["save_index", "level"]),
    levels: loadTable(dir, "levels_diag.csv", ["level", "delta_log_x", "acceptance"]),
    weights: loadTable(dir, "weights.csv", ["log_x", "log_l", "posterior_weight"]),
  };
}
