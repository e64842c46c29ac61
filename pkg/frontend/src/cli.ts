#!/usr/bin/env node
/* plots --in <run dir> --out <figure dir>
 *
 * Reads trace.csv, levels_diag.csv, and weights.csv from the run
 * directory and writes the three diagnostic figures as SVG. All inputs
 * are validated before anything is written, so failures leave no partial
 * output. */

import { mkdirSync, writeFileSync } from "fs";
import { join } from "path";

import { loadBundle } from "./csv.js";
import { renderAll } from "./figures.js";

export function main(argv: string[]): number {
  let inDir = ".";
  let outDir = ".";
  for (let i = 0; i < argv.length; i++) {
    if (argv[i] === "--in" && i + 1 < argv.length) {
      inDir = argv[++i];
    } else if (argv[i] === "--out" && i + 1 < argv.length) {
      outDir = argv[++i];
    } else {
      console.error(`unknown argument: ${argv[i]}`);
      console.error("usage: plots --in <run dir> --out <figure dir>");
      return 2;
    }
  }
  let figures;
  try {
    figures = renderAll(loadBundle(inDir));
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
  mkdirSync(outDir, { recursive: true });
  for (const [name, svg] of Object.entries(figures)) {
    writeFileSync(join(outDir, name), svg);
    console.log(`wrote ${join(outDir, name)}`);
  }
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
