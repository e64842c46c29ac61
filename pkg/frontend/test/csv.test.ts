import { describe, expect, it } from "vitest";
import { fileURLToPath } from "url";
import { dirname, join } from "path";

import { column, loadBundle, parseCsv } from "../src/csv.js";

const here = dirname(fileURLToPath(import.meta.url));
const FIXTURES = join(here, "fixtures");

describe("parseCsv", () => {
  it("parses header and numeric rows", () => {
    const t = parseCsv("a,b\n1,2\n3,4.5\n", "t.csv");
    expect(t.header).toEqual(["a", "b"]);
    expect(t.rows).toEqual([
      [1, 2],
      [3, 4.5],
    ]);
    expect(column(t, "b")).toEqual([2, 4.5]);
  });

  it("rejects empty files and header-only files", () => {
    expect(() => parseCsv("", "t.csv")).toThrow(/empty/);
    expect(() => parseCsv("a,b\n", "t.csv")).toThrow(/no data rows/);
  });

  it("rejects ragged and non-numeric rows", () => {
    expect(() => parseCsv("a,b\n1\n", "t.csv")).toThrow(/row 2/);
    expect(() => parseCsv("a,b\n1,x\n", "t.csv")).toThrow(/not numeric/);
  });
});

describe("loadBundle", () => {
  it("loads a complete fixture bundle", () => {
    const bundle = loadBundle(join(FIXTURES, "straightline"));
    expect(bundle.trace.header).toEqual(["save_index", "level"]);
    expect(bundle.levels.rows.length).toBeGreaterThan(5);
    expect(bundle.weights.rows.length).toBe(bundle.trace.rows.length);
  });

  it("names the missing file", () => {
    expect(() => loadBundle(join(FIXTURES, "nowhere"))).toThrow(/trace\.csv/);
  });
});
