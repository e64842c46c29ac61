import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { cpSync, existsSync, mkdtempSync, readFileSync, rmSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { fileURLToPath } from "url";
import { dirname, join } from "path";

import { main } from "../src/cli.js";

const here = dirname(fileURLToPath(import.meta.url));
const FIXTURES = join(here, "fixtures");

let workDir: string;

beforeEach(() => {
  workDir = mkdtempSync(join(tmpdir(), "plots-"));
  vi.spyOn(console, "log").mockImplementation(() => {});
  vi.spyOn(console, "error").mockImplementation(() => {});
});

afterEach(() => {
  rmSync(workDir, { recursive: true, force: true });
  vi.restoreAllMocks();
});

const FIGURES = [
  "fig1_level_trace.svg",
  "fig2_level_diagnostics.svg",
  "fig3_log_likelihood_weights.svg",
];

describe("plots command", () => {
  it("writes the three figures", () => {
    const out = join(workDir, "figs");
    const code = main(["--in", join(FIXTURES, "straightline"), "--out", out]);
    expect(code).toBe(0);
    for (const name of FIGURES) {
      expect(existsSync(join(out, name))).toBe(true);
    }
  });

  it("re-running produces identical bytes", () => {
    const a = join(workDir, "a");
    const b = join(workDir, "b");
    expect(main(["--in", join(FIXTURES, "gaussian"), "--out", a])).toBe(0);
    expect(main(["--in", join(FIXTURES, "gaussian"), "--out", b])).toBe(0);
    for (const name of FIGURES) {
      expect(readFileSync(join(a, name), "utf8")).toBe(
        readFileSync(join(b, name), "utf8"),
      );
    }
  });

  it("fails naming a missing input, writing nothing", () => {
    const input = join(workDir, "run");
    cpSync(join(FIXTURES, "straightline"), input, { recursive: true });
    rmSync(join(input, "weights.csv"));
    const out = join(workDir, "figs");
    const code = main(["--in", input, "--out", out]);
    expect(code).toBe(1);
    const message = vi.mocked(console.error).mock.calls.flat().join(" ");
    expect(message).toContain("weights.csv");
    for (const name of FIGURES) {
      expect(existsSync(join(out, name))).toBe(false);
    }
  });

  it("fails on an empty trace without partial output", () => {
    const input = join(workDir, "run");
    cpSync(join(FIXTURES, "straightline"), input, { recursive: true });
    writeFileSync(join(input, "trace.csv"), "");
    const out = join(workDir, "figs");
    expect(main(["--in", input, "--out", out])).toBe(1);
    for (const name of FIGURES) {
      expect(existsSync(join(out, name))).toBe(false);
    }
  });

  it("rejects unknown arguments with usage", () => {
    expect(main(["--frobnicate"])).toBe(2);
  });
});
