/* The three diagnostic figures.
 *
 * Figure 1: which level each saved particle occupied, over time. Healthy
 * runs trend upward while levels are being built, then diffuse across the
 * whole ladder.
 *
 * Figure 2: per-level compression (log mass difference between adjacent
 * levels, nominally -1) and the Metropolis acceptance fraction per level.
 *
 * Figure 3: the log-likelihood curve against enclosed prior mass, and the
 * posterior weight of each saved particle. A converged run shows a clear
 * interior weight peak; a peak pinned at the left edge means the run
 * needed more levels. */

import { DiagnosticsBundle, column } from "./csv.js";
import {
  Frame,
  axes,
  document,
  dots,
  hline,
  polyline,
  range,
} from "./svg.js";

const WIDTH = 680;
const PANEL_HEIGHT = 300;
const MARGIN = { left: 70, right: 20, top: 24, bottom: 48 };

function frame(top: number, xr: [number, number], yr: [number, number]): Frame {
  return {
    x0: MARGIN.left,
    y0: top + MARGIN.top,
    width: WIDTH - MARGIN.left - MARGIN.right,
    height: PANEL_HEIGHT - MARGIN.top - MARGIN.bottom,
    xMin: xr[0],
    xMax: xr[1],
    yMin: yr[0],
    yMax: yr[1],
  };
}

const LINE = "stroke:#1f6fb4;stroke-width:1";
const DOT = "fill:#1f6fb4";
const REFERENCE = "stroke:#b0b0b0;stroke-dasharray:4 3";

export function renderLevelTrace(bundle: DiagnosticsBundle): string {
  const saves = column(bundle.trace, "save_index");
  const levels = column(bundle.trace, "level");
  const f = frame(0, range(saves), range(levels));
  const body = [
    axes(f, "save index", "level"),
    dots(saves, levels, f, 1.2, DOT),
  ].join("\n");
  return document(WIDTH, PANEL_HEIGHT, body);
}

export function renderLevelDiagnostics(bundle: DiagnosticsBundle): string {
  const level = column(bundle.levels, "level");
  const delta = column(bundle.levels, "delta_log_x");
  const acceptance = column(bundle.levels, "acceptance");
  const xr = range(level);
  const [dLo, dHi] = range(delta);
  const top = frame(0, xr, [Math.min(dLo, -1.5), Math.max(dHi, 0)]);
  const bottom = frame(PANEL_HEIGHT, xr, [0, 1]);
  const body = [
    axes(top, "level", "delta log(X)"),
    hline(top, -1, REFERENCE),
    polyline(level, delta, top, LINE),
    dots(level, delta, top, 2, DOT),
    axes(bottom, "level", "acceptance fraction"),
    polyline(level, acceptance, bottom, LINE),
    dots(level, acceptance, bottom, 2, DOT),
  ].join("\n");
  return document(WIDTH, 2 * PANEL_HEIGHT, body);
}

export function weightPeakIndex(bundle: DiagnosticsBundle): number {
  const w = column(bundle.weights, "posterior_weight");
  let best = 0;
  for (let i = 1; i < w.length; i++) {
    if (w[i] > w[best]) best = i;
  }
  return best;
}

export function renderWeightCurve(bundle: DiagnosticsBundle): string {
  const logX = column(bundle.weights, "log_x");
  const logL = column(bundle.weights, "log_l");
  const weight = column(bundle.weights, "posterior_weight");
  const xr = range(logX);
  const finiteL = logL.filter((v) => Number.isFinite(v));
  const top = frame(0, xr, range(finiteL));
  const bottom = frame(PANEL_HEIGHT, xr, [0, range(weight)[1]]);
  const peak = weightPeakIndex(bundle);
  const body = [
    axes(top, "log(X)", "log likelihood"),
    polyline(logX, logL, top, LINE),
    axes(bottom, "log(X)", "posterior weight"),
    polyline(logX, weight, bottom, LINE),
    dots([logX[peak]], [weight[peak]], bottom, 3, "fill:#d9541e"),
  ].join("\n");
  return document(WIDTH, 2 * PANEL_HEIGHT, body);
}

export interface RenderedFigures {
  "fig1_level_trace.svg": string;
  "fig2_level_diagnostics.svg": string;
  "fig3_log_likelihood_weights.svg": string;
}

export function renderAll(bundle: DiagnosticsBundle): RenderedFigures {
  return {
    "fig1_level_trace.svg": renderLevelTrace(bundle),
    "fig2_level_diagnostics.svg": renderLevelDiagnostics(bundle),
    "fig3_log_likelihood_weights.svg": renderWeightCurve(bundle),
  };
}
