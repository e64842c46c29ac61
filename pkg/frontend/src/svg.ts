/* Minimal deterministic SVG scene building: fixed style, fixed number
 * formatting, no timestamps, so the same data always yields identical
 * bytes. */

export interface Frame {
  x0: number; // left edge of the plot area, in pixels
  y0: number; // top edge
  width: number;
  height: number;
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

const FONT = "12px sans-serif";

export function fmt(v: number): string {
  if (!Number.isFinite(v)) return "0";
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

export function scaleX(f: Frame, x: number): number {
  const span = f.xMax - f.xMin || 1;
  return f.x0 + ((x - f.xMin) / span) * f.width;
}

export function scaleY(f: Frame, y: number): number {
  const span = f.yMax - f.yMin || 1;
  return f.y0 + f.height - ((y - f.yMin) / span) * f.height;
}

/* Round tick positions covering [lo, hi], at most `count` of them. */
export function ticks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= rawStep) {
      step = m * mag;
      break;
    }
  }
  const out: number[] = [];
  let t = Math.ceil(lo / step) * step;
  while (t <= hi + 1e-9 * step) {
    out.push(Math.abs(t) < step * 1e-9 ? 0 : t);
    t += step;
  }
  return out;
}

export function tickLabel(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 10000 || a < 0.01) return v.toExponential(1);
  return String(Math.round(v * 1000) / 1000);
}

export function polyline(
  xs: number[],
  ys: number[],
  f: Frame,
  style: string,
): string {
  const pts = xs
    .map((x, i) => `${fmt(scaleX(f, x))},${fmt(scaleY(f, ys[i]))}`)
    .join(" ");
  return `<polyline points="${pts}" style="${style}" fill="none"/>`;
}

export function dots(
  xs: number[],
  ys: number[],
  f: Frame,
  radius: number,
  style: string,
): string {
  return xs
    .map(
      (x, i) =>
        `<circle cx="${fmt(scaleX(f, x))}" cy="${fmt(scaleY(f, ys[i]))}" ` +
        `r="${radius}" style="${style}"/>`,
    )
    .join("\n");
}

export function hline(f: Frame, y: number, style: string): string {
  const py = fmt(scaleY(f, y));
  return `<line x1="${fmt(f.x0)}" y1="${py}" x2="${fmt(f.x0 + f.width)}" y2="${py}" style="${style}"/>`;
}

export function axes(f: Frame, xLabel: string, yLabel: string): string {
  const parts: string[] = [];
  const bottom = f.y0 + f.height;
  parts.push(
    `<rect x="${fmt(f.x0)}" y="${fmt(f.y0)}" width="${fmt(f.width)}" ` +
      `height="${fmt(f.height)}" fill="none" stroke="black"/>`,
  );
  for (const t of ticks(f.xMin, f.xMax, 6)) {
    const px = fmt(scaleX(f, t));
    parts.push(
      `<line x1="${px}" y1="${fmt(bottom)}" x2="${px}" y2="${fmt(bottom + 4)}" stroke="black"/>`,
    );
    parts.push(
      `<text x="${px}" y="${fmt(bottom + 16)}" text-anchor="middle" ` +
        `style="font: ${FONT}">${tickLabel(t)}</text>`,
    );
  }
  for (const t of ticks(f.yMin, f.yMax, 5)) {
    const py = fmt(scaleY(f, t));
    parts.push(
      `<line x1="${fmt(f.x0 - 4)}" y1="${py}" x2="${fmt(f.x0)}" y2="${py}" stroke="black"/>`,
    );
    parts.push(
      `<text x="${fmt(f.x0 - 7)}" y="${py}" text-anchor="end" ` +
        `dominant-baseline="middle" style="font: ${FONT}">${tickLabel(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt(f.x0 + f.width / 2)}" y="${fmt(bottom + 32)}" ` +
      `text-anchor="middle" style="font: ${FONT}">${xLabel}</text>`,
  );
  parts.push(
    `<text x="${fmt(f.x0 - 42)}" y="${fmt(f.y0 + f.height / 2)}" ` +
      `text-anchor="middle" style="font: ${FONT}" ` +
      `transform="rotate(-90 ${fmt(f.x0 - 42)} ${fmt(f.y0 + f.height / 2)})">${yLabel}</text>`,
  );
  return parts.join("\n");
}

export function document(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n` +
    body +
    "\n</svg>\n"
  );
}

export function range(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  return [lo, hi];
}
