/**
 * Hand-rolled SVG chart scaffolding: a margined frame with linear axes,
 * plus the handful of marks the figures need (lines, points, error bars,
 * a legend). Everything returns plain strings.
 */

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const WIDTH = 720;
export const HEIGHT = 480;
export const MARGIN: Margin = { top: 48, right: 24, bottom: 56, left: 64 };

export const PALETTE = [
  "#1f6f8b",
  "#c4502e",
  "#5a8a3c",
  "#7a4fa3",
  "#b0852f",
  "#51707c",
];

export type Scale = (value: number) => number;

export function linearScale(
  domainMin: number,
  domainMax: number,
  rangeMin: number,
  rangeMax: number
): Scale {
  const span = domainMax - domainMin || 1;
  return (value) => rangeMin + ((value - domainMin) / span) * (rangeMax - rangeMin);
}

/** Pad a [min, max] domain by a fraction on both sides. */
export function padDomain(min: number, max: number, frac = 0.05): [number, number] {
  const pad = (max - min || 1) * frac;
  return [min - pad, max + pad];
}

export function escapeText(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

export function ticks(min: number, max: number, count = 6): number[] {
  const rawStep = (max - min) / Math.max(count, 1);
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const step = [1, 2, 2.5, 5, 10].map((s) => s * power).find((s) => s >= rawStep)!;
  const start = Math.ceil(min / step) * step;
  const out: number[] = [];
  for (let v = start; v <= max + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : Number(v.toPrecision(12)));
  }
  return out;
}

const fmt = (v: number) => (Math.abs(v) >= 1000 ? v.toExponential(1) : `${v}`);

export interface FrameOpts {
  title: string;
  xLabel: string;
  yLabel: string;
  xDomain: [number, number];
  yDomain: [number, number];
}

export interface Frame {
  x: Scale;
  y: Scale;
  body: string[];
  opts: FrameOpts;
}

/** Start a chart: scales plus the axes/grid/labels already rendered. */
export function makeFrame(opts: FrameOpts): Frame {
  const x = linearScale(opts.xDomain[0], opts.xDomain[1], MARGIN.left, WIDTH - MARGIN.right);
  const y = linearScale(opts.yDomain[0], opts.yDomain[1], HEIGHT - MARGIN.bottom, MARGIN.top);
  const body: string[] = [];

  body.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  for (const t of ticks(opts.yDomain[0], opts.yDomain[1])) {
    const py = y(t);
    body.push(
      `<line x1="${MARGIN.left}" y1="${py.toFixed(1)}" x2="${WIDTH - MARGIN.right}" ` +
        `y2="${py.toFixed(1)}" stroke="#e4e4e4"/>`,
      `<text x="${MARGIN.left - 8}" y="${(py + 4).toFixed(1)}" text-anchor="end" ` +
        `font-size="12">${fmt(t)}</text>`
    );
  }
  for (const t of ticks(opts.xDomain[0], opts.xDomain[1])) {
    const px = x(t);
    body.push(
      `<line x1="${px.toFixed(1)}" y1="${HEIGHT - MARGIN.bottom}" x2="${px.toFixed(1)}" ` +
        `y2="${HEIGHT - MARGIN.bottom + 5}" stroke="#444"/>`,
      `<text x="${px.toFixed(1)}" y="${HEIGHT - MARGIN.bottom + 20}" text-anchor="middle" ` +
        `font-size="12">${fmt(t)}</text>`
    );
  }
  body.push(
    `<line x1="${MARGIN.left}" y1="${HEIGHT - MARGIN.bottom}" x2="${WIDTH - MARGIN.right}" ` +
      `y2="${HEIGHT - MARGIN.bottom}" stroke="#444"/>`,
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" ` +
      `y2="${HEIGHT - MARGIN.bottom}" stroke="#444"/>`,
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16" ` +
      `font-weight="bold">${escapeText(opts.title)}</text>`,
    `<text x="${WIDTH / 2}" y="${HEIGHT - 12}" text-anchor="middle" ` +
      `font-size="13">${escapeText(opts.xLabel)}</text>`,
    `<text x="18" y="${HEIGHT / 2}" text-anchor="middle" font-size="13" ` +
      `transform="rotate(-90 18 ${HEIGHT / 2})">${escapeText(opts.yLabel)}</text>`
  );
  return { x, y, body, opts };
}

export interface LineOpts {
  color: string;
  width?: number;
  dash?: string;
}

export function addLine(frame: Frame, xs: number[], ys: number[], opts: LineOpts): void {
  const points = xs
    .map((vx, i) => `${frame.x(vx).toFixed(1)},${frame.y(ys[i]).toFixed(1)}`)
    .join(" ");
  const dash = opts.dash ? ` stroke-dasharray="${opts.dash}"` : "";
  frame.body.push(
    `<polyline points="${points}" fill="none" stroke="${opts.color}" ` +
      `stroke-width="${opts.width ?? 1.8}"${dash}/>`
  );
}

export function addPoints(frame: Frame, xs: number[], ys: number[], color: string): void {
  for (let i = 0; i < xs.length; i++) {
    frame.body.push(
      `<circle cx="${frame.x(xs[i]).toFixed(1)}" cy="${frame.y(ys[i]).toFixed(1)}" ` +
        `r="3.2" fill="${color}"/>`
    );
  }
}

/** Vertical error bars, value +- err, with small caps. */
export function addErrorBars(
  frame: Frame,
  xs: number[],
  ys: number[],
  errs: number[],
  color: string
): void {
  for (let i = 0; i < xs.length; i++) {
    const px = frame.x(xs[i]);
    const lo = frame.y(ys[i] - errs[i]);
    const hi = frame.y(ys[i] + errs[i]);
    frame.body.push(
      `<line x1="${px.toFixed(1)}" y1="${lo.toFixed(1)}" x2="${px.toFixed(1)}" ` +
        `y2="${hi.toFixed(1)}" stroke="${color}" stroke-width="1.2"/>`,
      `<line x1="${(px - 3).toFixed(1)}" y1="${lo.toFixed(1)}" x2="${(px + 3).toFixed(1)}" ` +
        `y2="${lo.toFixed(1)}" stroke="${color}" stroke-width="1.2"/>`,
      `<line x1="${(px - 3).toFixed(1)}" y1="${hi.toFixed(1)}" x2="${(px + 3).toFixed(1)}" ` +
        `y2="${hi.toFixed(1)}" stroke="${color}" stroke-width="1.2"/>`
    );
  }
}

export interface LegendEntry {
  label: string;
  color: string;
  dash?: string;
}

export function addLegend(frame: Frame, entries: LegendEntry[]): void {
  const x0 = WIDTH - MARGIN.right - 200;
  let y0 = MARGIN.top + 8;
  for (const entry of entries) {
    const dash = entry.dash ? ` stroke-dasharray="${entry.dash}"` : "";
    frame.body.push(
      `<line x1="${x0}" y1="${y0}" x2="${x0 + 26}" y2="${y0}" ` +
        `stroke="${entry.color}" stroke-width="2"${dash}/>`,
      `<text x="${x0 + 32}" y="${y0 + 4}" font-size="12">${escapeText(entry.label)}</text>`
    );
    y0 += 18;
  }
}

export function finishSvg(body: string[], width = WIDTH, height = HEIGHT): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
    `font-family="Helvetica, Arial, sans-serif">\n` +
    body.join("\n") +
    "\n</svg>\n"
  );
}
