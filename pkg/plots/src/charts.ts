/**
 * The five figure kinds, each a pure function from parsed tables to an SVG
 * string: fidelity training curves, noise-strength sweeps with the closed
 * form overlaid, coefficient-noise sweeps, secret-sharing failure curves,
 * and city plots of density-matrix entries.
 */

import { Table, num } from "./csv.js";
import {
  Frame,
  PALETTE,
  addErrorBars,
  addLegend,
  addLine,
  addPoints,
  escapeText,
  finishSvg,
  makeFrame,
  padDomain,
} from "./svg.js";

export interface Labels {
  title: string;
  xLabel?: string;
  yLabel?: string;
  seriesLabels?: string[];
}

const seriesName = (labels: Labels, i: number, fallback: string) =>
  labels.seriesLabels?.[i] ?? fallback;

export function trainingCurves(tables: Table[], sources: string[], labels: Labels): string {
  let maxEpoch = 1;
  let minFid = 1;
  for (const table of tables) {
    for (const row of table.rows) {
      maxEpoch = Math.max(maxEpoch, num(row, "epoch"));
      minFid = Math.min(minFid, num(row, "train_fidelity"), num(row, "val_fidelity"));
    }
  }
  const frame = makeFrame({
    title: labels.title,
    xLabel: labels.xLabel ?? "epoch",
    yLabel: labels.yLabel ?? "fidelity with the clean state",
    xDomain: [1, maxEpoch],
    yDomain: padDomain(minFid, 1),
  });
  const legend = [];
  for (let i = 0; i < tables.length; i++) {
    const color = PALETTE[i % PALETTE.length];
    const epochs = tables[i].rows.map((row) => num(row, "epoch"));
    addLine(frame, epochs, tables[i].rows.map((row) => num(row, "train_fidelity")), {
      color,
    });
    addLine(frame, epochs, tables[i].rows.map((row) => num(row, "val_fidelity")), {
      color,
      width: 1.1,
      dash: "4,3",
    });
    legend.push({ label: seriesName(labels, i, sources[i]), color });
  }
  if (tables.length > 0) {
    legend.push({ label: "validation (dashed)", color: "#888", dash: "4,3" });
  }
  addLegend(frame, legend);
  return finishSvg(frame.body);
}

function sweepFrame(labels: Labels, xs: number[], means: number[], stds: number[],
                    reference: number[], xLabel: string): Frame {
  const lows = means.map((m, i) => m - stds[i]);
  const highs = means.map((m, i) => m + stds[i]);
  const all = [...lows, ...highs, ...reference];
  return makeFrame({
    title: labels.title,
    xLabel: labels.xLabel ?? xLabel,
    yLabel: labels.yLabel ?? "fidelity with the clean state",
    xDomain: padDomain(Math.min(...xs), Math.max(...xs)),
    yDomain: padDomain(Math.min(...all), Math.max(...all)),
  });
}

export function sweep(table: Table, labels: Labels): string {
  const rows = [...table.rows].sort((a, b) => num(a, "p") - num(b, "p"));
  const xs = rows.map((row) => num(row, "p"));
  const means = rows.map((row) => num(row, "mean_fidelity"));
  const stds = rows.map((row) => num(row, "std_fidelity"));
  const reference = rows.map((row) => num(row, "theoretical_fidelity"));

  const frame = sweepFrame(labels, xs, means, stds, reference, "noise strength p");
  addLine(frame, xs, reference, { color: PALETTE[1], dash: "6,3" });
  addPoints(frame, xs, reference, PALETTE[1]);
  addLine(frame, xs, means, { color: PALETTE[0] });
  addErrorBars(frame, xs, means, stds, PALETTE[0]);
  addPoints(frame, xs, means, PALETTE[0]);
  addLegend(frame, [
    { label: seriesName(labels, 0, "denoised output"), color: PALETTE[0] },
    { label: seriesName(labels, 1, "noisy input, closed form"), color: PALETTE[1], dash: "6,3" },
  ]);
  return finishSvg(frame.body);
}

export function gateNoise(table: Table, labels: Labels): string {
  const rows = [...table.rows].sort((a, b) => num(a, "sigma") - num(b, "sigma"));
  const xs = rows.map((row) => num(row, "sigma"));
  const means = rows.map((row) => num(row, "mean_fidelity"));
  const stds = rows.map((row) => num(row, "std_fidelity"));
  const reference = rows.map((row) => num(row, "noisy_theoretical_fidelity"));

  const frame = sweepFrame(labels, xs, means, stds, reference, "coefficient noise sigma");
  addLine(frame, xs, reference, { color: PALETTE[1], dash: "6,3" });
  addLine(frame, xs, means, { color: PALETTE[0] });
  addErrorBars(frame, xs, means, stds, PALETTE[0]);
  addPoints(frame, xs, means, PALETTE[0]);
  addLegend(frame, [
    { label: seriesName(labels, 0, "denoised, perturbed network"), color: PALETTE[0] },
    { label: seriesName(labels, 1, "raw noisy state"), color: PALETTE[1], dash: "6,3" },
  ]);
  return finishSvg(frame.body);
}

export function qssFailure(table: Table, labels: Labels): string {
  const modes: string[] = [];
  for (const row of table.rows) {
    if (!modes.includes(row["mode"])) modes.push(row["mode"]);
  }
  const rates = table.rows.map((row) => num(row, "empirical_failure_rate"));
  const gammas = table.rows.map((row) => num(row, "theoretical_gamma"));
  const ps = table.rows.map((row) => num(row, "p"));

  const frame = makeFrame({
    title: labels.title,
    xLabel: labels.xLabel ?? "noise strength p",
    yLabel: labels.yLabel ?? "failure rate of the inferred bit",
    xDomain: padDomain(Math.min(...ps), Math.max(...ps)),
    yDomain: padDomain(0, Math.max(...rates, ...gammas)),
  });

  // the closed form is mode-independent; one dashed curve through the grid
  const byP = new Map<number, number>();
  table.rows.forEach((row) => byP.set(num(row, "p"), num(row, "theoretical_gamma")));
  const gridP = [...byP.keys()].sort((a, b) => a - b);
  addLine(frame, gridP, gridP.map((p) => byP.get(p)!), { color: "#555", dash: "6,3" });

  const legend = [{ label: "closed form", color: "#555", dash: "6,3" }];
  modes.forEach((mode, i) => {
    const rows = table.rows
      .filter((row) => row["mode"] === mode)
      .sort((a, b) => num(a, "p") - num(b, "p"));
    const xs = rows.map((row) => num(row, "p"));
    const ys = rows.map((row) => num(row, "empirical_failure_rate"));
    const color = PALETTE[i % PALETTE.length];
    if (xs.length > 1) addLine(frame, xs, ys, { color, width: 1.2 });
    addPoints(frame, xs, ys, color);
    legend.push({ label: seriesName(labels, i, mode), color, dash: undefined as any });
  });
  addLegend(frame, legend);
  return finishSvg(frame.body);
}

// city plots: one isometric bar per density-matrix entry, real part as height

const CITY_W = 900;
const CITY_H = 470;
const U = 17; // half-width of a cell diamond
const Z = 220; // pixels per unit of height

interface CityPanel {
  originX: number;
  originY: number;
}

function cityBars(values: number[][], panel: CityPanel): string[] {
  const n = values.length;
  const out: string[] = [];
  for (let depth = 0; depth <= 2 * (n - 1); depth++) {
    for (let i = 0; i < n; i++) {
      const j = depth - i;
      if (j < 0 || j >= n) continue;
      const h = Math.max(values[i][j], 0) * Z; // tiny negative entries render flat
      const sx = panel.originX + (j - i) * U;
      const sy = panel.originY + ((j + i) * U) / 2;
      const v = U / 2;
      const top = [
        [sx, sy - v - h], [sx + U, sy - h], [sx, sy + v - h], [sx - U, sy - h],
      ];
      const pts = (p: number[][]) => p.map(([a, b]) => `${a},${b.toFixed(1)}`).join(" ");
      if (h > 0.5) {
        out.push(
          `<polygon points="${pts([[sx - U, sy], [sx, sy + v], [sx, sy + v - h], [sx - U, sy - h]])}" fill="#9dbcc9"/>`,
          `<polygon points="${pts([[sx, sy + v], [sx + U, sy], [sx + U, sy - h], [sx, sy + v - h]])}" fill="#54778a"/>`
        );
      }
      out.push(`<polygon points="${pts(top)}" fill="#cfe3ec" stroke="#54778a" stroke-width="0.4"/>`);
    }
  }
  return out;
}

function cityLabels(n: number, panel: CityPanel): string[] {
  const out: string[] = [];
  const ket = (k: number) => `|${k.toString(2).padStart(3, "0")}⟩`;
  for (let j = 0; j < n; j++) {
    const sx = panel.originX + (j - (n - 1)) * U;
    const sy = panel.originY + ((j + n - 1) * U) / 2;
    out.push(
      `<text x="${sx - U - 2}" y="${sy + U}" text-anchor="end" font-size="9">${ket(j)}</text>`
    );
  }
  for (let i = 0; i < n; i++) {
    const sx = panel.originX + ((n - 1) - i) * U;
    const sy = panel.originY + ((i + n - 1) * U) / 2;
    out.push(
      `<text x="${sx + U + 2}" y="${sy + U}" font-size="9">${ket(i)}</text>`
    );
  }
  return out;
}

function tableToMatrix(table: Table): number[][] {
  let n = 0;
  for (const row of table.rows) {
    n = Math.max(n, num(row, "row") + 1, num(row, "col") + 1);
  }
  const matrix = Array.from({ length: n }, () => new Array<number>(n).fill(0));
  for (const row of table.rows) {
    matrix[num(row, "row")][num(row, "col")] = num(row, "real");
  }
  return matrix;
}

export function stateCity(noisy: Table, denoised: Table, labels: Labels): string {
  const body: string[] = [`<rect width="${CITY_W}" height="${CITY_H}" fill="white"/>`];
  body.push(
    `<text x="${CITY_W / 2}" y="28" text-anchor="middle" font-size="16" ` +
      `font-weight="bold">${escapeText(labels.title)}</text>`
  );
  const panels: [Table, CityPanel, string][] = [
    [noisy, { originX: 230, originY: 170 }, labels.seriesLabels?.[0] ?? "noisy input"],
    [denoised, { originX: 670, originY: 170 }, labels.seriesLabels?.[1] ?? "denoised output"],
  ];
  for (const [table, panel, caption] of panels) {
    const matrix = tableToMatrix(table);
    body.push(...cityBars(matrix, panel), ...cityLabels(matrix.length, panel));
    body.push(
      `<text x="${panel.originX}" y="${CITY_H - 18}" text-anchor="middle" ` +
        `font-size="13">${escapeText(caption)} (real part)</text>`
    );
  }
  return finishSvg(body, CITY_W, CITY_H);
}
