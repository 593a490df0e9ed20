/**
 * Render figure specs to SVG files.
 *
 * Usage, from the repository root (paths inside specs are cwd-relative):
 *
 *   node plots/dist/main.js plots/specs/sweep_qdc_212.json ...
 *   node plots/dist/main.js --kind sweep --input runs/sweep_qdc_212/sweep.csv \
 *       --output runs/figures/sweep.svg --title "Robustness sweep"
 */

import { mkdirSync, readFileSync, writeFileSync } from "fs";
import path from "path";

import { gateNoise, qssFailure, stateCity, sweep, trainingCurves } from "./charts.js";
import { Table, parseCsv } from "./csv.js";
import { FigureSpec, KINDS, validateSpec } from "./spec.js";

function loadTable(file: string): Table {
  return parseCsv(readFileSync(file, "utf-8"));
}

export function render(spec: FigureSpec): string {
  const labels = {
    title: spec.title,
    xLabel: spec.xLabel,
    yLabel: spec.yLabel,
    seriesLabels: spec.seriesLabels,
  };
  const tables = spec.inputs.map(loadTable);
  let svg: string;
  switch (spec.kind) {
    case "training-curves":
      svg = trainingCurves(
        tables,
        spec.inputs.map((file) => path.basename(file, ".csv")),
        labels
      );
      break;
    case "sweep":
      svg = sweep(tables[0], labels);
      break;
    case "gate-noise":
      svg = gateNoise(tables[0], labels);
      break;
    case "qss":
      svg = qssFailure(tables[0], labels);
      break;
    case "state-city":
      svg = stateCity(tables[0], tables[1], labels);
      break;
  }
  mkdirSync(path.dirname(spec.output), { recursive: true });
  writeFileSync(spec.output, svg);
  return spec.output;
}

interface Flags {
  [name: string]: string;
}

function parseFlags(args: string[]): Flags {
  const flags: Flags = {};
  for (let i = 0; i < args.length; i += 2) {
    if (!args[i].startsWith("--") || i + 1 >= args.length) {
      throw new Error(`expected --name value pairs, got ${args[i]}`);
    }
    flags[args[i].slice(2)] = args[i + 1];
  }
  return flags;
}

function specFromFlags(flags: Flags): FigureSpec {
  const doc: Record<string, unknown> = {
    kind: flags.kind,
    inputs: flags.input?.split(","),
    output: flags.output,
    title: flags.title,
  };
  if (flags["x-label"]) doc.xLabel = flags["x-label"];
  if (flags["y-label"]) doc.yLabel = flags["y-label"];
  if (flags["series-labels"]) doc.seriesLabels = flags["series-labels"].split(",");
  return validateSpec(doc, "flags");
}

export function main(args: string[]): number {
  if (args.length === 0) {
    console.error(
      `usage: main.js SPEC.json [SPEC.json ...]\n` +
        `   or: main.js --kind {${KINDS.join("|")}} --input T.csv[,T2.csv] ` +
        `--output F.svg --title TEXT [--x-label TEXT] [--y-label TEXT] ` +
        `[--series-labels A,B]`
    );
    return 2;
  }
  try {
    const specs = args[0].startsWith("--")
      ? [specFromFlags(parseFlags(args))]
      : args.map((file) =>
          validateSpec(JSON.parse(readFileSync(file, "utf-8")), file)
        );
    for (const spec of specs) {
      console.log(`rendered ${render(spec)}`);
    }
    return 0;
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 1;
  }
}

if (process.argv[1] && path.resolve(process.argv[1]) === path.resolve(new URL(import.meta.url).pathname)) {
  process.exit(main(process.argv.slice(2)));
}
