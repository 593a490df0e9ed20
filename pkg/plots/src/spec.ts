/**
 * Figure specs: a small JSON description saying which kind of figure to
 * draw, which tables feed it, and where the SVG goes.
 */

export const KINDS = [
  "training-curves",
  "sweep",
  "gate-noise",
  "qss",
  "state-city",
] as const;

export type FigureKind = (typeof KINDS)[number];

export interface FigureSpec {
  kind: FigureKind;
  inputs: string[];
  output: string;
  title: string;
  xLabel?: string;
  yLabel?: string;
  seriesLabels?: string[];
}

const isStringArray = (value: unknown): value is string[] =>
  Array.isArray(value) && value.every((item) => typeof item === "string");

/** Validate a parsed JSON document into a FigureSpec, or throw. */
export function validateSpec(doc: unknown, source: string): FigureSpec {
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new Error(`${source}: figure spec must be a JSON object`);
  }
  const record = doc as Record<string, unknown>;
  const problems: string[] = [];

  if (!KINDS.includes(record.kind as FigureKind)) {
    problems.push(`kind must be one of ${KINDS.join(", ")}`);
  }
  if (!isStringArray(record.inputs) || record.inputs.length === 0) {
    problems.push("inputs must be a non-empty array of table paths");
  } else if (record.kind === "state-city" && record.inputs.length !== 2) {
    problems.push("state-city takes exactly two inputs (noisy, denoised)");
  } else if (
    ["sweep", "gate-noise", "qss"].includes(record.kind as string) &&
    record.inputs.length !== 1
  ) {
    problems.push(`${record.kind} takes exactly one input table`);
  }
  if (typeof record.output !== "string" || !record.output.endsWith(".svg")) {
    problems.push("output must be an .svg path");
  }
  if (typeof record.title !== "string" || record.title.length === 0) {
    problems.push("title must be a non-empty string");
  }
  for (const key of ["xLabel", "yLabel"]) {
    if (key in record && typeof record[key] !== "string") {
      problems.push(`${key} must be a string`);
    }
  }
  if ("seriesLabels" in record && !isStringArray(record.seriesLabels)) {
    problems.push("seriesLabels must be an array of strings");
  }
  for (const key of Object.keys(record)) {
    if (!["kind", "inputs", "output", "title", "xLabel", "yLabel", "seriesLabels"].includes(key)) {
      problems.push(`unknown field ${key}`);
    }
  }
  if (problems.length > 0) {
    throw new Error(`${source}: ${problems.join("; ")}`);
  }
  return record as unknown as FigureSpec;
}
