/**
 * Minimal reader for the simple comma-separated tables the CLI emits:
 * a header row, no quoting, newline-terminated rows.
 */

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

export function parseCsv(text: string): Table {
  const lines = text
    .split("\n")
    .map((line) => (line.endsWith("\r") ? line.slice(0, -1) : line))
    .filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error("empty table");
  }
  const columns = lines[0].split(",");
  const rows = lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new Error(
        `row ${i + 1} has ${cells.length} cells, header has ${columns.length}`
      );
    }
    const row: Record<string, string> = {};
    columns.forEach((name, k) => (row[name] = cells[k]));
    return row;
  });
  return { columns, rows };
}

/** Parse one cell as a finite number, with a readable failure. */
export function num(row: Record<string, string>, column: string): number {
  const cell = row[column];
  if (cell === undefined) {
    throw new Error(`missing column ${column}`);
  }
  if (cell.trim() === "") {
    throw new Error(`column ${column} is empty`);
  }
  const value = Number(cell);
  if (!Number.isFinite(value)) {
    throw new Error(`column ${column} holds ${JSON.stringify(cell)}, not a number`);
  }
  return value;
}
