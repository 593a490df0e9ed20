import { describe, expect, it } from "vitest";

import { num, parseCsv } from "../src/csv.js";

describe("parseCsv", () => {
  it("reads a header and rows into records", () => {
    const table = parseCsv("p,mean\n0.1,0.97\n0.2,0.95\n");
    expect(table.columns).toEqual(["p", "mean"]);
    expect(table.rows).toEqual([
      { p: "0.1", mean: "0.97" },
      { p: "0.2", mean: "0.95" },
    ]);
  });

  it("tolerates trailing newlines and CR line ends", () => {
    const table = parseCsv("a,b\r\n1,2\r\n");
    expect(table.rows).toEqual([{ a: "1", b: "2" }]);
  });

  it("keeps empty cells as empty strings", () => {
    const table = parseCsv("a,b\n1,\n");
    expect(table.rows[0].b).toBe("");
  });

  it("rejects ragged rows with the row number", () => {
    expect(() => parseCsv("a,b\n1,2,3\n")).toThrow(/row 1 has 3 cells/);
  });

  it("rejects an empty file", () => {
    expect(() => parseCsv("")).toThrow(/empty table/);
  });
});

describe("num", () => {
  it("parses numeric cells", () => {
    expect(num({ p: "0.25" }, "p")).toBe(0.25);
  });

  it("names the offending column for non-numeric cells", () => {
    expect(() => num({ p: "abc" }, "p")).toThrow(/column p holds "abc"/);
  });

  it("rejects missing columns", () => {
    expect(() => num({ p: "1" }, "q")).toThrow(/missing column q/);
  });

  it("rejects empty cells rather than coercing them to zero", () => {
    expect(() => num({ p: "" }, "p")).toThrow(/column p/);
  });
});
