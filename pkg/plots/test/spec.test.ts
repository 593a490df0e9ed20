import { describe, expect, it } from "vitest";

import { validateSpec } from "../src/spec.js";

const good = {
  kind: "sweep",
  inputs: ["runs/sweep.csv"],
  output: "runs/figures/sweep.svg",
  title: "A sweep",
};

describe("validateSpec", () => {
  it("accepts a complete spec and returns it typed", () => {
    const spec = validateSpec({ ...good, seriesLabels: ["a", "b"] }, "t");
    expect(spec.kind).toBe("sweep");
    expect(spec.seriesLabels).toEqual(["a", "b"]);
  });

  it("rejects non-objects", () => {
    expect(() => validateSpec([1, 2], "t")).toThrow(/JSON object/);
    expect(() => validateSpec("sweep", "t")).toThrow(/JSON object/);
  });

  it("rejects unknown kinds, naming the options", () => {
    expect(() => validateSpec({ ...good, kind: "pie" }, "t")).toThrow(/kind must be one of/);
  });

  it("rejects empty or non-string inputs", () => {
    expect(() => validateSpec({ ...good, inputs: [] }, "t")).toThrow(/non-empty/);
    expect(() => validateSpec({ ...good, inputs: [3] }, "t")).toThrow(/non-empty/);
  });

  it("pins the input arity per kind", () => {
    expect(() =>
      validateSpec({ ...good, inputs: ["a.csv", "b.csv"] }, "t")
    ).toThrow(/exactly one input/);
    expect(() =>
      validateSpec({ ...good, kind: "state-city", inputs: ["a.csv"] }, "t")
    ).toThrow(/exactly two inputs/);
    const multi = validateSpec(
      { ...good, kind: "training-curves", inputs: ["a.csv", "b.csv"] },
      "t"
    );
    expect(multi.inputs).toHaveLength(2);
  });

  it("requires an svg output path and a title", () => {
    expect(() => validateSpec({ ...good, output: "fig.png" }, "t")).toThrow(/\.svg/);
    expect(() => validateSpec({ ...good, title: "" }, "t")).toThrow(/title/);
  });

  it("flags unknown fields and reports the source name", () => {
    expect(() => validateSpec({ ...good, colour: "red" }, "myspec.json")).toThrow(
      /myspec\.json: unknown field colour/
    );
  });
});
