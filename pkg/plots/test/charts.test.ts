import { describe, expect, it } from "vitest";

import { gateNoise, qssFailure, stateCity, sweep, trainingCurves } from "../src/charts.js";
import { parseCsv } from "../src/csv.js";

const count = (svg: string, needle: string) => svg.split(needle).length - 1;

function trainingTable(fids: number[]) {
  const lines = ["epoch,train_fidelity,val_fidelity,elapsed_seconds"];
  fids.forEach((f, i) => lines.push(`${i + 1},${f},${f - 0.01},${i * 0.5}`));
  return parseCsv(lines.join("\n") + "\n");
}

const labels = { title: "T <series>" };

describe("trainingCurves", () => {
  it("draws one solid and one dashed polyline per log", () => {
    const svg = trainingCurves(
      [trainingTable([0.5, 0.8, 0.95]), trainingTable([0.4, 0.6, 0.9])],
      ["log_a", "log_b"],
      labels
    );
    expect(svg).toMatch(/^<svg /);
    expect(count(svg, "<polyline")).toBe(4);
    expect(count(svg, 'stroke-dasharray="4,3"')).toBeGreaterThanOrEqual(2);
    expect(svg).toContain("log_a");
    expect(svg).toContain("T &lt;series&gt;"); // titles are escaped
  });
});

describe("sweep", () => {
  const table = parseCsv(
    "p,mean_fidelity,std_fidelity,theoretical_fidelity\n" +
      "0.3,0.96,0.02,0.50\n0.1,0.97,0.01,0.84\n"
  );

  it("plots means with error bars plus the reference overlay", () => {
    const svg = sweep(table, labels);
    expect(count(svg, "<polyline")).toBe(2);
    // 2 points x (bar + 2 caps) = 6 error-bar lines beyond the axes/grid
    expect(count(svg, "<circle")).toBe(4);
    expect(svg).toContain("closed form");
  });

  it("sorts rows by p before drawing", () => {
    const svg = sweep(table, labels);
    const first = svg.indexOf("<polyline");
    const points = svg.slice(first, svg.indexOf('"', first + 20));
    const xs = [...points.matchAll(/([\d.]+),[\d.]+/g)].map((m) => Number(m[1]));
    expect(xs).toEqual([...xs].sort((a, b) => a - b));
  });
});

describe("gateNoise", () => {
  it("overlays the raw-state reference as a dashed line", () => {
    const table = parseCsv(
      "sigma,mean_fidelity,std_fidelity,noisy_theoretical_fidelity\n" +
        "0.0,0.96,0.01,0.6175\n0.1,0.7,0.1,0.6175\n"
    );
    const svg = gateNoise(table, labels);
    expect(count(svg, "<polyline")).toBe(2);
    expect(count(svg, 'stroke-dasharray="6,3"')).toBeGreaterThanOrEqual(1);
  });
});

describe("qssFailure", () => {
  it("draws one series per mode plus the closed-form curve", () => {
    const table = parseCsv(
      "p,rounds,valid_rounds,empirical_failure_rate,theoretical_gamma,mode\n" +
        "0.0,100,52,0.0,0.0,clean\n" +
        "0.2,100,47,0.24,0.244,noisy\n" +
        "0.4,100,51,0.40,0.392,noisy\n" +
        "0.2,100,49,0.05,0.244,denoised\n" +
        "0.4,100,50,0.06,0.392,denoised\n"
    );
    const svg = qssFailure(table, labels);
    // closed form + noisy + denoised lines; clean is a single point
    expect(count(svg, "<polyline")).toBe(3);
    expect(count(svg, "<circle")).toBe(5);
    expect(svg).toContain("noisy");
    expect(svg).toContain("denoised");
  });
});

describe("stateCity", () => {
  function cityTable(n: number, peak: number) {
    const lines = ["row,col,real,imag"];
    for (let i = 0; i < n; i++) {
      for (let j = 0; j < n; j++) {
        lines.push(`${i},${j},${i === j ? peak : 0.001},0.0`);
      }
    }
    return parseCsv(lines.join("\n") + "\n");
  }

  it("renders a bar top per matrix entry in both panels", () => {
    const svg = stateCity(cityTable(4, 0.5), cityTable(4, 0.25), labels);
    expect(count(svg, "<polygon")).toBeGreaterThanOrEqual(32);
    expect(svg).toContain("noisy input");
    expect(svg).toContain("denoised output");
    expect(svg).toContain("|000⟩");
  });

  it("renders tall bars with side faces and flat ones without", () => {
    const tall = stateCity(cityTable(2, 0.5), cityTable(2, 0.5), labels);
    const flat = stateCity(cityTable(2, 0.0), cityTable(2, 0.0), labels);
    expect(count(tall, "<polygon")).toBeGreaterThan(count(flat, "<polygon"));
  });
});
