/**
 * CLI: plot --kind decay|energy|profiles|residuals --in RUN_DIR --out FILE.svg
 *
 * Reads the run directory produced by the simulation package and writes one
 * SVG figure. Inputs are never modified.
 */

import { readFileSync, readdirSync, writeFileSync, existsSync } from "node:fs";
import { join } from "node:path";
import { FigureInputs, FigureKind, renderFigure } from "./figures.js";

const KINDS: FigureKind[] = ["decay", "energy", "profiles", "residuals"];

export function parseArgs(argv: string[]): { kind: FigureKind; inDir: string; out: string } {
  if (argv[0] !== "plot") {
    throw new Error(`usage: plot --kind KIND --in DIR --out FILE (got "${argv[0] ?? ""}")`);
  }
  const opts = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key.startsWith("--") || value === undefined) {
      throw new Error(`malformed option "${key}"`);
    }
    opts.set(key.slice(2), value);
  }
  const kind = opts.get("kind") as FigureKind | undefined;
  const inDir = opts.get("in");
  const out = opts.get("out");
  if (!kind || !KINDS.includes(kind)) {
    throw new Error(`--kind must be one of ${KINDS.join(", ")}`);
  }
  if (!inDir || !out) {
    throw new Error("--in DIR and --out FILE are required");
  }
  return { kind, inDir, out };
}

export function loadRunDirectory(dir: string): FigureInputs {
  const inputs: FigureInputs = {};
  const diag = join(dir, "diagnostics.csv");
  if (existsSync(diag)) {
    inputs.diagnostics = readFileSync(diag, "utf-8");
  }
  const meta = join(dir, "meta.txt");
  if (existsSync(meta)) {
    inputs.meta = readFileSync(meta, "utf-8");
  }
  inputs.profiles = readdirSync(dir)
    .filter((name) => /^profile_.*\.csv$/.test(name))
    .sort()
    .map((name) => ({ name: name.replace(/\.csv$/, ""), text: readFileSync(join(dir, name), "utf-8") }));
  return inputs;
}

export function main(argv: string[]): number {
  try {
    const { kind, inDir, out } = parseArgs(argv);
    const inputs = loadRunDirectory(inDir);
    const svg = renderFigure(kind, inputs);
    writeFileSync(out, svg, "utf-8");
    console.log(`wrote ${out}`);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 2;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
