/**
 * The four figure kinds rendered from run artifacts:
 *   decay     - perturbation sup norms vs 1+t, log-log, fitted slope overlay
 *   energy    - energy / dissipation / capillary energy histories
 *   profiles  - field snapshots against the wave ansatz
 *   residuals - ansatz residual norms vs 1+t with the -3/2 and -7/8 reference slopes
 */

import { EmptySeriesError, Table, column, metaNumber, parseCsv, parseMeta } from "./data.js";
import { Scale, extent, linearScale, logScale, padded } from "./scales.js";
import { Panel, Series, svgDocument } from "./svg.js";

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
const WIDTH = 720;
const PANEL_HEIGHT = 300;
const MARGIN = { left: 84, right: 24, top: 40, bottom: 56 };

export interface FigureInputs {
  diagnostics?: string;
  meta?: string;
  profiles?: { name: string; text: string }[];
}

export type FigureKind = "decay" | "energy" | "profiles" | "residuals";

export function renderFigure(kind: FigureKind, inputs: FigureInputs): string {
  switch (kind) {
    case "decay":
      return decayFigure(inputs);
    case "energy":
      return energyFigure(inputs);
    case "profiles":
      return profilesFigure(inputs);
    case "residuals":
      return residualsFigure(inputs);
    default:
      throw new Error(`unknown figure kind "${kind}"`);
  }
}

function needDiagnostics(inputs: FigureInputs): Table {
  if (!inputs.diagnostics) {
    throw new EmptySeriesError("diagnostics.csv is required for this figure");
  }
  return parseCsv(inputs.diagnostics);
}

function positiveSeries(t: number[], y: number[]): { x: number[]; y: number[] } {
  const xs: number[] = [];
  const ys: number[] = [];
  for (let i = 0; i < t.length; i++) {
    if (y[i] > 0) {
      xs.push(1 + t[i]);
      ys.push(y[i]);
    }
  }
  return { x: xs, y: ys };
}

function referenceLine(
  slope: number,
  anchorX: number,
  anchorY: number,
  xDomain: [number, number],
): Series {
  const x: number[] = [];
  const y: number[] = [];
  for (let i = 0; i <= 32; i++) {
    const lx = Math.log10(xDomain[0]) + (i / 32) * (Math.log10(xDomain[1]) - Math.log10(xDomain[0]));
    const vx = Math.pow(10, lx);
    x.push(vx);
    y.push(anchorY * Math.pow(vx / anchorX, slope));
  }
  return { x, y, color: "#888", label: `slope ${slope}`, dash: "6 4" };
}

function logLogFigure(
  title: string,
  seriesNames: string[],
  table: Table,
  meta: Map<string, string>,
  fitKeys: string[],
  referenceSlopes: number[],
): string {
  const t = column(table, "t");
  const series: Series[] = [];
  seriesNames.forEach((name, i) => {
    const pts = positiveSeries(t, column(table, name));
    if (pts.x.length >= 2) {
      series.push({ ...pts, color: PALETTE[i % PALETTE.length], label: name });
    }
  });
  if (series.length === 0) {
    throw new EmptySeriesError(`no positive samples among ${seriesNames.join(", ")}`);
  }
  const xDomain = extent(series.flatMap((s) => s.x));
  const yDomain = extent(series.flatMap((s) => s.y));
  if (xDomain[0] === xDomain[1]) {
    xDomain[1] = xDomain[0] * 10;
  }
  const refs = referenceSlopes.map((slope, i) => {
    const anchor = series[0];
    const k = Math.max(0, Math.floor(anchor.x.length / 4));
    return referenceLine(slope, anchor.x[k], anchor.y[k] * (1.5 + 0.8 * i), xDomain);
  });
  const yAll = padded(extent([yDomain[0], yDomain[1], ...refs.flatMap((r) => [r.y[0], r.y[r.y.length - 1]])]), 0.0);
  const x = logScale(xDomain, [MARGIN.left, WIDTH - MARGIN.right]);
  const y = logScale([Math.max(yAll[0], 1e-300), yAll[1]], [MARGIN.top + PANEL_HEIGHT, MARGIN.top]);
  const panel = new Panel(MARGIN.left, MARGIN.top, WIDTH - MARGIN.left - MARGIN.right, PANEL_HEIGHT, x, y);
  panel.axes("1 + t", "norm", title);
  refs.forEach((r) => panel.line(r));
  series.forEach((s) => panel.line(s));
  panel.legend([...series, ...refs]);
  let row = 0;
  for (const key of fitKeys) {
    const slope = metaNumber(meta, `${key}.slope`);
    if (slope !== undefined) {
      panel.annotate(`fitted ${key.replace("fit.", "")} slope = ${slope.toFixed(3)}`, row++);
    }
  }
  return svgDocument(WIDTH, PANEL_HEIGHT + MARGIN.top + MARGIN.bottom, panel.render());
}

function decayFigure(inputs: FigureInputs): string {
  const table = needDiagnostics(inputs);
  const meta = parseMeta(inputs.meta ?? "");
  return logLogFigure(
    "Perturbation sup-norm decay",
    ["sup_phi", "sup_psi", "sup_zeta"],
    table,
    meta,
    ["fit.sup_phi"],
    [-1.5, -0.875],
  );
}

function residualsFigure(inputs: FigureInputs): string {
  const table = needDiagnostics(inputs);
  const meta = parseMeta(inputs.meta ?? "");
  return logLogFigure(
    "Ansatz residual decay",
    ["r1_sup", "r2_sup", "gh_l1"],
    table,
    meta,
    ["fit.r1_sup", "fit.gh_l1"],
    [-1.5, -0.875],
  );
}

function energyFigure(inputs: FigureInputs): string {
  const table = needDiagnostics(inputs);
  const t = column(table, "t");
  const names = ["energy", "dissipation", "capillary_energy"];
  const series: Series[] = names.map((name, i) => ({
    x: t,
    y: column(table, name),
    color: PALETTE[i % PALETTE.length],
    label: name,
  }));
  const x = linearScale(padded(extent(t)), [MARGIN.left, WIDTH - MARGIN.right]);
  const y = linearScale(
    padded(extent(series.flatMap((s) => s.y).concat([0]))),
    [MARGIN.top + PANEL_HEIGHT, MARGIN.top],
  );
  const panel = new Panel(MARGIN.left, MARGIN.top, WIDTH - MARGIN.left - MARGIN.right, PANEL_HEIGHT, x, y);
  panel.axes("t", "value", "Energy and dissipation");
  series.forEach((s) => panel.line(s));
  panel.legend(series);
  return svgDocument(WIDTH, PANEL_HEIGHT + MARGIN.top + MARGIN.bottom, panel.render());
}

function profilesFigure(inputs: FigureInputs): string {
  const profiles = inputs.profiles ?? [];
  if (profiles.length === 0) {
    throw new EmptySeriesError("no profile_t*.csv snapshots supplied");
  }
  const fields: [string, string][] = [
    ["v", "V"],
    ["u", "U"],
    ["theta", "Theta"],
  ];
  const height = 3 * (PANEL_HEIGHT / 1.6 + MARGIN.top) + MARGIN.bottom;
  const parts: string[] = [];
  fields.forEach(([state, ansatz], row) => {
    const top = MARGIN.top + row * (PANEL_HEIGHT / 1.6 + MARGIN.top);
    const series: Series[] = [];
    let xDomain: [number, number] | undefined;
    let yVals: number[] = [];
    profiles.forEach((p, i) => {
      const table = parseCsv(p.text);
      const xs = column(table, "x");
      const st = column(table, state);
      const an = column(table, ansatz);
      xDomain = xDomain ?? extent(xs);
      yVals = yVals.concat(st, an);
      const color = PALETTE[i % PALETTE.length];
      series.push({ x: xs, y: st, color, label: `${state} (${p.name})` });
      series.push({ x: xs, y: an, color, label: `${ansatz} (${p.name})`, dash: "5 4" });
    });
    if (xDomain === undefined) {
      throw new EmptySeriesError("profile snapshots contained no data");
    }
    const x = linearScale(xDomain, [MARGIN.left, WIDTH - MARGIN.right]);
    const y = linearScale(padded(extent(yVals)), [top + PANEL_HEIGHT / 1.6, top]);
    const panel = new Panel(MARGIN.left, top, WIDTH - MARGIN.left - MARGIN.right, PANEL_HEIGHT / 1.6, x, y);
    panel.axes(row === 2 ? "x" : "", state, row === 0 ? "Fields vs wave ansatz (dashed)" : "");
    series.forEach((s) => panel.line(s));
    if (row === 0) {
      panel.legend(series.filter((_, i) => i % 2 === 0));
    }
    parts.push(panel.render());
  });
  return svgDocument(WIDTH, height, parts.join("\n"));
}
