/** Linear and log10 axis scales with simple tick generation. */

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
  ticks(count?: number): number[];
  kind: "linear" | "log";
}

function niceStep(span: number, count: number): number {
  const raw = span / Math.max(count, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  const nice = norm > 5 ? 10 : norm > 2 ? 5 : norm > 1 ? 2 : 1;
  return nice * mag;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  fn.kind = "linear";
  fn.ticks = (count = 5) => {
    const step = niceStep(Math.abs(span), count);
    const start = Math.ceil(Math.min(d0, d1) / step) * step;
    const out: number[] = [];
    for (let v = start; v <= Math.max(d0, d1) + 1e-12 * Math.abs(span); v += step) {
      out.push(Number(v.toPrecision(12)));
    }
    return out;
  };
  return fn;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) {
    throw new Error(`log scale needs a positive domain, got [${d0}, ${d1}]`);
  }
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const span = l1 - l0 || 1;
  const [r0, r1] = range;
  const fn = ((v: number) => r0 + ((Math.log10(v) - l0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  fn.kind = "log";
  fn.ticks = () => {
    const out: number[] = [];
    for (let e = Math.ceil(Math.min(l0, l1)); e <= Math.floor(Math.max(l0, l1)); e++) {
      out.push(Math.pow(10, e));
    }
    if (out.length === 0) {
      out.push(d0, d1);
    }
    return out;
  };
  return fn;
}

export function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!(Number.isFinite(lo) && Number.isFinite(hi))) {
    throw new Error("cannot take the extent of an empty or non-finite series");
  }
  return [lo, hi];
}

export function padded(e: [number, number], frac = 0.05): [number, number] {
  const span = e[1] - e[0] || Math.abs(e[0]) || 1;
  return [e[0] - frac * span, e[1] + frac * span];
}

export function formatTick(v: number, kind: "linear" | "log"): string {
  if (kind === "log") {
    const e = Math.round(Math.log10(v));
    return `1e${e}`;
  }
  if (v !== 0 && (Math.abs(v) >= 1e4 || Math.abs(v) < 1e-3)) {
    return v.toExponential(1);
  }
  return Number(v.toPrecision(6)).toString();
}
