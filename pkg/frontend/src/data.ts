/**
 * Readers for the run artifacts: diagnostics.csv (numeric table with a fixed
 * header), profile_tNNN.csv snapshots, and the flat key = value meta.txt.
 */

export class MissingColumnError extends Error {
  constructor(column: string, available: string[]) {
    super(`missing column "${column}" (available: ${available.join(", ")})`);
    this.name = "MissingColumnError";
  }
}

export class EmptySeriesError extends Error {
  constructor(what: string) {
    super(`empty series: ${what}`);
    this.name = "EmptySeriesError";
  }
}

export interface Table {
  columns: string[];
  rows: number[][];
}

/** Parse a plain numeric CSV with a header row (no quoting in the format). */
export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new EmptySeriesError("no rows in CSV");
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== columns.length) {
      throw new Error(`row ${i + 1} has ${parts.length} fields, expected ${columns.length}`);
    }
    rows.push(parts.map((p) => {
      const v = Number(p);
      if (!Number.isFinite(v)) {
        throw new Error(`non-finite value "${p}" in row ${i + 1}`);
      }
      return v;
    }));
  }
  if (rows.length === 0) {
    throw new EmptySeriesError("CSV has a header but no data rows");
  }
  return { columns, rows };
}

export function column(table: Table, name: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new MissingColumnError(name, table.columns);
  }
  return table.rows.map((r) => r[idx]);
}

/** Parse meta.txt: one `key = value` per line; values kept as strings. */
export function parseMeta(text: string): Map<string, string> {
  const out = new Map<string, string>();
  for (const line of text.split(/\r?\n/)) {
    const eq = line.indexOf("=");
    if (eq < 0) continue;
    out.set(line.slice(0, eq).trim(), line.slice(eq + 1).trim());
  }
  return out;
}

export function metaNumber(meta: Map<string, string>, key: string): number | undefined {
  const raw = meta.get(key);
  if (raw === undefined) return undefined;
  const v = Number(raw);
  return Number.isFinite(v) ? v : undefined;
}
