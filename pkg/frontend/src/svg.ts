/** Minimal SVG panel builder: axes, ticks, polylines, legend, annotations. */

import { Scale, formatTick } from "./scales.js";

const FONT = "12px sans-serif";

export interface Series {
  x: number[];
  y: number[];
  color: string;
  label: string;
  dash?: string;
}

export class Panel {
  private parts: string[] = [];

  constructor(
    readonly left: number,
    readonly top: number,
    readonly width: number,
    readonly height: number,
    readonly xScale: Scale,
    readonly yScale: Scale,
  ) {}

  axes(xLabel: string, yLabel: string, title = ""): void {
    const { left, top, width, height } = this;
    const bottom = top + height;
    const right = left + width;
    this.parts.push(
      `<rect x="${left}" y="${top}" width="${width}" height="${height}" fill="none" stroke="#333"/>`,
    );
    for (const t of this.xScale.ticks()) {
      const px = this.xScale(t);
      if (px < left - 1e-6 || px > right + 1e-6) continue;
      this.parts.push(
        `<line x1="${f(px)}" y1="${bottom}" x2="${f(px)}" y2="${bottom + 4}" stroke="#333"/>`,
        `<text x="${f(px)}" y="${bottom + 16}" text-anchor="middle" style="font:${FONT}">${formatTick(t, this.xScale.kind)}</text>`,
      );
    }
    for (const t of this.yScale.ticks()) {
      const py = this.yScale(t);
      if (py < top - 1e-6 || py > bottom + 1e-6) continue;
      this.parts.push(
        `<line x1="${left - 4}" y1="${f(py)}" x2="${left}" y2="${f(py)}" stroke="#333"/>`,
        `<text x="${left - 6}" y="${f(py) + 4}" text-anchor="end" style="font:${FONT}">${formatTick(t, this.yScale.kind)}</text>`,
      );
    }
    this.parts.push(
      `<text x="${left + width / 2}" y="${bottom + 32}" text-anchor="middle" style="font:${FONT}">${esc(xLabel)}</text>`,
      `<text transform="translate(${left - 48},${top + height / 2}) rotate(-90)" text-anchor="middle" style="font:${FONT}">${esc(yLabel)}</text>`,
    );
    if (title) {
      this.parts.push(
        `<text x="${left + width / 2}" y="${top - 8}" text-anchor="middle" style="font:bold ${FONT}">${esc(title)}</text>`,
      );
    }
  }

  line(s: Series): void {
    const pts: string[] = [];
    for (let i = 0; i < s.x.length; i++) {
      const px = this.xScale(s.x[i]);
      const py = this.yScale(s.y[i]);
      if (Number.isFinite(px) && Number.isFinite(py)) {
        pts.push(`${f(px)},${f(py)}`);
      }
    }
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    this.parts.push(
      `<polyline points="${pts.join(" ")}" fill="none" stroke="${s.color}" stroke-width="1.5"${dash}/>`,
    );
  }

  legend(series: Series[]): void {
    let y = this.top + 14;
    for (const s of series) {
      const x0 = this.left + this.width - 150;
      const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
      this.parts.push(
        `<line x1="${x0}" y1="${y - 4}" x2="${x0 + 22}" y2="${y - 4}" stroke="${s.color}" stroke-width="1.5"${dash}/>`,
        `<text x="${x0 + 28}" y="${y}" style="font:${FONT}">${esc(s.label)}</text>`,
      );
      y += 16;
    }
  }

  annotate(text: string, row = 0): void {
    this.parts.push(
      `<text x="${this.left + 8}" y="${this.top + 16 + 16 * row}" style="font:${FONT}" fill="#444">${esc(text)}</text>`,
    );
  }

  render(): string {
    return this.parts.join("\n");
  }
}

export function svgDocument(width: number, height: number, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    body,
    "</svg>",
    "",
  ].join("\n");
}

function f(v: number): string {
  return v.toFixed(2);
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
