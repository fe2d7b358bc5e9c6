import type { QuiverDto, VertexId } from "./types.js";

const SQRT3_2 = Math.sqrt(3) / 2;

/** Planar position of vertex (i,j) on the triangular grid. */
export function planar([i, j]: VertexId): { x: number; y: number } {
  return { x: j + i / 2, y: i * SQRT3_2 };
}

/** Screen position (SVG y axis points down) scaled and padded. */
export function screen(
  v: VertexId,
  n: number,
  size: number,
  pad = 40,
): { x: number; y: number } {
  const { x, y } = planar(v);
  const scale = (size - 2 * pad) / n;
  return { x: pad + x * scale, y: size - pad - y * scale };
}

export function vertexKey(v: VertexId): string {
  return `${v[0]},${v[1]}`;
}

/** History -> the exact CLI --seq string. */
export function exportSeq(history: VertexId[]): string {
  return history.map(([i, j]) => `(${i},${j})`).join(",");
}

export function parseSeq(text: string): VertexId[] {
  const out: VertexId[] = [];
  for (const m of text.matchAll(/\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)/g)) {
    out.push([parseInt(m[1], 10), parseInt(m[2], 10)]);
  }
  return out;
}

/**
 * The two monomials of the exchange relation at a mutable vertex, assembled
 * from the server-provided arrows (display only; no mutation math here).
 */
export function exchangePreview(quiver: QuiverDto, v: VertexId): [string, string] {
  const key = vertexKey(v);
  const incoming: string[] = [];
  const outgoing: string[] = [];
  for (const a of quiver.arrows) {
    const term = (u: VertexId, mult: number) =>
      mult === 1 ? `x[${vertexKey(u)}]` : `x[${vertexKey(u)}]^${mult}`;
    if (vertexKey(a.to) === key) incoming.push(term(a.from, a.mult));
    if (vertexKey(a.from) === key) outgoing.push(term(a.to, a.mult));
  }
  const product = (parts: string[]) => (parts.length ? parts.join("*") : "1");
  return [product(incoming), product(outgoing)];
}
