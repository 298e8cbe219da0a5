/** Geometry for the three renderings: state digraph, walled grid, circular track. */

import type { AutomatonDetail, GridLayout, TrackLayout } from "./api.js";

export interface NodePlacement {
  index: number;
  x: number;
  y: number;
}

export interface EdgePlacement {
  from: number;
  to: number;
  label: string;
  loop: boolean;
  /** lateral offset for one of a pair of opposite edges, else 0 */
  curve: number;
}

export interface DigraphGeometry {
  kind: "digraph";
  size: number;
  nodeRadius: number;
  nodes: NodePlacement[];
  edges: EdgePlacement[];
}

export interface GridGeometry {
  kind: "grid";
  cell: number;
  width: number;
  height: number;
  pixelWidth: number;
  pixelHeight: number;
  /** centre point of every cell index (eastward x, northward y flipped for screens) */
  centers: NodePlacement[];
  wallSegments: { x1: number; y1: number; x2: number; y2: number }[];
  arrows: { index: number; dir: string }[];
  exit: { index: number; dirs: string[] } | null;
  sinkIndex: number;
}

export interface TrackGeometry {
  kind: "track";
  size: number;
  nodeRadius: number;
  positions: NodePlacement[];
  arrowCount: number[];
}

export type Geometry = DigraphGeometry | GridGeometry | TrackGeometry;

function onCircle(count: number, size: number, margin: number): NodePlacement[] {
  const radius = size / 2 - margin;
  const cx = size / 2;
  const cy = size / 2;
  return Array.from({ length: count }, (_, i) => {
    const angle = -Math.PI / 2 + (2 * Math.PI * i) / count;
    return { index: i, x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) };
  });
}

/** Circle layout with one edge per (from, to) pair, letters merged into the label. */
export function digraphGeometry(
  states: number,
  alphabet: string[],
  transitions: number[][],
  size = 420,
): DigraphGeometry {
  const nodes = onCircle(states, size, 48);
  const byPair = new Map<string, { from: number; to: number; letters: string[] }>();
  for (let q = 0; q < states; q += 1) {
    for (let a = 0; a < alphabet.length; a += 1) {
      const to = transitions[q][a];
      const key = `${q}>${to}`;
      const entry = byPair.get(key) ?? { from: q, to, letters: [] };
      entry.letters.push(alphabet[a]);
      byPair.set(key, entry);
    }
  }
  const edges: EdgePlacement[] = [];
  for (const { from, to, letters } of byPair.values()) {
    const opposite = from !== to && byPair.has(`${to}>${from}`);
    edges.push({
      from,
      to,
      label: letters.join(","),
      loop: from === to,
      curve: opposite ? (from < to ? 1 : -1) : 0,
    });
  }
  edges.sort((a, b) => a.from - b.from || a.to - b.to);
  return { kind: "digraph", size, nodeRadius: Math.max(12, 22 - states), nodes, edges };
}

/**
 * Screen geometry for a walled grid.  Board coordinates grow northward;
 * screen y grows downward, so row y is drawn at (height - 1 - y).
 */
export function gridGeometry(layout: GridLayout, cell = 56): GridGeometry {
  const { width, height } = layout;
  const centers: NodePlacement[] = [];
  for (let y = 0; y < height; y += 1) {
    for (let x = 0; x < width; x += 1) {
      centers.push({
        index: y * width + x,
        x: x * cell + cell / 2,
        y: (height - 1 - y) * cell + cell / 2,
      });
    }
  }
  const wallSegments = layout.walls.map((wall) => {
    const [[ax, ay], [bx, by]] = wall;
    if (ay === by) {
      // horizontally adjacent cells: a vertical segment between them
      const xEdge = Math.max(ax, bx) * cell;
      const yTop = (height - 1 - ay) * cell;
      return { x1: xEdge, y1: yTop, x2: xEdge, y2: yTop + cell };
    }
    // vertically adjacent cells: a horizontal segment between them
    const yEdge = (height - Math.max(ay, by)) * cell;
    const xLeft = ax * cell;
    return { x1: xLeft, y1: yEdge, x2: xLeft + cell, y2: yEdge };
  });
  return {
    kind: "grid",
    cell,
    width,
    height,
    pixelWidth: width * cell,
    pixelHeight: height * cell,
    centers,
    wallSegments,
    arrows: layout.arrows.map(([[x, y], dir]) => ({ index: y * width + x, dir })),
    exit: layout.exit_cell
      ? { index: layout.exit_cell[1] * width + layout.exit_cell[0], dirs: layout.exit_dirs }
      : null,
    sinkIndex: layout.sink_index,
  };
}

export function trackGeometry(layout: TrackLayout, size = 420): TrackGeometry {
  return {
    kind: "track",
    size,
    nodeRadius: Math.max(10, 26 - layout.cells),
    positions: onCircle(layout.cells, size, 40),
    arrowCount: [...layout.arrow_count],
  };
}

/** Pick the right geometry for an automaton, falling back to the digraph. */
export function geometryFor(detail: AutomatonDetail): Geometry {
  if (detail.layout?.kind === "grid") return gridGeometry(detail.layout);
  if (detail.layout?.kind === "track") return trackGeometry(detail.layout);
  return digraphGeometry(detail.states, detail.alphabet, detail.transitions);
}

export const DIRECTION_GLYPHS: Record<string, string> = {
  e: "→",
  n: "↑",
  s: "↓",
  w: "←",
};
