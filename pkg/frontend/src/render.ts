/** DOM construction: the board picture, transcript, status, and controls. */

import type { AutomatonDetail, GameState, MoveRecord } from "./api.js";
import {
  DIRECTION_GLYPHS,
  geometryFor,
  type DigraphGeometry,
  type GridGeometry,
  type TrackGeometry,
} from "./layout.js";
import { humanToMove, moveConstraints, statusLine, transcriptLine } from "./model.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function svg<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, String(value));
  }
  return el;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) node.textContent = text;
  return node;
}

/** The automaton picture with the current tokens marked. */
export function renderAutomaton(detail: AutomatonDetail, tokens: number[]): SVGSVGElement {
  const geometry = geometryFor(detail);
  switch (geometry.kind) {
    case "grid":
      return renderGrid(geometry, tokens);
    case "track":
      return renderTrack(geometry, tokens);
    default:
      return renderDigraph(geometry, tokens);
  }
}

function renderDigraph(geometry: DigraphGeometry, tokens: number[]): SVGSVGElement {
  const root = svg("svg", {
    viewBox: `0 0 ${geometry.size} ${geometry.size}`,
    class: "board board-digraph",
  });
  const tokenSet = new Set(tokens);
  for (const edge of geometry.edges) {
    const from = geometry.nodes[edge.from];
    const to = geometry.nodes[edge.to];
    if (edge.loop) {
      const loop = svg("path", {
        d: loopPath(from.x, from.y, geometry.nodeRadius),
        class: "edge",
        fill: "none",
        "data-edge": `${edge.from}-${edge.to}`,
      });
      root.appendChild(loop);
      root.appendChild(
        svg("text", {
          x: from.x,
          y: from.y - geometry.nodeRadius * 2.9,
          class: "edge-label",
          "text-anchor": "middle",
        }),
      ).textContent = edge.label;
      continue;
    }
    const midX = (from.x + to.x) / 2;
    const midY = (from.y + to.y) / 2;
    const dx = to.x - from.x;
    const dy = to.y - from.y;
    const length = Math.hypot(dx, dy) || 1;
    const normX = (-dy / length) * 18 * edge.curve;
    const normY = (dx / length) * 18 * edge.curve;
    const path = svg("path", {
      d: `M ${from.x} ${from.y} Q ${midX + normX} ${midY + normY} ${to.x} ${to.y}`,
      class: "edge",
      fill: "none",
      "marker-end": "url(#arrowhead)",
      "data-edge": `${edge.from}-${edge.to}`,
    });
    root.appendChild(path);
    const label = svg("text", {
      x: midX + normX * 1.4,
      y: midY + normY * 1.4 - 4,
      class: "edge-label",
      "text-anchor": "middle",
    });
    label.textContent = edge.label;
    root.appendChild(label);
  }
  const defs = svg("defs");
  const marker = svg("marker", {
    id: "arrowhead",
    viewBox: "0 0 10 10",
    refX: 22,
    refY: 5,
    markerWidth: 7,
    markerHeight: 7,
    orient: "auto-start-reverse",
  });
  marker.appendChild(svg("path", { d: "M 0 0 L 10 5 L 0 10 z", class: "arrowhead" }));
  defs.appendChild(marker);
  root.appendChild(defs);
  for (const node of geometry.nodes) {
    const group = svg("g", { "data-state": node.index });
    group.appendChild(
      svg("circle", {
        cx: node.x,
        cy: node.y,
        r: geometry.nodeRadius,
        class: tokenSet.has(node.index) ? "state state-token" : "state",
      }),
    );
    if (tokenSet.has(node.index)) {
      group.appendChild(
        svg("circle", {
          cx: node.x,
          cy: node.y,
          r: geometry.nodeRadius + 5,
          class: "token-ring",
          fill: "none",
          "data-token": node.index,
        }),
      );
    }
    const label = svg("text", {
      x: node.x,
      y: node.y + 4,
      "text-anchor": "middle",
      class: "state-label",
    });
    label.textContent = String(node.index);
    group.appendChild(label);
    root.appendChild(group);
  }
  return root;
}

function loopPath(x: number, y: number, r: number): string {
  return (
    `M ${x - r * 0.5} ${y - r * 0.85} ` +
    `C ${x - r * 1.6} ${y - r * 2.8}, ${x + r * 1.6} ${y - r * 2.8}, ` +
    `${x + r * 0.5} ${y - r * 0.85}`
  );
}

function renderGrid(geometry: GridGeometry, tokens: number[]): SVGSVGElement {
  const pad = 24;
  const trayHeight = 56;
  const root = svg("svg", {
    viewBox: `${-pad} ${-pad} ${geometry.pixelWidth + 2 * pad} ${geometry.pixelHeight + 2 * pad + trayHeight}`,
    class: "board board-grid",
  });
  const tokenSet = new Set(tokens);
  for (const center of geometry.centers) {
    const cellGroup = svg("g", { "data-state": center.index });
    cellGroup.appendChild(
      svg("rect", {
        x: center.x - geometry.cell / 2,
        y: center.y - geometry.cell / 2,
        width: geometry.cell,
        height: geometry.cell,
        class: "cell",
      }),
    );
    cellGroup.appendChild(
      svg("text", {
        x: center.x - geometry.cell / 2 + 5,
        y: center.y - geometry.cell / 2 + 13,
        class: "cell-index",
      }),
    ).textContent = String(center.index);
    if (tokenSet.has(center.index)) {
      cellGroup.appendChild(
        svg("circle", {
          cx: center.x,
          cy: center.y,
          r: geometry.cell * 0.28,
          class: "token",
          "data-token": center.index,
        }),
      );
    }
    root.appendChild(cellGroup);
  }
  for (const arrow of geometry.arrows) {
    const center = geometry.centers[arrow.index];
    const glyph = svg("text", {
      x: center.x,
      y: center.y + 7,
      "text-anchor": "middle",
      class: "cell-arrow",
      "data-arrow": arrow.dir,
    });
    glyph.textContent = DIRECTION_GLYPHS[arrow.dir] ?? arrow.dir;
    root.appendChild(glyph);
  }
  root.appendChild(
    svg("rect", {
      x: 0,
      y: 0,
      width: geometry.pixelWidth,
      height: geometry.pixelHeight,
      class: "grid-border",
      fill: "none",
    }),
  );
  for (const wall of geometry.wallSegments) {
    root.appendChild(
      svg("line", { ...wall, class: "wall", "data-wall": "1" }),
    );
  }
  if (geometry.exit) {
    const center = geometry.centers[geometry.exit.index];
    const mark = svg("text", {
      x: center.x,
      y: center.y - geometry.cell * 0.32,
      "text-anchor": "middle",
      class: "exit-mark",
    });
    mark.textContent = "exit " + geometry.exit.dirs.map((d) => DIRECTION_GLYPHS[d] ?? d).join(" ");
    root.appendChild(mark);
  }
  // tokens that fell through the exit sit in a tray below the board
  const tray = svg("g", { "data-state": geometry.sinkIndex });
  const trayY = geometry.pixelHeight + trayHeight / 2;
  tray.appendChild(
    svg("rect", {
      x: 0,
      y: geometry.pixelHeight + 10,
      width: geometry.pixelWidth,
      height: trayHeight - 16,
      class: "sink-tray",
    }),
  );
  tray.appendChild(
    svg("text", { x: 8, y: trayY + 4, class: "sink-label" }),
  ).textContent = "outside";
  if (tokenSet.has(geometry.sinkIndex)) {
    tray.appendChild(
      svg("circle", {
        cx: geometry.pixelWidth / 2,
        cy: trayY,
        r: geometry.cell * 0.28,
        class: "token",
        "data-token": geometry.sinkIndex,
      }),
    );
  }
  root.appendChild(tray);
  return root;
}

function renderTrack(geometry: TrackGeometry, tokens: number[]): SVGSVGElement {
  const root = svg("svg", {
    viewBox: `0 0 ${geometry.size} ${geometry.size}`,
    class: "board board-track",
  });
  const tokenSet = new Set(tokens);
  for (const node of geometry.positions) {
    const group = svg("g", { "data-state": node.index });
    group.appendChild(
      svg("circle", {
        cx: node.x,
        cy: node.y,
        r: geometry.nodeRadius,
        class: tokenSet.has(node.index) ? "state state-token" : "state",
      }),
    );
    const count = geometry.arrowCount[node.index];
    const label = svg("text", {
      x: node.x,
      y: node.y + 4,
      "text-anchor": "middle",
      class: "state-label",
    });
    label.textContent = count > 0 ? `+${count}` : String(node.index);
    group.appendChild(label);
    if (tokenSet.has(node.index)) {
      group.appendChild(
        svg("circle", {
          cx: node.x,
          cy: node.y,
          r: geometry.nodeRadius + 5,
          class: "token-ring",
          fill: "none",
          "data-token": node.index,
        }),
      );
    }
    root.appendChild(group);
  }
  return root;
}

export function renderTranscript(history: MoveRecord[]): HTMLOListElement {
  const list = el("ol", { class: "transcript" });
  history.forEach((record, i) => {
    const item = el("li", { "data-seq": String(i + 1), "data-player": record.player });
    item.textContent = transcriptLine(record);
    list.appendChild(item);
  });
  return list;
}

export function renderStatus(state: GameState): HTMLParagraphElement {
  const line = el("p", { class: `status status-${state.status}`, "data-role": "status" });
  line.textContent = statusLine(state);
  return line;
}

export interface ControlActions {
  playWord(word: string): void;
  requestHint(): void;
}

/** Buttons and inputs for the side to move. */
export function renderControls(
  state: GameState,
  alphabet: string[],
  actions: ControlActions,
): HTMLElement {
  const box = el("div", { class: "controls", "data-role": "controls" });
  if (state.status !== "ongoing") {
    return box;
  }
  if (!humanToMove(state)) {
    box.appendChild(el("p", { class: "waiting" }, "waiting for the engine…"));
    return box;
  }
  const constraints = moveConstraints(state.turn, state.rule);
  if (constraints.singleLetter) {
    for (const letter of alphabet) {
      const button = el("button", { "data-letter": letter, type: "button" }, letter);
      button.addEventListener("click", () => actions.playWord(letter));
      box.appendChild(button);
    }
  } else {
    const input = el("input", {
      type: "text",
      placeholder: "reply word (may be empty)",
      "data-role": "word-input",
    });
    const send = el("button", { type: "button", "data-role": "send-word" }, "reply");
    send.addEventListener("click", () => actions.playWord(input.value));
    input.addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") actions.playWord(input.value);
    });
    const pass = el("button", { type: "button", "data-role": "pass" }, "pass");
    pass.addEventListener("click", () => actions.playWord(""));
    box.append(input, send, pass);
  }
  const hint = el("button", { type: "button", "data-role": "hint" }, "hint");
  hint.addEventListener("click", () => actions.requestHint());
  box.appendChild(hint);
  return box;
}
